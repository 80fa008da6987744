//  Copyright 2026 The polarlat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef POLARLAT_RATIONAL_HPP_
#define POLARLAT_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

#include "polarlat/errors.hpp"

namespace polarlat {

// Exact arithmetic backend. GMP rationals keep the partition and recursion identities and the
// solver free of tolerances; denominators grow too fast under transform
// products for any fixed-width representation.
using Rational = mpq_class;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

// Accepts "p/q", integer, or plain decimal strings ("0.25" -> 1/4), all exact.
Rational rational_from_string(const std::string& text);

// Exact dyadic conversion; every finite double is a rational.
inline Rational rational_from_double(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& x);

// Multiplicity of each prime in n. n >= 1; trial division, orders are small.
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);

// log(order)-weighted sums decompose as sum_p coeff_p * ln p with exact
// rational coefficients; equality of two such maps is exact entropy equality.
template <typename S>
using LogWeight = std::map<std::uint64_t, S>;

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double sum_tolerance() { return 1e-12; }
  static double from_parts(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational sum_tolerance() { return Rational(0); }
  static Rational from_parts(std::int64_t num, std::int64_t den) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
  }
};

// --- inline implementations -------------------------------------------------

inline std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 ||
        den.set_str(text.substr(slash + 1), 10) != 0 || den == 0) {
      throw ConfigError("bad rational literal: " + text);
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_digits = text.size() - dot - 1;
    if (digits.empty() || digits == "-") throw ConfigError("bad decimal literal: " + text);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw ConfigError("bad decimal literal: " + text);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  mpz_class num;
  if (num.set_str(text, 10) != 0) throw ConfigError("bad integer literal: " + text);
  return Rational(num);
}

inline std::string rational_to_string(const Rational& x) {
  return x.get_str();
}

}  // namespace polarlat

#endif  // POLARLAT_RATIONAL_HPP_
