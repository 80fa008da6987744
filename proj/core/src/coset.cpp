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

#include "polarlat/coset.hpp"

#include <numeric>
#include <string>

namespace polarlat {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Extended gcd: returns g and x with a*x = g (mod m), for the CRT lift.
i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i128 x1, y1;
  i128 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

void require_same_universe(const Coset& a, const Coset& b) {
  if (!(a.universe() == b.universe()))
    throw UniverseMismatch("cosets live in different universes");
}

}  // namespace

GroupUniverse closure_modulus(const std::set<u64>& orders) {
  if (orders.empty()) throw ConfigError("closure_modulus needs at least one order");
  u64 l = 1;
  for (u64 d : orders) {
    if (d == 0) throw ConfigError("subgroup order 0");
    const u64 g = std::gcd(l, d);
    const u128 next = static_cast<u128>(l / g) * d;
    if (next > kMaxModulus)
      throw OverflowLimit("closure modulus exceeds the 2^40 budget");
    l = static_cast<u64>(next);
  }
  return GroupUniverse{l};
}

Coset::Coset(GroupUniverse universe, u64 order, u64 residue)
    : universe_(universe), order_(order), residue_(residue) {
  if (order_ == 0 || universe_.modulus % order_ != 0)
    throw ConfigError("coset order " + std::to_string(order_) + " does not divide modulus " +
                      std::to_string(universe_.modulus));
  if (residue_ >= universe_.modulus / order_)
    throw ConfigError("coset residue out of range");
}

std::vector<u64> Coset::elements() const {
  std::vector<u64> out;
  out.reserve(order_);
  const u64 step = index();
  for (u64 m = 0; m < order_; ++m) out.push_back((residue_ + m * step) % universe_.modulus);
  return out;
}

Coset coset_product(const Coset& a, const Coset& b) {
  require_same_universe(a, b);
  const u64 l = a.universe().modulus;
  const u64 order = std::lcm(a.order(), b.order());
  const u64 step = l / order;
  return Coset(a.universe(), order, (a.residue() + b.residue()) % step);
}

PhiResult coset_phi(u64 u, const Coset& a, const Coset& b) {
  require_same_universe(a, b);
  const u64 n1 = a.index();  // residue modulus of A
  const u64 n2 = b.index();
  // Solve x = u - rep(A) (mod n1), x = rep(B) (mod n2).
  const u64 a1 = (u % n1 + n1 - a.residue() % n1) % n1;
  const u64 a2 = b.residue();
  const u64 g = std::gcd(n1, n2);
  const u64 order = std::gcd(a.order(), b.order());
  if ((a1 % g) != (a2 % g)) {
    // Empty intersection: the {identity} convention, flagged.
    return PhiResult{Coset(a.universe(), 1, 0), true};
  }
  const u64 lcm_n = n1 / g * n2;  // the residue modulus of the intersection
  i128 p, q;
  ext_gcd(static_cast<i128>(n1 / g), static_cast<i128>(n2 / g), p, q);
  // x = a1 + n1 * t with t = (a2 - a1)/g * inv(n1/g) mod (n2/g).
  const i128 diff = (static_cast<i128>(a2) - static_cast<i128>(a1)) / static_cast<i128>(g);
  const i128 mod_t = static_cast<i128>(n2 / g);
  i128 t = ((diff % mod_t) * (p % mod_t)) % mod_t;
  if (t < 0) t += mod_t;
  const u64 x = static_cast<u64>((static_cast<u128>(a1) + static_cast<u128>(n1) * static_cast<u128>(t)) %
                                 lcm_n);
  return PhiResult{Coset(a.universe(), order, x), false};
}

u64 sample_uniform(const Coset& c, SplitMixCounterRng& rng) {
  const u64 m = rng.below(c.order());
  return (c.residue() + m * c.index()) % c.universe().modulus;
}

}  // namespace polarlat
