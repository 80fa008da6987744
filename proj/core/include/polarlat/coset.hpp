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

#ifndef POLARLAT_COSET_HPP_
#define POLARLAT_COSET_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "polarlat/errors.hpp"
#include "polarlat/rng.hpp"

namespace polarlat {

// Ambient finite cyclic group Z/L. All participating subgroup orders divide
// L, so join (lcm) and meet (gcd) of orders never leave the divisor set.
struct GroupUniverse {
  std::uint64_t modulus = 1;

  bool operator==(const GroupUniverse&) const = default;
};

// Largest modulus accepted; keeps every intermediate product inside
// unsigned 128-bit arithmetic with room to spare.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 40;

// L = lcm of the given subgroup orders. Throws OverflowLimit past the budget.
GroupUniverse closure_modulus(const std::set<std::uint64_t>& orders);

// The coset residue + H_d inside Z/L, where H_d is the unique subgroup of
// order d (the multiples of L/d). Canonical form keeps only (order, residue
// mod L/d); set expansion is for tests.
class Coset {
 public:
  Coset(GroupUniverse universe, std::uint64_t order, std::uint64_t residue);

  GroupUniverse universe() const { return universe_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t residue() const { return residue_; }
  std::uint64_t index() const { return universe_.modulus / order_; }  // modulus of the residue

  bool contains(std::uint64_t element) const {
    return element % index() == residue_;
  }
  std::vector<std::uint64_t> elements() const;

  bool operator==(const Coset&) const = default;
  bool operator<(const Coset& other) const {
    if (order_ != other.order_) return order_ < other.order_;
    return residue_ < other.residue_;
  }

 private:
  GroupUniverse universe_;
  std::uint64_t order_;
  std::uint64_t residue_;
};

// Setwise product A + B: order lcm(|A|, |B|).
Coset coset_product(const Coset& a, const Coset& b);

struct PhiResult {
  Coset coset;
  // Set when the intersection was empty and the {0} convention was returned.
  // Never fires when u is drawn from A + B.
  bool was_empty = false;
};

// (u - rep(A) + H_A) intersect B, computed by CRT on the residue moduli;
// order gcd(|A|, |B|) when nonempty.
PhiResult coset_phi(std::uint64_t u, const Coset& a, const Coset& b);

// Uniform draw from the coset's order() elements.
std::uint64_t sample_uniform(const Coset& c, SplitMixCounterRng& rng);

}  // namespace polarlat

#endif  // POLARLAT_COSET_HPP_
