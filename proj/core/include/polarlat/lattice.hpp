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

#ifndef POLARLAT_LATTICE_HPP_
#define POLARLAT_LATTICE_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarlat/errors.hpp"

namespace polarlat {

// External element identifier: the divisor for divisor lattices, the level
// index for chain lattices, caller-chosen for explicit lattices.
using ElementId = std::int64_t;

// Dense index into a lattice's canonical element order (ascending order_of,
// then ascending id). Index 0 is always the bottom element.
using ElementIndex = std::uint32_t;

struct LawViolation {
  std::string law;       // "absorption", "modularity", "distributivity", "join_meet_equivalence"
  std::vector<ElementId> elements;
  std::string detail;
};

struct LawReport {
  std::vector<LawViolation> violations;
  std::size_t checks = 0;
  bool ok() const { return violations.empty(); }
};

// Finite lattice of subgroup orders with precomputed join/meet/leq tables.
// Immutable after construction; safe to share across threads.
//
// The checked factories (divisor, chain, explicit_from_hasse) guarantee a
// distributive lattice with a consistent order map. from_hasse_unchecked
// builds the same tables but skips the law and order-map validation so that
// verify_laws() can be pointed at known counterexamples.
class Lattice {
 public:
  static Lattice divisor(std::uint64_t modulus);
  static Lattice chain(std::uint64_t prime, unsigned height);
  static Lattice explicit_from_hasse(
      const std::vector<ElementId>& elements,
      const std::vector<std::pair<ElementId, ElementId>>& covers,
      const std::unordered_map<ElementId, std::uint64_t>& order_of);
  static Lattice from_hasse_unchecked(
      const std::vector<ElementId>& elements,
      const std::vector<std::pair<ElementId, ElementId>>& covers,
      const std::unordered_map<ElementId, std::uint64_t>& order_of);

  std::size_t size() const { return ids_.size(); }
  ElementId id_of(ElementIndex i) const { return ids_[i]; }
  std::uint64_t order_of(ElementIndex i) const { return orders_[i]; }
  ElementIndex index_of(ElementId id) const;
  bool has_id(ElementId id) const { return by_id_.count(id) != 0; }

  bool leq(ElementIndex a, ElementIndex b) const { return leq_[a * size() + b] != 0; }
  bool lt(ElementIndex a, ElementIndex b) const { return a != b && leq(a, b); }
  ElementIndex join(ElementIndex a, ElementIndex b) const { return join_[a * size() + b]; }
  ElementIndex meet(ElementIndex a, ElementIndex b) const { return meet_[a * size() + b]; }

  ElementIndex bottom() const { return 0; }
  ElementIndex top() const { return top_; }
  bool is_chain() const { return is_chain_; }
  bool is_distributive() const { return distributive_; }

  // {c : a < c < b}. Throws IncomparablePair unless a <= b.
  std::vector<ElementIndex> m_set(ElementIndex a, ElementIndex b) const;

  // Overgroups H of k with a nonempty m_set(k, H) and no chain
  // k < x < y < H. May be empty.
  std::vector<ElementIndex> s_set(ElementIndex k) const;

  std::vector<ElementIndex> upper_covers(ElementIndex k) const;

  // All (a, b) with a < b and no pair a < x < y < b; the intervals on which
  // the partial-sum partition and its recursions are stated.
  std::vector<std::pair<ElementIndex, ElementIndex>> admissible_intervals() const;

  // Checks absorption, modularity, distributivity and the join/meet
  // equivalence (for a <= b: j^a=j^b and k^a=k^b iff (jvk)^a=(jvk)^b)
  // over all element tuples. Empty report means every instance holds.
  LawReport verify_laws() const;

  // Sub-universe helpers used by the asymptotic solver: the join/meet closure
  // of the given seed indices, ascending in canonical order.
  std::vector<ElementIndex> closure(std::vector<ElementIndex> seed) const;

 private:
  Lattice() = default;
  static Lattice build(const std::vector<ElementId>& elements,
                       const std::vector<std::pair<ElementId, ElementId>>& covers,
                       const std::unordered_map<ElementId, std::uint64_t>& order_of,
                       bool validate);
  void validate_laws_or_throw() const;
  void validate_orders_or_throw() const;

  std::vector<ElementId> ids_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint8_t> leq_;
  std::vector<ElementIndex> join_;
  std::vector<ElementIndex> meet_;
  std::unordered_map<ElementId, ElementIndex> by_id_;
  ElementIndex top_ = 0;
  bool distributive_ = false;
  bool is_chain_ = false;
};

}  // namespace polarlat

#endif  // POLARLAT_LATTICE_HPP_
