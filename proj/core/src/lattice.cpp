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

#include "polarlat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace polarlat {

namespace {

std::string elem_str(ElementId id) {
  return std::to_string(id);
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

ElementIndex Lattice::index_of(ElementId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw UnknownElement("element " + elem_str(id) + " is not in the lattice");
  return it->second;
}

Lattice Lattice::build(const std::vector<ElementId>& elements,
                       const std::vector<std::pair<ElementId, ElementId>>& covers,
                       const std::unordered_map<ElementId, std::uint64_t>& order_of,
                       bool validate) {
  if (elements.empty()) throw NotALattice("a lattice needs at least one element");

  // Canonical order: ascending order_of, then ascending id. Gives the
  // deterministic tie-break used by the asymptotic walk.
  std::vector<ElementId> ids = elements;
  {
    std::set<ElementId> seen;
    for (ElementId id : ids)
      if (!seen.insert(id).second)
        throw NotALattice("duplicate element id " + elem_str(id));
  }
  for (ElementId id : ids) {
    auto it = order_of.find(id);
    if (it == order_of.end())
      throw BadOrderMap("missing order for element " + elem_str(id));
    if (it->second == 0)
      throw BadOrderMap("element " + elem_str(id) + " has order 0");
  }
  std::sort(ids.begin(), ids.end(), [&](ElementId a, ElementId b) {
    auto oa = order_of.at(a), ob = order_of.at(b);
    return oa != ob ? oa < ob : a < b;
  });

  Lattice lat;
  lat.ids_ = ids;
  const std::size_t n = ids.size();
  lat.orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lat.orders_[i] = order_of.at(ids[i]);
    lat.by_id_[ids[i]] = static_cast<ElementIndex>(i);
  }

  // Reflexive-transitive closure of the cover relation; rejects cycles.
  std::vector<std::vector<ElementIndex>> up(n);
  std::vector<unsigned> indeg(n, 0);
  for (const auto& [lo, hi] : covers) {
    auto ilo = lat.by_id_.find(lo), ihi = lat.by_id_.find(hi);
    if (ilo == lat.by_id_.end() || ihi == lat.by_id_.end())
      throw NotALattice("cover references unknown element");
    if (ilo->second == ihi->second)
      throw NotALattice("self-loop cover on element " + elem_str(lo));
    up[ilo->second].push_back(ihi->second);
    ++indeg[ihi->second];
  }
  {
    std::queue<ElementIndex> q;
    std::vector<unsigned> deg = indeg;
    std::size_t visited = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (deg[i] == 0) q.push(static_cast<ElementIndex>(i));
    while (!q.empty()) {
      ElementIndex v = q.front();
      q.pop();
      ++visited;
      for (ElementIndex w : up[v])
        if (--deg[w] == 0) q.push(w);
    }
    if (visited != n) throw NotALattice("cover relation has a cycle");
  }
  lat.leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    // DFS upward from i.
    std::vector<ElementIndex> stack = {static_cast<ElementIndex>(i)};
    while (!stack.empty()) {
      ElementIndex v = stack.back();
      stack.pop_back();
      if (lat.leq_[i * n + v]) continue;
      lat.leq_[i * n + v] = 1;
      for (ElementIndex w : up[v]) stack.push_back(w);
    }
  }

  // Join/meet from the order; fails if a least upper bound or greatest lower
  // bound is missing. Least elements are unique whenever they exist.
  lat.join_.assign(n * n, 0);
  lat.meet_.assign(n * n, 0);
  auto leq = [&](std::size_t a, std::size_t b) { return lat.leq_[a * n + b] != 0; };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      long jo = -1, me = -1;
      for (std::size_t u = 0; u < n; ++u) {
        if (leq(a, u) && leq(b, u) && (jo < 0 || leq(u, static_cast<std::size_t>(jo)))) jo = static_cast<long>(u);
        if (leq(u, a) && leq(u, b) && (me < 0 || leq(static_cast<std::size_t>(me), u))) me = static_cast<long>(u);
      }
      // The running candidate is only the least/greatest if it bounds every
      // other bound; re-scan to confirm.
      if (jo >= 0)
        for (std::size_t u = 0; u < n; ++u)
          if (leq(a, u) && leq(b, u) && !leq(static_cast<std::size_t>(jo), u)) jo = -1;
      if (me >= 0)
        for (std::size_t u = 0; u < n; ++u)
          if (leq(u, a) && leq(u, b) && !leq(u, static_cast<std::size_t>(me))) me = -1;
      if (jo < 0)
        throw NotALattice("elements " + elem_str(ids[a]) + " and " + elem_str(ids[b]) +
                          " have no least upper bound");
      if (me < 0)
        throw NotALattice("elements " + elem_str(ids[a]) + " and " + elem_str(ids[b]) +
                          " have no greatest lower bound");
      lat.join_[a * n + b] = lat.join_[b * n + a] = static_cast<ElementIndex>(jo);
      lat.meet_[a * n + b] = lat.meet_[b * n + a] = static_cast<ElementIndex>(me);
    }
  }

  ElementIndex top = 0, bot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    top = lat.join_[top * n + i];
    bot = lat.meet_[bot * n + i];
  }
  lat.top_ = top;
  if (bot != 0)
    throw BadOrderMap("bottom element is not first in the canonical order; its order must be minimal");

  lat.is_chain_ = true;
  for (std::size_t a = 0; a < n && lat.is_chain_; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!leq(a, b) && !leq(b, a)) {
        lat.is_chain_ = false;
        break;
      }

  lat.distributive_ = true;
  for (std::size_t a = 0; a < n && lat.distributive_; ++a)
    for (std::size_t b = 0; b < n && lat.distributive_; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        ElementIndex l = lat.meet_[a * n + lat.join_[b * n + c]];
        ElementIndex r = lat.join_[lat.meet_[a * n + b] * n + lat.meet_[a * n + c]];
        if (l != r) {
          lat.distributive_ = false;
          break;
        }
      }

  if (validate) {
    lat.validate_laws_or_throw();
    lat.validate_orders_or_throw();
  }
  return lat;
}

void Lattice::validate_laws_or_throw() const {
  if (!distributive_) {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          ElementIndex l = meet_[a * n + join_[b * n + c]];
          ElementIndex r = join_[meet_[a * n + b] * n + meet_[a * n + c]];
          if (l != r) {
            std::ostringstream msg;
            msg << "distributivity fails on (" << ids_[a] << ", " << ids_[b] << ", "
                << ids_[c] << "): " << ids_[l] << " != " << ids_[r];
            throw NotDistributive(msg.str());
          }
        }
  }
}

void Lattice::validate_orders_or_throw() const {
  const std::size_t n = size();
  if (orders_[0] != 1)
    throw BadOrderMap("bottom element must have order 1, got " + std::to_string(orders_[0]));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (leq(static_cast<ElementIndex>(a), static_cast<ElementIndex>(b)) &&
          orders_[b] % orders_[a] != 0) {
        std::ostringstream msg;
        msg << "order of " << ids_[a] << " (" << orders_[a] << ") does not divide order of "
            << ids_[b] << " (" << orders_[b] << ")";
        throw BadOrderMap(msg.str());
      }
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(orders_[join_[a * n + b]]) * orders_[meet_[a * n + b]];
      const unsigned __int128 rhs = static_cast<unsigned __int128>(orders_[a]) * orders_[b];
      if (lhs != rhs) {
        std::ostringstream msg;
        msg << "|a v b| * |a ^ b| != |a| * |b| for (" << ids_[a] << ", " << ids_[b] << ")";
        throw BadOrderMap(msg.str());
      }
    }
}

Lattice Lattice::divisor(std::uint64_t modulus) {
  if (modulus == 0) throw NotALattice("divisor lattice needs modulus >= 1");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d * d <= modulus; ++d) {
    if (modulus % d != 0) continue;
    divs.push_back(d);
    if (d != modulus / d) divs.push_back(modulus / d);
  }
  std::sort(divs.begin(), divs.end());
  std::vector<ElementId> ids;
  std::unordered_map<ElementId, std::uint64_t> orders;
  for (std::uint64_t d : divs) {
    ids.push_back(static_cast<ElementId>(d));
    orders[static_cast<ElementId>(d)] = d;
  }
  // Hasse covers: d -> d*p for primes p with d*p | modulus and d*p/d prime.
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (std::uint64_t a : divs)
    for (std::uint64_t b : divs)
      if (b != a && b % a == 0 && is_prime(b / a))
        covers.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
  return build(ids, covers, orders, /*validate=*/true);
}

Lattice Lattice::chain(std::uint64_t prime, unsigned height) {
  if (!is_prime(prime)) throw NotALattice("chain lattice needs a prime base");
  std::vector<ElementId> ids;
  std::unordered_map<ElementId, std::uint64_t> orders;
  std::vector<std::pair<ElementId, ElementId>> covers;
  std::uint64_t order = 1;
  for (unsigned k = 0; k <= height; ++k) {
    ids.push_back(static_cast<ElementId>(k));
    orders[static_cast<ElementId>(k)] = order;
    if (k < height) {
      if (order > std::numeric_limits<std::uint64_t>::max() / prime)
        throw OverflowLimit("chain order overflows 64 bits");
      covers.emplace_back(static_cast<ElementId>(k), static_cast<ElementId>(k + 1));
      order *= prime;
    }
  }
  return build(ids, covers, orders, /*validate=*/true);
}

Lattice Lattice::explicit_from_hasse(
    const std::vector<ElementId>& elements,
    const std::vector<std::pair<ElementId, ElementId>>& covers,
    const std::unordered_map<ElementId, std::uint64_t>& order_of) {
  return build(elements, covers, order_of, /*validate=*/true);
}

Lattice Lattice::from_hasse_unchecked(
    const std::vector<ElementId>& elements,
    const std::vector<std::pair<ElementId, ElementId>>& covers,
    const std::unordered_map<ElementId, std::uint64_t>& order_of) {
  return build(elements, covers, order_of, /*validate=*/false);
}

std::vector<ElementIndex> Lattice::m_set(ElementIndex a, ElementIndex b) const {
  if (!leq(a, b))
    throw IncomparablePair("m_set needs a <= b, got " + elem_str(ids_[a]) + " and " +
                           elem_str(ids_[b]));
  std::vector<ElementIndex> out;
  for (ElementIndex c = 0; c < size(); ++c)
    if (lt(a, c) && lt(c, b)) out.push_back(c);
  return out;
}

std::vector<ElementIndex> Lattice::s_set(ElementIndex k) const {
  std::vector<ElementIndex> out;
  for (ElementIndex h = 0; h < size(); ++h) {
    if (!lt(k, h)) continue;
    std::vector<ElementIndex> mid = m_set(k, h);
    if (mid.empty()) continue;
    bool has_two_chain = false;
    for (ElementIndex x : mid) {
      for (ElementIndex y : mid)
        if (x != y && lt(x, y)) {
          has_two_chain = true;
          break;
        }
      if (has_two_chain) break;
    }
    if (!has_two_chain) out.push_back(h);
  }
  return out;
}

std::vector<ElementIndex> Lattice::upper_covers(ElementIndex k) const {
  std::vector<ElementIndex> out;
  for (ElementIndex h = 0; h < size(); ++h) {
    if (!lt(k, h)) continue;
    bool cover = true;
    for (ElementIndex c = 0; c < size(); ++c)
      if (lt(k, c) && lt(c, h)) {
        cover = false;
        break;
      }
    if (cover) out.push_back(h);
  }
  return out;
}

std::vector<std::pair<ElementIndex, ElementIndex>> Lattice::admissible_intervals() const {
  std::vector<std::pair<ElementIndex, ElementIndex>> out;
  for (ElementIndex a = 0; a < size(); ++a)
    for (ElementIndex b = 0; b < size(); ++b) {
      if (!lt(a, b)) continue;
      std::vector<ElementIndex> mid = m_set(a, b);
      bool has_two_chain = false;
      for (ElementIndex x : mid) {
        for (ElementIndex y : mid)
          if (x != y && lt(x, y)) {
            has_two_chain = true;
            break;
          }
        if (has_two_chain) break;
      }
      if (!has_two_chain) out.emplace_back(a, b);
    }
  return out;
}

LawReport Lattice::verify_laws() const {
  LawReport report;
  const std::size_t n = size();
  auto add = [&](const char* law, std::initializer_list<ElementIndex> elems,
                 const std::string& detail) {
    LawViolation v;
    v.law = law;
    for (ElementIndex e : elems) v.elements.push_back(ids_[e]);
    v.detail = detail;
    report.violations.push_back(std::move(v));
  };

  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b) {
      ++report.checks;
      if (join(a, meet(a, b)) != a || meet(a, join(a, b)) != a)
        add("absorption", {a, b}, "a v (a ^ b) or a ^ (a v b) differs from a");
    }

  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b)
      for (ElementIndex c = 0; c < n; ++c) {
        ++report.checks;
        if (leq(a, c) && join(a, meet(b, c)) != meet(join(a, b), c))
          add("modularity", {a, b, c}, "a <= c but a v (b ^ c) != (a v b) ^ c");
        ++report.checks;
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
          add("distributivity", {a, b, c}, "a ^ (b v c) != (a ^ b) v (a ^ c)");
        ++report.checks;
        if (join(a, meet(b, c)) != meet(join(a, b), join(a, c)))
          add("distributivity", {a, b, c}, "a v (b ^ c) != (a v b) ^ (a v c)");
      }

  // For a <= b: (j^a=j^b and k^a=k^b) iff (jvk)^a=(jvk)^b.
  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b) {
      if (!leq(a, b)) continue;
      for (ElementIndex j = 0; j < n; ++j)
        for (ElementIndex k = 0; k < n; ++k) {
          ++report.checks;
          const bool both = meet(j, a) == meet(j, b) && meet(k, a) == meet(k, b);
          const bool joined = meet(join(j, k), a) == meet(join(j, k), b);
          if (both != joined)
            add("join_meet_equivalence", {j, k, a, b},
                both ? "pairwise meets agree but the join's meet differs"
                     : "join's meet agrees but a pairwise meet differs");
        }
    }
  return report;
}

std::vector<ElementIndex> Lattice::closure(std::vector<ElementIndex> seed) const {
  std::set<ElementIndex> uni(seed.begin(), seed.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ElementIndex> cur(uni.begin(), uni.end());
    for (ElementIndex a : cur)
      for (ElementIndex b : cur) {
        if (uni.insert(join(a, b)).second) grew = true;
        if (uni.insert(meet(a, b)).second) grew = true;
      }
  }
  return {uni.begin(), uni.end()};
}

}  // namespace polarlat
