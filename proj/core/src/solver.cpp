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

#include "polarlat/solver.hpp"

#include <algorithm>

namespace polarlat {

namespace {

// m_set/s_set/covers within a sub-universe (ascending index list).
std::vector<ElementIndex> m_set_in(const Lattice& lat, const std::vector<ElementIndex>& uni,
                                   ElementIndex a, ElementIndex b) {
  std::vector<ElementIndex> out;
  for (ElementIndex c : uni)
    if (lat.lt(a, c) && lat.lt(c, b)) out.push_back(c);
  return out;
}

std::vector<ElementIndex> s_set_in(const Lattice& lat, const std::vector<ElementIndex>& uni,
                                   ElementIndex k) {
  std::vector<ElementIndex> out;
  for (ElementIndex h : uni) {
    if (!lat.lt(k, h)) continue;
    std::vector<ElementIndex> mid = m_set_in(lat, uni, k, h);
    if (mid.empty()) continue;
    bool chain = false;
    for (ElementIndex x : mid) {
      for (ElementIndex y : mid)
        if (x != y && lat.lt(x, y)) {
          chain = true;
          break;
        }
      if (chain) break;
    }
    if (!chain) out.push_back(h);
  }
  return out;
}

std::vector<ElementIndex> covers_in(const Lattice& lat, const std::vector<ElementIndex>& uni,
                                    ElementIndex k) {
  std::vector<ElementIndex> out;
  for (ElementIndex h : uni) {
    if (!lat.lt(k, h)) continue;
    bool cover = true;
    for (ElementIndex c : uni)
      if (lat.lt(k, c) && lat.lt(c, h)) {
        cover = false;
        break;
      }
    if (cover) out.push_back(h);
  }
  return out;
}

}  // namespace

QDistribution to_exact_normalized(const EpsVector& q) {
  const Lattice& lat = q.lattice();
  std::vector<Rational> mass(lat.size());
  Rational sum(0);
  for (ElementIndex i = 0; i < lat.size(); ++i) {
    mass[i] = rational_from_double(q.mass(i));
    sum += mass[i];
  }
  if (sum == 0) throw InvalidDistribution("distribution has no mass");
  for (Rational& m : mass) m /= sum;
  return QDistribution(lat, std::move(mass), false);
}

Rational chi_q(const QDistribution& q, ElementIndex n, ElementIndex k, ElementIndex h) {
  const Lattice& lat = q.lattice();
  Rational sum(0);
  for (ElementIndex j = 0; j < lat.size(); ++j) {
    if (q.mass(j) == 0) continue;
    if (lat.join(j, n) == lat.join(j, k) && lat.meet(j, h) == lat.meet(j, k)) sum += q.mass(j);
  }
  return sum;
}

Rational beta_q(const QDistribution& q, ElementIndex n, ElementIndex h) {
  const Lattice& lat = q.lattice();
  Rational sum(0);
  for (ElementIndex j = 0; j < lat.size(); ++j) {
    if (q.mass(j) == 0) continue;
    if (lat.meet(j, h) == lat.meet(j, n)) sum += q.mass(j);
  }
  return sum;
}

MuDistribution solve_mu(const QDistribution& q, SolveOptions options) {
  const Lattice& lat = q.lattice();
  if (!lat.is_distributive())
    throw NonDistributiveLattice("the asymptotic walk requires a distributive lattice");

  std::vector<ElementIndex> seed;
  for (ElementIndex i = 0; i < lat.size(); ++i)
    if (q.mass(i) != 0) seed.push_back(i);
  if (options.focus) seed.push_back(*options.focus);
  const std::vector<ElementIndex> uni = lat.closure(std::move(seed));

  MuDistribution mu;
  mu.lattice = &lat;
  mu.mass.assign(lat.size(), Rational(0));

  Rational alpha(0);
  ElementIndex k = uni.front();
  for (std::size_t guard = 0; guard <= uni.size(); ++guard) {
    SolveStep step;
    step.k = lat.id_of(k);
    mu.chain.push_back(lat.id_of(k));

    const std::vector<ElementIndex> s = s_set_in(lat, uni, k);
    for (ElementIndex h : s) step.s_set.push_back(lat.id_of(h));
    const std::vector<ElementIndex> covers = covers_in(lat, uni, k);

    if (covers.empty()) {
      step.branch = "top";
      step.mu_k = 1 - alpha;
      mu.mass[k] = step.mu_k;
      alpha += step.mu_k;
      step.alpha_after = alpha;
      mu.trace.push_back(std::move(step));
      break;
    }

    for (ElementIndex c : covers)
      step.boundaries.push_back({lat.id_of(c), beta_q(q, k, c)});
    ElementIndex next = covers.front();
    Rational next_beta = step.boundaries.front().beta;
    for (std::size_t i = 1; i < covers.size(); ++i) {
      const Rational& b = step.boundaries[i].beta;
      const bool better = options.tie_break_reverse ? b <= next_beta : b < next_beta;
      if (better) {
        next = covers[i];
        next_beta = b;
      }
    }

    if (s.empty()) {
      if (covers.size() > 1)
        throw StructurallyAmbiguous(
            "element " + std::to_string(lat.id_of(k)) +
            " has several covers but an empty two-level overgroup set");
      step.branch = "cover";
      step.h1 = lat.id_of(next);
      step.beta_used = next_beta;
      step.mu_k = next_beta - alpha;
    } else {
      step.branch = "s_set";
      ElementIndex h1 = lat.size();
      for (ElementIndex cand : s) {
        if (lat.lt(next, cand)) {
          h1 = cand;
          break;
        }
      }
      if (h1 == lat.size())
        throw Error("internal: no two-level overgroup above the chosen cover");
      for (ElementIndex cand : s)
        for (ElementIndex mid : m_set_in(lat, uni, k, cand))
          step.chi.push_back({lat.id_of(mid), lat.id_of(cand), chi_q(q, k, mid, cand)});
      step.h1 = lat.id_of(h1);
      step.h2 = lat.id_of(next);
      step.beta_used = beta_q(q, k, h1);
      step.mu_k = step.beta_used - alpha;
      for (ElementIndex mid : m_set_in(lat, uni, k, h1))
        if (mid != next) {
          step.h3 = lat.id_of(mid);
          step.mu_k += chi_q(q, k, mid, h1);
        }
      if (step.mu_k != next_beta - alpha)
        throw Error("internal: step mass disagrees with the direction boundary");
    }

    mu.mass[k] = step.mu_k;
    alpha += step.mu_k;
    step.alpha_after = alpha;
    mu.trace.push_back(std::move(step));
    k = next;
  }

  Rational total(0);
  for (const Rational& m : mu.mass) {
    if (m < 0) throw Error("internal: negative asymptotic mass");
    total += m;
  }
  if (total != 1) throw Error("internal: asymptotic masses do not sum to 1");
  return mu;
}

MuDistribution prufer_mu(const QDistribution& q) {
  const Lattice& lat = q.lattice();
  if (!lat.is_chain())
    throw NotAChain("the chain shortcut needs a chain lattice");
  MuDistribution mu;
  mu.lattice = &lat;
  mu.mass.assign(lat.size(), Rational(0));
  for (ElementIndex i = 0; i < lat.size(); ++i) {
    mu.mass[i] = q.mass(i);
    if (q.mass(i) != 0) mu.chain.push_back(lat.id_of(i));
  }
  return mu;
}

}  // namespace polarlat
