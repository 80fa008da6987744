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

#ifndef POLARLAT_SOLVER_HPP_
#define POLARLAT_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "polarlat/eps_vector.hpp"

namespace polarlat {

// The solver works in exact rationals: the asymptotic distribution is exact,
// so no tolerance belongs here. QDistribution is the Cesaro average as an
// exact vector.
using QDistribution = ExactEpsVector;

// Exact dyadic conversion normalized so the masses sum to exactly 1.
QDistribution to_exact_normalized(const EpsVector& q);

// sum of Q(J) over J with J v N = J v K and J ^ H = J ^ K.
Rational chi_q(const QDistribution& q, ElementIndex n, ElementIndex k, ElementIndex h);

// sum of Q(J) over J with J ^ H = J ^ N.
Rational beta_q(const QDistribution& q, ElementIndex n, ElementIndex h);

struct ChiCandidate {
  ElementId k2 = 0;  // middle element
  ElementId k1 = 0;  // two-level overgroup
  Rational value;
};

struct BoundaryCandidate {
  ElementId cover = 0;
  Rational beta;  // beta_q(K, cover): the threshold boundary of this direction
};

struct SolveStep {
  ElementId k = 0;
  std::vector<ElementId> s_set;
  std::string branch;  // "s_set" | "cover" | "top"
  std::optional<ElementId> h1, h2, h3;
  std::vector<ChiCandidate> chi;
  std::vector<BoundaryCandidate> boundaries;
  Rational beta_used;
  Rational mu_k;
  Rational alpha_after;
};

struct MuDistribution {
  const Lattice* lattice = nullptr;
  std::vector<Rational> mass;    // dense over the full lattice, zero off the walk
  std::vector<ElementId> chain;  // visited elements, ascending
  std::vector<SolveStep> trace;

  double mass_double(ElementIndex i) const { return to_double(mass[i]); }
  Rational mass_of_id(ElementId id) const { return mass[lattice->index_of(id)]; }
};

struct SolveOptions {
  // Query element added to the working universe (the walk itself spans the
  // whole universe; the answer for the query is a lookup).
  std::optional<ElementIndex> focus;
  // Flips tie-breaking between equal-boundary directions; equal-boundary
  // choices yield identical masses and tests verify that both ways.
  bool tie_break_reverse = false;
};

// Asymptotic distribution of the polarization levels via the ascending-chain
// walk, restricted to the join/meet closure of support(Q) (plus the focus).
//
// The printed form of the walk selects the next chain element by an argmax
// of chi over two-level overgroup pairs; that selector can leave the true
// chain (and then produces negative masses). Each direction's cover boundary
// beta_q(K, cover) orders the chain correctly - it is the Q-probability that
// the cover's join-irreducible never enters - so the walk here descends on
// that, keeps the published beta/chi arithmetic for the step masses, and
// cross-checks the two expressions at every step.
MuDistribution solve_mu(const QDistribution& q, SolveOptions options = {});

// Chain-lattice shortcut: the asymptotic distribution equals Q itself.
MuDistribution prufer_mu(const QDistribution& q);

}  // namespace polarlat

#endif  // POLARLAT_SOLVER_HPP_
