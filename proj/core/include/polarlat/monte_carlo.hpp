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

#ifndef POLARLAT_MONTE_CARLO_HPP_
#define POLARLAT_MONTE_CARLO_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "polarlat/coset.hpp"
#include "polarlat/polar_engine.hpp"

namespace polarlat {

// Sample-level validation config. The source is read over the subgroup
// orders of Z/L with L the lcm closure of all orders in its support.
struct SampleConfig {
  const SourceSpec* source = nullptr;
  unsigned level = 1;     // capped: per-sample cost is 2^level
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr unsigned kMaxSimulationLevel = 12;

// Per final index: realized side-information cosets, with a count per
// in-coset offset of the realized transform output (u = residue + m * step).
struct IndexStats {
  std::map<Coset, std::vector<std::uint64_t>> realizations;

  std::map<std::uint64_t, std::uint64_t> order_counts() const;
};

struct SampleStats {
  GroupUniverse universe;
  unsigned level = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  const SourceSpec* source = nullptr;
  std::vector<IndexStats> per_index;  // size 2^level
};

// Draws (X_i, Y_i), pushes samples through the butterfly while tracking the
// side-information cosets (product on the minus side, the intersection map
// on the plus side), and checks the per-node identities on every sample:
// the realized output lies in the tracked coset, and the two output coset
// orders multiply to the two input coset orders.
SampleStats simulate_block(const SampleConfig& config);

struct UniformityIndexReport {
  std::map<std::uint64_t, std::uint64_t> order_hist;
  double tv_max = 0.0;  // count-weighted TV to the in-coset uniform law
  double entropy_hat = 0.0;
  double sigma = 0.0;
  double entropy_predicted = 0.0;
  double order_z_max = 0.0;  // worst multinomial z-score of the order histogram
};

struct UniformityReport {
  std::vector<UniformityIndexReport> per_index;
  bool pass = false;
};

// Conditional-uniformity and entropy validation against the transform
// recursion predictions: pass iff every index has tv_max <= tol and its
// entropy estimate within 3 sigma of the prediction.
UniformityReport validate_uniformity(const SampleStats& stats, double tol);

struct QuotientGateEntry {
  std::size_t index = 0;
  ElementId element = 0;
  double entropy_hat = 0.0;
  double sigma = 0.0;
  double predicted = 0.0;
  bool pass = false;
};

struct QuotientGateReport {
  std::vector<QuotientGateEntry> entries;
  bool pass = false;
};

// Gates the closed form of the quotient entropy: the empirical conditional
// entropy of U*N given the side information must match
// quotient_entropy(eps, N) within 3 sigma for every element N and index.
QuotientGateReport validate_quotient_entropy(const SampleStats& stats);

}  // namespace polarlat

#endif  // POLARLAT_MONTE_CARLO_HPP_
