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

#ifndef POLARLAT_POLAR_ENGINE_HPP_
#define POLARLAT_POLAR_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "polarlat/parallel.hpp"
#include "polarlat/source.hpp"

namespace polarlat {

template <typename S>
struct BasicPolarTable {
  unsigned level = 0;
  std::size_t window = 1;
  std::vector<BasicEpsVector<S>> vectors;  // index i (1-based in the math) at [i-1]
};

using PolarTable = BasicPolarTable<double>;

struct EvolveOptions {
  std::size_t max_vectors = std::size_t(1) << 24;
  unsigned workers = 1;
};

namespace detail {

// One butterfly on raw mass arrays; computes both outputs in a single pass
// over support pairs.
template <typename S>
void transform_pair(const Lattice& lat, const std::vector<S>& x, const std::vector<S>& y,
                    std::vector<S>& minus_out, std::vector<S>& plus_out) {
  std::fill(minus_out.begin(), minus_out.end(), scalar_traits<S>::zero());
  std::fill(plus_out.begin(), plus_out.end(), scalar_traits<S>::zero());
  const std::size_t n = lat.size();
  for (ElementIndex k = 0; k < n; ++k) {
    if (x[k] == scalar_traits<S>::zero()) continue;
    for (ElementIndex l = 0; l < n; ++l) {
      if (y[l] == scalar_traits<S>::zero()) continue;
      const S w = x[k] * y[l];
      minus_out[lat.join(k, l)] += w;
      plus_out[lat.meet(k, l)] += w;
    }
  }
}

// Evolves one 2^level block in place: raw[t] holds the masses of block-local
// index t (0-based). Level k pairs local index j with j + 2^(k-1) inside each
// 2^k segment; outputs land at 2j (minus) and 2j+1 (plus) of the segment.
template <typename S>
void evolve_block(const Lattice& lat, std::vector<std::vector<S>>& raw, unsigned level,
                  unsigned workers) {
  const std::size_t block = raw.size();
  std::vector<std::vector<S>> next(block, std::vector<S>(lat.size()));
  for (unsigned k = 1; k <= level; ++k) {
    const std::size_t seg = std::size_t(1) << k;
    const std::size_t half = seg >> 1;
    const std::size_t pairs = block / 2;
    parallel_chunks(pairs, workers > 1 ? 4 * workers : 1, workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                      for (std::size_t p = lo; p < hi; ++p) {
                        const std::size_t s = (p / half) * seg;
                        const std::size_t j = p % half;
                        transform_pair(lat, raw[s + j], raw[s + j + half], next[s + 2 * j],
                                       next[s + 2 * j + 1]);
                      }
                    });
    raw.swap(next);
  }
}

}  // namespace detail

// Runs the recursive construction to the given level over window blocks of
// 2^level sources each. Stationary sources collapse to a single block (all
// blocks are identical); the returned window reflects that.
template <typename S>
BasicPolarTable<S> evolve(const BasicSourceSpec<S>& source, unsigned level, std::size_t window,
                          EvolveOptions opts = {}) {
  if (window < 1) throw ConfigError("window must be >= 1");
  if (level >= 48) throw ResourceLimit("level too deep");
  if (source.kind() == BasicSourceSpec<S>::Kind::Stationary) window = 1;
  const std::size_t block = std::size_t(1) << level;
  if (window > opts.max_vectors / block)
    throw ResourceLimit("window * 2^level exceeds the vector budget");

  const Lattice& lat = source.lattice();
  BasicPolarTable<S> table;
  table.level = level;
  table.window = window;
  table.vectors.reserve(window * block);
  for (std::size_t b = 0; b < window; ++b) {
    std::vector<std::vector<S>> raw;
    raw.reserve(block);
    for (std::size_t t = 0; t < block; ++t) raw.push_back(source.at(b * block + t).masses());
    detail::evolve_block(lat, raw, level, opts.workers);
    for (std::size_t t = 0; t < block; ++t)
      table.vectors.emplace_back(lat, std::move(raw[t]), false);
  }
  return table;
}

template <typename S>
std::vector<double> entropies(const BasicPolarTable<S>& table) {
  std::vector<double> out;
  out.reserve(table.vectors.size());
  for (const auto& v : table.vectors) out.push_back(entropy(v));
  return out;
}

// The two-inequality polarization event: returns N with
// quotient_entropy(e, N) < delta and |entropy(e) - log order(N)| < delta.
// Empty when no element qualifies; AmbiguousDelta when two do.
std::optional<ElementIndex> classify(const EpsVector& e, double delta);

// Total assignment to the nearest level: argmin over N of
// max(quotient_entropy(e, N), |entropy(e) - log order(N)|), canonical-first
// on ties. Agrees with classify whenever that resolves, and is the
// finite-level estimator used for the asymptotic-distribution comparison.
ElementIndex classify_nearest(const EpsVector& e);

// Concentration fast path: N with mass(N) >= 1 - delta. For delta below the
// lattice entropy gaps this implies the two-inequality event with
// delta' = delta * log(max order / min nontrivial order); see README.
std::optional<ElementIndex> classify_concentration(const EpsVector& e, double delta);

struct EmpiricalMu {
  std::vector<std::uint64_t> strict_counts;     // two-inequality event per element
  std::uint64_t unresolved_count = 0;           // indices matching no element
  std::vector<std::uint64_t> completed_counts;  // nearest-level assignment
  std::uint64_t total = 0;
  double block_spread = 0.0;  // max per-block deviation of completed fractions

  double strict(ElementIndex i) const {
    return static_cast<double>(strict_counts[i]) / static_cast<double>(total);
  }
  double completed(ElementIndex i) const {
    return static_cast<double>(completed_counts[i]) / static_cast<double>(total);
  }
  double unresolved() const {
    return static_cast<double>(unresolved_count) / static_cast<double>(total);
  }
};

// Fraction of indices at the given level classified to each element, both
// under the strict two-inequality event (plus its unresolved remainder) and
// under the nearest-level completion.
EmpiricalMu empirical_mu(const SourceSpec& source, unsigned level, std::size_t window,
                         double delta, EvolveOptions opts = {});

}  // namespace polarlat

#endif  // POLARLAT_POLAR_ENGINE_HPP_
