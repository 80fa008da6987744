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

#include "polarlat/polar_engine.hpp"

#include <algorithm>
#include <cmath>

namespace polarlat {

std::optional<ElementIndex> classify(const EpsVector& e, double delta) {
  if (delta <= 0.0) throw ConfigError("classify needs delta > 0");
  const Lattice& lat = e.lattice();
  const double h = entropy(e);
  std::optional<ElementIndex> found;
  for (ElementIndex n = 0; n < lat.size(); ++n) {
    if (quotient_entropy(e, n) < delta &&
        std::abs(h - std::log(static_cast<double>(lat.order_of(n)))) < delta) {
      if (found)
        throw AmbiguousDelta("both " + std::to_string(lat.id_of(*found)) + " and " +
                             std::to_string(lat.id_of(n)) +
                             " satisfy the event; delta is too large");
      found = n;
    }
  }
  return found;
}

ElementIndex classify_nearest(const EpsVector& e) {
  const Lattice& lat = e.lattice();
  const double h = entropy(e);
  ElementIndex best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (ElementIndex n = 0; n < lat.size(); ++n) {
    const double score =
        std::max(quotient_entropy(e, n),
                 std::abs(h - std::log(static_cast<double>(lat.order_of(n)))));
    if (score < best_score) {
      best_score = score;
      best = n;
    }
  }
  return best;
}

std::optional<ElementIndex> classify_concentration(const EpsVector& e, double delta) {
  if (delta <= 0.0) throw ConfigError("classify needs delta > 0");
  const Lattice& lat = e.lattice();
  for (ElementIndex n = 0; n < lat.size(); ++n)
    if (e.mass(n) >= 1.0 - delta) return n;
  return std::nullopt;
}

EmpiricalMu empirical_mu(const SourceSpec& source, unsigned level, std::size_t window,
                         double delta, EvolveOptions opts) {
  if (window < 1) throw ConfigError("window must be >= 1");
  if (level >= 48) throw ResourceLimit("level too deep");
  if (source.kind() == SourceSpec::Kind::Stationary) window = 1;
  const std::size_t block = std::size_t(1) << level;
  if (window > opts.max_vectors / block)
    throw ResourceLimit("window * 2^level exceeds the vector budget");

  const Lattice& lat = source.lattice();
  EmpiricalMu out;
  out.strict_counts.assign(lat.size(), 0);
  out.completed_counts.assign(lat.size(), 0);
  out.total = window * block;

  std::vector<std::vector<std::uint64_t>> per_block_completed;
  for (std::size_t b = 0; b < window; ++b) {
    std::vector<std::vector<double>> raw;
    raw.reserve(block);
    for (std::size_t t = 0; t < block; ++t) raw.push_back(source.at(b * block + t).masses());
    detail::evolve_block(lat, raw, level, opts.workers);
    std::vector<std::uint64_t> completed(lat.size(), 0);
    for (std::size_t t = 0; t < block; ++t) {
      EpsVector v(lat, std::move(raw[t]), false);
      if (auto n = classify(v, delta))
        ++out.strict_counts[*n];
      else
        ++out.unresolved_count;
      ++completed[classify_nearest(v)];
    }
    per_block_completed.push_back(std::move(completed));
  }
  for (ElementIndex i = 0; i < lat.size(); ++i)
    for (const auto& bc : per_block_completed) out.completed_counts[i] += bc[i];
  if (window > 1) {
    for (ElementIndex i = 0; i < lat.size(); ++i) {
      const double overall = out.completed(i);
      for (const auto& bc : per_block_completed) {
        const double frac = static_cast<double>(bc[i]) / static_cast<double>(block);
        out.block_spread = std::max(out.block_spread, std::abs(frac - overall));
      }
    }
  }
  return out;
}

}  // namespace polarlat
