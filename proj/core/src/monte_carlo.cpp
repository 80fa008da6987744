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

#include "polarlat/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace polarlat {

namespace {

using u64 = std::uint64_t;

u64 draw_element_order(const EpsVector& dist, SplitMixCounterRng& rng) {
  const Lattice& lat = dist.lattice();
  const double u = rng.uniform01();
  double acc = 0.0;
  for (ElementIndex j = 0; j < lat.size(); ++j) {
    acc += dist.mass(j);
    if (u < acc) return lat.order_of(j);
  }
  return lat.order_of(static_cast<ElementIndex>(lat.size() - 1));
}

}  // namespace

std::map<u64, u64> IndexStats::order_counts() const {
  std::map<u64, u64> out;
  for (const auto& [coset, offsets] : realizations) {
    u64 n = 0;
    for (u64 c : offsets) n += c;
    out[coset.order()] += n;
  }
  return out;
}

SampleStats simulate_block(const SampleConfig& config) {
  if (config.source == nullptr) throw ConfigError("simulation needs a source");
  if (config.level > kMaxSimulationLevel)
    throw ResourceLimit("simulation level capped at " + std::to_string(kMaxSimulationLevel));
  if (config.samples < 1) throw ConfigError("samples must be >= 1");

  const SourceSpec& source = *config.source;
  const Lattice& lat = source.lattice();
  std::set<u64> orders;
  for (ElementIndex j = 0; j < lat.size(); ++j) orders.insert(lat.order_of(j));
  // The sampler realizes elements as the unique subgroups of Z/L, so the
  // lattice must match the divisor structure of its orders.
  if (orders.size() != lat.size())
    throw ConfigError("lattice has elements of equal order; not realizable in a cyclic group");
  for (ElementIndex a = 0; a < lat.size(); ++a)
    for (ElementIndex b = 0; b < lat.size(); ++b)
      if (lat.order_of(lat.join(a, b)) != std::lcm(lat.order_of(a), lat.order_of(b)) ||
          lat.order_of(lat.meet(a, b)) != std::gcd(lat.order_of(a), lat.order_of(b)))
        throw ConfigError("lattice joins/meets are not lcm/gcd of orders; not cyclic-realizable");
  const GroupUniverse universe = closure_modulus(orders);
  const u64 l = universe.modulus;
  const std::size_t block = std::size_t(1) << config.level;

  SampleStats stats;
  stats.universe = universe;
  stats.level = config.level;
  stats.samples = config.samples;
  stats.seed = config.seed;
  stats.source = &source;
  stats.per_index.resize(block);

  const std::size_t n_chunks = config.workers > 1 ? 16 * config.workers : 1;
  std::vector<std::vector<IndexStats>> partial(n_chunks);

  parallel_chunks(
      config.samples, n_chunks, config.workers,
      [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        std::vector<IndexStats> local(block);
        std::vector<u64> xs(block), xs_next(block);
        std::vector<Coset> ys, ys_next;
        for (std::size_t s = lo; s < hi; ++s) {
          ys.clear();
          ys_next.clear();
          for (std::size_t t = 0; t < block; ++t) {
            SplitMixCounterRng rng(config.seed, s, t);
            const u64 d = draw_element_order(source.at(t), rng);
            const u64 residue = rng.below(l / d);
            Coset y(universe, d, residue);
            xs[t] = sample_uniform(y, rng);
            ys.push_back(y);
          }
          ys_next.assign(ys.begin(), ys.end());
          for (unsigned k = 1; k <= config.level; ++k) {
            const std::size_t seg = std::size_t(1) << k;
            const std::size_t half = seg >> 1;
            for (std::size_t s0 = 0; s0 < block; s0 += seg) {
              for (std::size_t j = 0; j < half; ++j) {
                const std::size_t i1 = s0 + j, i2 = s0 + j + half;
                const u64 u_minus = (xs[i1] + xs[i2]) % l;
                const u64 u_plus = xs[i2];
                const Coset y_minus = coset_product(ys[i1], ys[i2]);
                const PhiResult y_plus = coset_phi(u_minus, ys[i1], ys[i2]);
                if (y_plus.was_empty)
                  throw EmptyPhi("phi hit an empty intersection with u drawn from the transform");
                if (!y_minus.contains(u_minus) || !y_plus.coset.contains(u_plus))
                  throw Error("internal: realized output left its tracked coset");
                if (y_minus.order() * y_plus.coset.order() != ys[i1].order() * ys[i2].order())
                  throw Error("internal: coset orders violate |Y-||Y+| = |Y1||Y2|");
                xs_next[s0 + 2 * j] = u_minus;
                xs_next[s0 + 2 * j + 1] = u_plus;
                ys_next[s0 + 2 * j] = y_minus;
                ys_next[s0 + 2 * j + 1] = y_plus.coset;
              }
            }
            xs.swap(xs_next);
            ys.swap(ys_next);
          }
          for (std::size_t t = 0; t < block; ++t) {
            auto& counts = local[t].realizations[ys[t]];
            if (counts.empty()) counts.assign(ys[t].order(), 0);
            const u64 offset = ((xs[t] + l - ys[t].residue()) % l) / ys[t].index();
            ++counts[offset];
          }
        }
        partial[chunk] = std::move(local);
      });

  for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {
    if (partial[chunk].empty()) continue;
    for (std::size_t t = 0; t < block; ++t)
      for (const auto& [coset, offsets] : partial[chunk][t].realizations) {
        auto& counts = stats.per_index[t].realizations[coset];
        if (counts.empty()) counts.assign(offsets.size(), 0);
        for (std::size_t m = 0; m < offsets.size(); ++m) counts[m] += offsets[m];
      }
  }
  return stats;
}

UniformityReport validate_uniformity(const SampleStats& stats, double tol) {
  const SourceSpec& source = *stats.source;
  const Lattice& lat = source.lattice();
  PolarTable table = evolve(source, stats.level, 1);

  UniformityReport report;
  report.pass = true;
  for (std::size_t t = 0; t < stats.per_index.size(); ++t) {
    const IndexStats& ix = stats.per_index[t];
    UniformityIndexReport r;
    r.order_hist = ix.order_counts();

    double total = 0.0;
    for (const auto& [coset, offsets] : ix.realizations)
      for (u64 c : offsets) total += static_cast<double>(c);

    double tv_acc = 0.0, mean_log = 0.0, mean_log2 = 0.0;
    for (const auto& [coset, offsets] : ix.realizations) {
      double n_c = 0.0;
      for (u64 c : offsets) n_c += static_cast<double>(c);
      const double uniform = 1.0 / static_cast<double>(coset.order());
      double tv = 0.0;
      for (u64 c : offsets) tv += std::abs(static_cast<double>(c) / n_c - uniform);
      tv_acc += (n_c / total) * 0.5 * tv;
      const double logd = std::log(static_cast<double>(coset.order()));
      mean_log += (n_c / total) * logd;
      mean_log2 += (n_c / total) * logd * logd;
    }
    r.tv_max = tv_acc;
    r.entropy_hat = mean_log;
    r.sigma = std::sqrt(std::max(0.0, mean_log2 - mean_log * mean_log) / total);
    r.entropy_predicted = entropy(table.vectors[t]);

    // Multinomial z-scores of the order histogram against the predicted
    // vector, summed per distinct order.
    std::map<u64, double> predicted;
    for (ElementIndex j = 0; j < lat.size(); ++j)
      predicted[lat.order_of(j)] += table.vectors[t].mass(j);
    for (const auto& [order, p] : predicted) {
      const double observed =
          r.order_hist.count(order) ? static_cast<double>(r.order_hist.at(order)) : 0.0;
      const double sd = std::sqrt(std::max(p * (1.0 - p) / total, 1e-300));
      const double z = std::abs(observed / total - p) / sd;
      r.order_z_max = std::max(r.order_z_max, z);
    }

    const bool entropy_ok = std::abs(r.entropy_hat - r.entropy_predicted) <= 3.0 * r.sigma + 1e-9;
    if (r.tv_max > tol || !entropy_ok) report.pass = false;
    report.per_index.push_back(std::move(r));
  }
  return report;
}

QuotientGateReport validate_quotient_entropy(const SampleStats& stats) {
  const SourceSpec& source = *stats.source;
  const Lattice& lat = source.lattice();
  const u64 l = stats.universe.modulus;
  PolarTable table = evolve(source, stats.level, 1);

  QuotientGateReport report;
  report.pass = true;
  for (std::size_t t = 0; t < stats.per_index.size(); ++t) {
    const IndexStats& ix = stats.per_index[t];
    double total = 0.0;
    for (const auto& [coset, offsets] : ix.realizations)
      for (u64 c : offsets) total += static_cast<double>(c);

    for (ElementIndex n = 0; n < lat.size(); ++n) {
      const u64 step_n = l / lat.order_of(n);  // residue modulus of U*N
      double h_hat = 0.0, within_var = 0.0;
      std::vector<std::pair<double, double>> class_entropies;  // (weight, H_c)
      for (const auto& [coset, offsets] : ix.realizations) {
        double n_c = 0.0;
        for (u64 c : offsets) n_c += static_cast<double>(c);
        // Project in-coset offsets onto cosets of N.
        std::map<u64, double> proj;
        for (std::size_t m = 0; m < offsets.size(); ++m) {
          if (offsets[m] == 0) continue;
          const u64 value = (coset.residue() + m * coset.index()) % l % step_n;
          proj[value] += static_cast<double>(offsets[m]);
        }
        double h_c = 0.0, h2_c = 0.0;
        for (const auto& [value, cnt] : proj) {
          const double p = cnt / n_c;
          h_c -= p * std::log(p);
          h2_c += p * std::log(p) * std::log(p);
        }
        const double support = static_cast<double>(proj.size());
        const double miller_madow = (support - 1.0) / (2.0 * n_c);
        const double w = n_c / total;
        h_hat += w * (h_c + miller_madow);
        const double var_c = std::max(0.0, h2_c - h_c * h_c) / n_c +
                             (support - 1.0) / (2.0 * n_c * n_c);
        within_var += w * w * var_c;
        class_entropies.emplace_back(w, h_c + miller_madow);
      }
      double between_var = 0.0;
      for (const auto& [w, h_c] : class_entropies) between_var += w * (h_c - h_hat) * (h_c - h_hat);
      between_var /= total;

      QuotientGateEntry entry;
      entry.index = t;
      entry.element = lat.id_of(n);
      entry.entropy_hat = h_hat;
      entry.sigma = std::sqrt(within_var + between_var);
      entry.predicted = quotient_entropy(table.vectors[t], n);
      entry.pass = std::abs(entry.entropy_hat - entry.predicted) <= 3.0 * entry.sigma + 1e-9;
      if (!entry.pass) report.pass = false;
      report.entries.push_back(entry);
    }
  }
  return report;
}

}  // namespace polarlat
