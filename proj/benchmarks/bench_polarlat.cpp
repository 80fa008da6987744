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

#include <benchmark/benchmark.h>

#include "polarlat/monte_carlo.hpp"
#include "polarlat/polar_engine.hpp"
#include "polarlat/solver.hpp"

using namespace polarlat;

namespace {

EpsVector random_vector(const Lattice& lat, std::uint64_t stream) {
  SplitMixCounterRng rng(77, stream);
  std::vector<double> mass(lat.size());
  double total = 0.0;
  for (double& m : mass) {
    m = static_cast<double>(rng.below(1000) + 1);
    total += m;
  }
  for (double& m : mass) m /= total;
  return EpsVector(lat, std::move(mass), false);
}

void BM_minus_transform(benchmark::State& state) {
  const Lattice lat = Lattice::divisor(static_cast<std::uint64_t>(state.range(0)));
  const EpsVector e1 = random_vector(lat, 1);
  const EpsVector e2 = random_vector(lat, 2);
  for (auto _ : state) benchmark::DoNotOptimize(minus_transform(e1, e2));
  state.SetLabel(std::to_string(lat.size()) + " elements");
}
BENCHMARK(BM_minus_transform)->Arg(12)->Arg(360)->Arg(2520);

void BM_evolve(benchmark::State& state) {
  const Lattice lat = Lattice::divisor(6);
  const SourceSpec src = SourceSpec::stationary(random_vector(lat, 3));
  const unsigned level = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(src, level, 1));
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << level));
}
BENCHMARK(BM_evolve)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_empirical_mu(benchmark::State& state) {
  const Lattice lat = Lattice::divisor(12);
  const SourceSpec src = SourceSpec::stationary(random_vector(lat, 4));
  const unsigned level = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_mu(src, level, 1, 1e-4));
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << level));
}
BENCHMARK(BM_empirical_mu)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_solve_mu(benchmark::State& state) {
  const Lattice lat = Lattice::divisor(static_cast<std::uint64_t>(state.range(0)));
  SplitMixCounterRng rng(78, 1);
  std::vector<Rational> mass(lat.size());
  std::int64_t total = 0;
  std::vector<std::int64_t> w(lat.size());
  for (auto& x : w) {
    x = static_cast<std::int64_t>(rng.below(1000) + 1);
    total += x;
  }
  for (std::size_t i = 0; i < mass.size(); ++i)
    mass[i] = scalar_traits<Rational>::from_parts(w[i], total);
  const QDistribution q(lat, std::move(mass), false);
  for (auto _ : state) benchmark::DoNotOptimize(solve_mu(q));
}
BENCHMARK(BM_solve_mu)->Arg(60)->Arg(360)->Arg(2520);

void BM_coset_phi(benchmark::State& state) {
  const GroupUniverse u{2520};
  const Coset a(u, 360, 3), b(u, 56, 11);
  std::uint64_t g = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coset_phi(g, a, b));
    g = (g + 7) % u.modulus;
  }
}
BENCHMARK(BM_coset_phi);

void BM_simulate_block(benchmark::State& state) {
  const Lattice lat = Lattice::divisor(12);
  const SourceSpec src = SourceSpec::stationary(random_vector(lat, 5));
  for (auto _ : state) {
    SampleConfig cfg;
    cfg.source = &src;
    cfg.level = 2;
    cfg.samples = 10000;
    cfg.seed = 99;
    benchmark::DoNotOptimize(simulate_block(cfg));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_simulate_block)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
