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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polarlat/polar_engine.hpp"
#include "polarlat/solver.hpp"

using namespace polarlat;

namespace {

const double kLn2 = std::log(2.0);

SourceSpec bec_source(const Lattice& lat, double q) {
  return SourceSpec::stationary(EpsVector::from_ids(lat, {{1, 1.0 - q}, {2, q}}));
}

}  // namespace

TEST_CASE("cesaro average per source kind") {
  const Lattice lat = Lattice::divisor(2);
  const EpsVector d1 = EpsVector::point_mass(lat, 0);
  const EpsVector d2 = EpsVector::point_mass(lat, 1);

  CHECK(SourceSpec::stationary(d1).cesaro_q().masses() == d1.masses());

  const EpsVector mean = SourceSpec::periodic({d1, d2}).cesaro_q();
  CHECK(mean.mass(0) == doctest::Approx(0.5));
  CHECK(mean.mass(1) == doctest::Approx(0.5));

  const EpsVector tail = SourceSpec::with_prefix({d1, d1, d1}, d2).cesaro_q();
  CHECK(tail.masses() == d2.masses());
}

TEST_CASE("one-level evolution on the erasure pair") {
  const Lattice lat = Lattice::divisor(2);
  const PolarTable table = evolve(bec_source(lat, 0.5), 1, 1);
  REQUIRE(table.vectors.size() == 2);
  CHECK(table.vectors[0].mass(0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(table.vectors[0].mass(1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(table.vectors[1].mass(0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(table.vectors[1].mass(1) == doctest::Approx(0.25).epsilon(1e-14));

  const std::vector<double> h = entropies(table);
  CHECK(h[0] == doctest::Approx(0.75 * kLn2).epsilon(1e-12));
  CHECK(h[1] == doctest::Approx(0.25 * kLn2).epsilon(1e-12));
  CHECK(h[0] == doctest::Approx(0.51986).epsilon(1e-4));
  CHECK(h[1] == doctest::Approx(0.17329).epsilon(1e-4));
}

TEST_CASE("level zero echoes the source") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector e = EpsVector::from_ids(lat, {{1, 0.4}, {2, 0.3}, {3, 0.2}, {6, 0.1}});
  const PolarTable table = evolve(SourceSpec::stationary(e), 0, 5);
  CHECK(table.window == 1);  // stationary collapses the window
  REQUIRE(table.vectors.size() == 1);
  CHECK(table.vectors[0].masses() == e.masses());
}

TEST_CASE("two-level erasure evolution in index order") {
  const Lattice lat = Lattice::divisor(2);
  const PolarTable table = evolve(bec_source(lat, 0.5), 2, 1);
  REQUIRE(table.vectors.size() == 4);
  const std::vector<double> expected{0.9375, 0.5625, 0.4375, 0.0625};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(table.vectors[i].mass(1) == doctest::Approx(expected[i]).epsilon(1e-14));
}

TEST_CASE("block entropy is conserved through deep recursion") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector e = EpsVector::from_ids(lat, {{1, 0.4}, {2, 0.3}, {3, 0.2}, {6, 0.1}});
  const unsigned level = 10;
  const PolarTable table = evolve(SourceSpec::stationary(e), level, 1);
  double sum = 0.0;
  for (const auto& v : table.vectors) sum += entropy(v);
  CHECK(sum == doctest::Approx(std::pow(2.0, level) * entropy(e)).epsilon(1e-9));
}

TEST_CASE("periodic block entropy conservation per block") {
  const Lattice lat = Lattice::chain(2, 3);
  SplitMixCounterRng rng(21, 0);
  std::vector<EpsVector> period;
  for (int i = 0; i < 3; ++i) period.push_back(testing::random_simplex<double>(lat, rng));
  const SourceSpec src = SourceSpec::periodic(period);
  const unsigned level = 4;
  const std::size_t window = 2;
  const PolarTable table = evolve(src, level, window);
  REQUIRE(table.vectors.size() == window << level);
  const std::size_t block = std::size_t(1) << level;
  for (std::size_t b = 0; b < window; ++b) {
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t t = 0; t < block; ++t) {
      lhs += entropy(table.vectors[b * block + t]);
      rhs += entropy(src.at(b * block + t));
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("blocks evolve from their own window of sources") {
  const Lattice lat = Lattice::divisor(6);
  SplitMixCounterRng rng(24, 0);
  std::vector<EpsVector> period;
  for (int i = 0; i < 3; ++i) period.push_back(testing::random_simplex<double>(lat, rng));
  const SourceSpec src = SourceSpec::periodic(period);
  const unsigned level = 3;
  const std::size_t block = 8;
  const PolarTable both = evolve(src, level, 2);
  // The second block equals a fresh run whose sources start at index 8,
  // which for period 3 is the rotation by 8 mod 3 = 2.
  const SourceSpec rotated = SourceSpec::periodic({period[2], period[0], period[1]});
  const PolarTable shifted = evolve(rotated, level, 1);
  for (std::size_t t = 0; t < block; ++t)
    CHECK(both.vectors[block + t].masses() == shifted.vectors[t].masses());
}

TEST_CASE("periodic source with equal dists matches the stationary path") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector e = EpsVector::from_ids(lat, {{1, 0.4}, {2, 0.3}, {3, 0.2}, {6, 0.1}});
  const PolarTable st = evolve(SourceSpec::stationary(e), 5, 1);
  const PolarTable pe = evolve(SourceSpec::periodic({e, e}), 5, 3);
  const std::size_t block = 32;
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t t = 0; t < block; ++t)
      CHECK(pe.vectors[b * block + t].masses() == st.vectors[t].masses());
}

TEST_CASE("evolution is bit-identical across worker counts") {
  const Lattice lat = Lattice::divisor(12);
  SplitMixCounterRng rng(22, 0);
  const EpsVector e = testing::random_simplex<double>(lat, rng);
  const SourceSpec src = SourceSpec::stationary(e);
  const PolarTable one = evolve(src, 8, 1, {.workers = 1});
  const PolarTable two = evolve(src, 8, 1, {.workers = 2});
  REQUIRE(one.vectors.size() == two.vectors.size());
  for (std::size_t i = 0; i < one.vectors.size(); ++i)
    CHECK(one.vectors[i].masses() == two.vectors[i].masses());
}

TEST_CASE("resource guard trips before allocating") {
  const Lattice lat = Lattice::divisor(2);
  EvolveOptions opts;
  opts.max_vectors = 1 << 10;
  CHECK_THROWS_AS(evolve(bec_source(lat, 0.5), 20, 1, opts), ResourceLimit);
  CHECK_THROWS_AS(empirical_mu(bec_source(lat, 0.5), 20, 1, 1e-4, opts), ResourceLimit);
}

TEST_CASE("classify implements the two-inequality event") {
  const Lattice lat = Lattice::divisor(12);
  SUBCASE("point mass classifies to its element") {
    const EpsVector e = EpsVector::point_mass(lat, lat.index_of(4));
    CHECK(classify(e, 1e-6) == lat.index_of(4));
  }
  SUBCASE("near-bottom mass classifies to bottom") {
    const EpsVector e = EpsVector::from_ids(
        lat, {{1, 0.999}, {2, 0.0002}, {3, 0.0002}, {4, 0.0002}, {6, 0.0002}, {12, 0.0002}});
    CHECK(classify(e, 0.01) == lat.bottom());
  }
  SUBCASE("unpolarized vector classifies to nothing") {
    const Lattice lat2 = Lattice::divisor(2);
    const EpsVector e = EpsVector::from_ids(lat2, {{1, 0.25}, {2, 0.75}});
    CHECK_FALSE(classify(e, 0.01).has_value());
  }
  SUBCASE("oversized delta is ambiguous") {
    const Lattice lat2 = Lattice::divisor(2);
    const EpsVector e = EpsVector::from_ids(lat2, {{1, 0.5}, {2, 0.5}});
    CHECK_THROWS_AS(classify(e, 10.0), AmbiguousDelta);
  }
  SUBCASE("delta must be positive") {
    CHECK_THROWS_AS(classify(EpsVector::point_mass(lat, 0), 0.0), ConfigError);
  }
}

TEST_CASE("nearest-level assignment and concentration fast path") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector point = EpsVector::point_mass(lat, lat.index_of(3));
  CHECK(classify_nearest(point) == lat.index_of(3));
  CHECK(classify_concentration(point, 1e-3) == lat.index_of(3));
  const EpsVector spread = EpsVector::from_ids(lat, {{1, 0.5}, {6, 0.5}});
  CHECK_FALSE(classify_concentration(spread, 1e-3).has_value());
  // Where classify resolves, nearest agrees.
  SplitMixCounterRng rng(23, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const EpsVector e = testing::random_simplex<double>(lat, rng);
    if (auto c = classify(e, 0.05)) CHECK(classify_nearest(e) == *c);
  }
}

TEST_CASE("empirical distribution accounting is exact") {
  const Lattice lat = Lattice::divisor(2);
  const EmpiricalMu mu = empirical_mu(bec_source(lat, 0.3), 10, 1, 1e-3);
  std::uint64_t total = mu.unresolved_count;
  for (auto c : mu.strict_counts) total += c;
  CHECK(total == mu.total);
  std::uint64_t completed = 0;
  for (auto c : mu.completed_counts) completed += c;
  CHECK(completed == mu.total);
  CHECK(mu.total == 1024);
}

TEST_CASE("deep recursion pins the asymptotic fractions") {
  const Lattice lat = Lattice::divisor(2);
  const EmpiricalMu mu = empirical_mu(bec_source(lat, 0.3), 18, 1, 1e-3);
  // The completed assignment is within a percent of the limit; the strict
  // event still carries transitional mass at this depth.
  CHECK(std::abs(mu.completed(0) - 0.7) < 0.01);
  CHECK(std::abs(mu.completed(1) - 0.3) < 0.01);
  CHECK(mu.unresolved() > 0.0);
  CHECK(mu.strict(1) < mu.completed(1));
}

TEST_CASE("unresolved mass decreases with depth") {
  const Lattice lat = Lattice::divisor(2);
  double prev = 1.0;
  for (unsigned level : {6u, 8u, 10u, 12u}) {
    const EmpiricalMu mu = empirical_mu(bec_source(lat, 0.3), level, 1, 1e-3);
    CHECK(mu.unresolved() <= prev);
    prev = mu.unresolved();
  }
  CHECK(prev < 0.25);
}

TEST_CASE("point-mass source polarizes immediately") {
  const Lattice lat = Lattice::divisor(6);
  const SourceSpec src = SourceSpec::stationary(EpsVector::point_mass(lat, lat.bottom()));
  const EmpiricalMu mu = empirical_mu(src, 0, 1, 1e-4);
  CHECK(mu.strict(lat.bottom()) == 1.0);
  CHECK(mu.unresolved() == 0.0);
}

TEST_CASE("entropy-weighted consistency of the empirical estimate") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector e = EpsVector::from_ids(lat, {{1, 0.4}, {2, 0.3}, {3, 0.2}, {6, 0.1}});
  const SourceSpec src = SourceSpec::stationary(e);
  const unsigned level = 12;
  const double delta = 1e-3;
  const EmpiricalMu mu = empirical_mu(src, level, 1, delta);
  double weighted = 0.0;
  for (ElementIndex i = 0; i < lat.size(); ++i)
    weighted += mu.completed(i) * std::log(static_cast<double>(lat.order_of(i)));
  const double slack =
      mu.unresolved() * std::log(static_cast<double>(lat.order_of(lat.top()))) + delta;
  CHECK(std::abs(weighted - entropy(e)) <= slack);
}

TEST_CASE("prefix sources fall back to the tail past the prefix") {
  const Lattice lat = Lattice::divisor(2);
  const EpsVector head = EpsVector::from_ids(lat, {{1, 0.9}, {2, 0.1}});
  const EpsVector tail = EpsVector::from_ids(lat, {{1, 0.2}, {2, 0.8}});
  const SourceSpec src = SourceSpec::with_prefix({head, head}, tail);
  CHECK(src.at(1).masses() == head.masses());
  CHECK(src.at(2).masses() == tail.masses());
  // Level 2 consumes the prefix inside the first block; the second block is
  // pure tail and matches the stationary evolution.
  const PolarTable mixed = evolve(src, 2, 2);
  const PolarTable pure = evolve(SourceSpec::stationary(tail), 2, 1);
  for (std::size_t t = 0; t < 4; ++t)
    CHECK(mixed.vectors[4 + t].masses() == pure.vectors[t].masses());
  CHECK(mixed.vectors[0].masses() != pure.vectors[0].masses());
}

TEST_CASE("per-block spread is reported for non-stationary windows") {
  const Lattice lat = Lattice::divisor(2);
  const EpsVector a = EpsVector::from_ids(lat, {{1, 0.9}, {2, 0.1}});
  const EpsVector b = EpsVector::from_ids(lat, {{1, 0.1}, {2, 0.9}});
  const SourceSpec src = SourceSpec::periodic({a, b, b});
  const EmpiricalMu mu = empirical_mu(src, 3, 4, 1e-3);
  CHECK(mu.total == 32);
  CHECK(mu.block_spread >= 0.0);
}

TEST_CASE("a periodic source polarizes to the asymptotics of its Cesaro average") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector d1 = EpsVector::from_ids(lat, {{1, 0.7}, {2, 0.1}, {3, 0.1}, {6, 0.1}});
  const EpsVector d2 = EpsVector::from_ids(lat, {{1, 0.1}, {2, 0.5}, {3, 0.3}, {6, 0.1}});
  const SourceSpec src = SourceSpec::periodic({d1, d2});
  // The period mean is the familiar {.4, .3, .2, .1} example; solve it from
  // the exact rational form of the same source.
  auto r = [](long num, long den) { return scalar_traits<Rational>::from_parts(num, den); };
  const ExactSourceSpec exact_src = ExactSourceSpec::periodic(
      {ExactEpsVector::from_ids(lat, {{1, r(7, 10)}, {2, r(1, 10)}, {3, r(1, 10)}, {6, r(1, 10)}}),
       ExactEpsVector::from_ids(lat, {{1, r(1, 10)}, {2, r(5, 10)}, {3, r(3, 10)}, {6, r(1, 10)}})});
  const MuDistribution mu = solve_mu(exact_src.cesaro_q());
  CHECK(mu.mass_of_id(1) == r(3, 5));
  CHECK(mu.mass_of_id(2) == r(1, 10));
  CHECK(mu.mass_of_id(6) == r(3, 10));
  const EmpiricalMu emp = empirical_mu(src, 14, 1, 1e-4);
  for (ElementIndex i = 0; i < lat.size(); ++i)
    CHECK(std::abs(emp.completed(i) - to_double(mu.mass[i])) < 0.005);
}
