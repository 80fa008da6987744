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

#include "polarlat/json_io.hpp"

using namespace polarlat;

TEST_CASE("lattice specs parse for all three kinds") {
  const Lattice div = lattice_from_json(Json::parse(R"({"type":"divisor","modulus":12})"));
  CHECK(div.size() == 6);

  const Lattice ch = lattice_from_json(Json::parse(R"({"type":"chain","prime":3,"height":2})"));
  CHECK(ch.size() == 3);
  CHECK(ch.order_of(2) == 9);

  const Lattice ex = lattice_from_json(Json::parse(R"({
    "type": "explicit",
    "elements": [1, 2, 3, 6],
    "order": {"1": 1, "2": 2, "3": 3, "6": 6},
    "covers": [[1, 2], [1, 3], [2, 6], [3, 6]]
  })"));
  CHECK(ex.size() == 4);
  CHECK(ex.is_distributive());
}

TEST_CASE("bad lattice specs raise config or construction errors") {
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"type":"moebius"})")), ConfigError);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"type":"divisor"})")), ConfigError);
  CHECK_THROWS_AS(lattice_from_json(Json::parse("[1,2]")), ConfigError);
  // Pentagon through the explicit schema trips the constructor validation.
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({
    "type": "explicit",
    "elements": [0, 1, 2, 3, 4],
    "order": {"0": 1, "1": 2, "2": 4, "3": 2, "4": 8},
    "covers": [[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]
  })")),
                  NotDistributive);
}

TEST_CASE("distributions parse numbers and rational strings") {
  const Lattice lat = Lattice::divisor(6);
  const EpsVector e = dist_from_json(
      lat, Json::parse(R"({"1": 0.4, "2": "3/10", "3": "0.2", "6": 0.1})"), false, "dist");
  CHECK(e.mass(lat.index_of(2)) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(e.mass(lat.index_of(3)) == doctest::Approx(0.2).epsilon(1e-15));

  const ExactEpsVector x = exact_dist_from_json(
      lat, Json::parse(R"({"1": "2/5", "2": "3/10", "3": "1/5", "6": "1/10"})"), false, "dist");
  CHECK(x.mass(lat.index_of(1)) == Rational(2, 5));
}

TEST_CASE("distribution errors carry the field path") {
  const Lattice lat = Lattice::divisor(6);
  SUBCASE("exact mode rejects bare numbers") {
    CHECK_THROWS_WITH_AS(
        exact_dist_from_json(lat, Json::parse(R"({"1": 0.5, "2": 0.5})"), false, "source.dist"),
        doctest::Contains("source.dist.1"), ConfigError);
  }
  SUBCASE("unknown element") {
    CHECK_THROWS_WITH_AS(dist_from_json(lat, Json::parse(R"({"5": 1.0})"), false, "source.dist"),
                         doctest::Contains("source.dist.5"), ConfigError);
  }
  SUBCASE("sum off without normalize") {
    CHECK_THROWS_WITH_AS(
        dist_from_json(lat, Json::parse(R"({"1": 0.5, "2": 0.4})"), false, "source.dist"),
        doctest::Contains("normalize"), ConfigError);
  }
  SUBCASE("normalize rescales") {
    const EpsVector e =
        dist_from_json(lat, Json::parse(R"({"1": 0.5, "2": 0.4})"), true, "source.dist");
    CHECK(e.mass(lat.index_of(1)) == doctest::Approx(5.0 / 9.0));
  }
  SUBCASE("empty distribution") {
    CHECK_THROWS_AS(dist_from_json(lat, Json::parse(R"({"1": 0.0})"), true, "d"), ConfigError);
  }
}

TEST_CASE("sources parse for all three kinds") {
  const Lattice lat = Lattice::divisor(2);
  const SourceSpec st = source_from_json(
      lat, Json::parse(R"({"kind":"stationary","dist":{"1":0.5,"2":0.5}})"), false);
  CHECK(st.kind() == SourceSpec::Kind::Stationary);

  const SourceSpec pe = source_from_json(
      lat, Json::parse(R"({"kind":"periodic","dists":[{"1":1.0},{"2":1.0}]})"), false);
  CHECK(pe.kind() == SourceSpec::Kind::Periodic);
  CHECK(pe.cesaro_q().mass(0) == doctest::Approx(0.5));

  const SourceSpec pr = source_from_json(
      lat, Json::parse(R"({"kind":"prefix","dists":[{"1":1.0}],"tail":{"2":1.0}})"), false);
  CHECK(pr.kind() == SourceSpec::Kind::Prefix);
  CHECK(pr.cesaro_q().mass(1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(source_from_json(lat, Json::parse(R"({"kind":"weird"})"), false), ConfigError);
}

TEST_CASE("mass serialization round-trips") {
  const Lattice lat = Lattice::divisor(6);
  const ExactEpsVector x = exact_dist_from_json(
      lat, Json::parse(R"({"1": "2/5", "2": "3/10", "3": "1/5", "6": "1/10"})"), false, "d");
  const Json j = masses_to_json(x);
  const ExactEpsVector back = exact_dist_from_json(lat, j, false, "d");
  CHECK(back.masses() == x.masses());

  const EpsVector e = dist_from_json(lat, masses_to_json_double(x), false, "d");
  CHECK(e.mass(lat.index_of(1)) == doctest::Approx(0.4));
}

TEST_CASE("config digest is stable and key-order independent") {
  const Json a = Json::parse(R"({"x": 1, "y": [1, 2]})");
  const Json b = Json::parse(R"({"y": [1, 2], "x": 1})");
  CHECK(config_digest(a) == config_digest(b));
  CHECK(config_digest(a).size() == 16);
  const Json c = Json::parse(R"({"x": 2, "y": [1, 2]})");
  CHECK(config_digest(a) != config_digest(c));
}
