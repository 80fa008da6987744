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

#include "polarlat/json_io.hpp"

#include <cinttypes>

namespace polarlat {

namespace {

ElementId parse_element_id(const std::string& key, const std::string& path) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return static_cast<ElementId>(v);
  } catch (const std::exception&) {
    throw ConfigError(path + ": bad element id '" + key + "'");
  }
}

}  // namespace

Lattice lattice_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("type"))
    throw ConfigError("lattice: expected an object with a 'type' field");
  const std::string type = spec.at("type").get<std::string>();
  try {
    if (type == "divisor") {
      if (!spec.contains("modulus")) throw ConfigError("lattice.modulus: missing");
      return Lattice::divisor(spec.at("modulus").get<std::uint64_t>());
    }
    if (type == "chain") {
      if (!spec.contains("prime") || !spec.contains("height"))
        throw ConfigError("lattice: chain needs 'prime' and 'height'");
      return Lattice::chain(spec.at("prime").get<std::uint64_t>(),
                            spec.at("height").get<unsigned>());
    }
    if (type == "explicit") {
      std::vector<ElementId> elements;
      for (const auto& e : spec.at("elements")) elements.push_back(e.get<ElementId>());
      std::unordered_map<ElementId, std::uint64_t> orders;
      for (const auto& [key, value] : spec.at("order").items())
        orders[parse_element_id(key, "lattice.order")] = value.get<std::uint64_t>();
      std::vector<std::pair<ElementId, ElementId>> covers;
      for (const auto& c : spec.at("covers")) {
        if (!c.is_array() || c.size() != 2)
          throw ConfigError("lattice.covers: each cover is a [lo, hi] pair");
        covers.emplace_back(c[0].get<ElementId>(), c[1].get<ElementId>());
      }
      return Lattice::explicit_from_hasse(elements, covers, orders);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("lattice: ") + e.what());
  }
  throw ConfigError("lattice.type: unknown type '" + type + "'");
}

namespace {

template <typename S>
BasicEpsVector<S> dist_from_json_impl(const Lattice& lat, const Json& spec, bool normalize,
                                      const std::string& path, bool exact) {
  if (!spec.is_object()) throw ConfigError(path + ": expected an object of masses");
  std::vector<S> mass(lat.size(), scalar_traits<S>::zero());
  for (const auto& [key, value] : spec.items()) {
    const ElementId id = parse_element_id(key, path);
    if (!lat.has_id(id)) throw ConfigError(path + "." + key + ": not a lattice element");
    S p;
    if (value.is_string()) {
      const Rational r = rational_from_string(value.template get<std::string>());
      if constexpr (scalar_traits<S>::exact)
        p = r;
      else
        p = to_double(r);
    } else if (value.is_number()) {
      if (exact)
        throw ConfigError(path + "." + key +
                          ": exact mode needs string probabilities (\"p/q\" or decimal)");
      if constexpr (scalar_traits<S>::exact)
        p = rational_from_double(value.template get<double>());
      else
        p = value.template get<double>();
    } else {
      throw ConfigError(path + "." + key + ": probability must be a number or string");
    }
    mass[lat.index_of(id)] = p;
  }
  S sum = scalar_traits<S>::zero();
  for (const S& p : mass) {
    if (p < scalar_traits<S>::zero()) throw ConfigError(path + ": negative probability");
    sum += p;
  }
  if (sum == scalar_traits<S>::zero()) throw ConfigError(path + ": empty distribution");
  S err = sum - scalar_traits<S>::one();
  if (err < scalar_traits<S>::zero()) err = -err;
  if (err > scalar_traits<S>::sum_tolerance()) {
    if (!normalize)
      throw ConfigError(path + ": masses do not sum to 1 (pass the normalize flag to rescale)");
    for (S& p : mass) p /= sum;
  }
  return BasicEpsVector<S>(lat, std::move(mass));
}

template <typename S>
BasicSourceSpec<S> source_from_json_impl(const Lattice& lat, const Json& spec, bool normalize,
                                         bool exact) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw ConfigError("source: expected an object with a 'kind' field");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "stationary") {
    if (!spec.contains("dist")) throw ConfigError("source.dist: missing");
    return BasicSourceSpec<S>::stationary(
        dist_from_json_impl<S>(lat, spec.at("dist"), normalize, "source.dist", exact));
  }
  if (kind == "periodic") {
    if (!spec.contains("dists") || !spec.at("dists").is_array() || spec.at("dists").empty())
      throw ConfigError("source.dists: need a nonempty array");
    std::vector<BasicEpsVector<S>> dists;
    std::size_t i = 0;
    for (const auto& d : spec.at("dists"))
      dists.push_back(dist_from_json_impl<S>(lat, d, normalize,
                                             "source.dists[" + std::to_string(i++) + "]", exact));
    return BasicSourceSpec<S>::periodic(std::move(dists));
  }
  if (kind == "prefix") {
    if (!spec.contains("tail")) throw ConfigError("source.tail: missing");
    std::vector<BasicEpsVector<S>> prefix;
    std::size_t i = 0;
    if (spec.contains("dists"))
      for (const auto& d : spec.at("dists"))
        prefix.push_back(dist_from_json_impl<S>(
            lat, d, normalize, "source.dists[" + std::to_string(i++) + "]", exact));
    return BasicSourceSpec<S>::with_prefix(
        std::move(prefix),
        dist_from_json_impl<S>(lat, spec.at("tail"), normalize, "source.tail", exact));
  }
  throw ConfigError("source.kind: unknown kind '" + kind + "'");
}

}  // namespace

EpsVector dist_from_json(const Lattice& lat, const Json& spec, bool normalize,
                         const std::string& path) {
  return dist_from_json_impl<double>(lat, spec, normalize, path, /*exact=*/false);
}

ExactEpsVector exact_dist_from_json(const Lattice& lat, const Json& spec, bool normalize,
                                    const std::string& path) {
  return dist_from_json_impl<Rational>(lat, spec, normalize, path, /*exact=*/true);
}

SourceSpec source_from_json(const Lattice& lat, const Json& spec, bool normalize) {
  return source_from_json_impl<double>(lat, spec, normalize, /*exact=*/false);
}

ExactSourceSpec exact_source_from_json(const Lattice& lat, const Json& spec, bool normalize) {
  return source_from_json_impl<Rational>(lat, spec, normalize, /*exact=*/true);
}

Json masses_to_json(const EpsVector& dist) {
  Json out = Json::object();
  const Lattice& lat = dist.lattice();
  for (ElementIndex i = 0; i < lat.size(); ++i)
    out[std::to_string(lat.id_of(i))] = dist.mass(i);
  return out;
}

Json masses_to_json(const ExactEpsVector& dist) {
  Json out = Json::object();
  const Lattice& lat = dist.lattice();
  for (ElementIndex i = 0; i < lat.size(); ++i)
    out[std::to_string(lat.id_of(i))] = rational_to_string(dist.mass(i));
  return out;
}

Json masses_to_json_double(const ExactEpsVector& dist) {
  Json out = Json::object();
  const Lattice& lat = dist.lattice();
  for (ElementIndex i = 0; i < lat.size(); ++i)
    out[std::to_string(lat.id_of(i))] = to_double(dist.mass(i));
  return out;
}

std::string config_digest(const Json& config) {
  const std::string dump = config.dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return std::string(buf);
}

}  // namespace polarlat
