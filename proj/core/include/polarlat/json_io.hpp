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

#ifndef POLARLAT_JSON_IO_HPP_
#define POLARLAT_JSON_IO_HPP_

#include <json.hpp>

#include <string>

#include "polarlat/source.hpp"

namespace polarlat {

using Json = nlohmann::json;

// {"type":"divisor","modulus":n} | {"type":"chain","prime":p,"height":h} |
// {"type":"explicit","elements":[...],"order":{"id":n,...},"covers":[[lo,hi],...]}
Lattice lattice_from_json(const Json& spec);

// Dist object {"<element-id>": probability}; probabilities are numbers or
// "p/q" / decimal strings. normalize rescales a valid-but-unnormalized dist.
EpsVector dist_from_json(const Lattice& lat, const Json& spec, bool normalize,
                         const std::string& path);
// Exact mode: probabilities must be strings so no binary rounding sneaks in.
ExactEpsVector exact_dist_from_json(const Lattice& lat, const Json& spec, bool normalize,
                                    const std::string& path);

// {"kind":"stationary","dist":{...}} | {"kind":"periodic","dists":[...]} |
// {"kind":"prefix","dists":[...],"tail":{...}}
SourceSpec source_from_json(const Lattice& lat, const Json& spec, bool normalize);
ExactSourceSpec exact_source_from_json(const Lattice& lat, const Json& spec, bool normalize);

Json masses_to_json(const EpsVector& dist);
Json masses_to_json(const ExactEpsVector& dist);       // "p/q" strings
Json masses_to_json_double(const ExactEpsVector& dist);

// FNV-1a over the canonical dump; provenance stamp for output files.
std::string config_digest(const Json& config);

}  // namespace polarlat

#endif  // POLARLAT_JSON_IO_HPP_
