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

#ifndef POLARLAT_SOURCE_HPP_
#define POLARLAT_SOURCE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "polarlat/eps_vector.hpp"

namespace polarlat {

// Non-stationary source of initial side-information distributions. The three
// kinds all make the Cesaro average well defined: a stationary dist, a
// periodic cycle, or a finite prefix followed by a stationary tail.
template <typename S>
class BasicSourceSpec {
 public:
  enum class Kind { Stationary, Periodic, Prefix };

  static BasicSourceSpec stationary(BasicEpsVector<S> dist) {
    BasicSourceSpec s;
    s.kind_ = Kind::Stationary;
    s.dists_.push_back(std::move(dist));
    return s;
  }

  static BasicSourceSpec periodic(std::vector<BasicEpsVector<S>> dists) {
    if (dists.empty()) throw ConfigError("periodic source needs at least one dist");
    for (const auto& d : dists)
      if (&d.lattice() != &dists.front().lattice())
        throw LatticeMismatch("periodic dists live on different lattices");
    BasicSourceSpec s;
    s.kind_ = Kind::Periodic;
    s.dists_ = std::move(dists);
    return s;
  }

  static BasicSourceSpec with_prefix(std::vector<BasicEpsVector<S>> prefix,
                                     BasicEpsVector<S> tail) {
    for (const auto& d : prefix)
      if (&d.lattice() != &tail.lattice())
        throw LatticeMismatch("prefix dists live on different lattices");
    BasicSourceSpec s;
    s.kind_ = Kind::Prefix;
    s.dists_ = std::move(prefix);
    s.tail_ = std::move(tail);
    return s;
  }

  Kind kind() const { return kind_; }
  const Lattice& lattice() const {
    return tail_ ? tail_->lattice() : dists_.front().lattice();
  }
  const std::vector<BasicEpsVector<S>>& dists() const { return dists_; }
  const std::optional<BasicEpsVector<S>>& tail() const { return tail_; }

  // Initial dist of source index i (0-based).
  const BasicEpsVector<S>& at(std::size_t i) const {
    switch (kind_) {
      case Kind::Stationary:
        return dists_.front();
      case Kind::Periodic:
        return dists_[i % dists_.size()];
      case Kind::Prefix:
        return i < dists_.size() ? dists_[i] : *tail_;
    }
    return dists_.front();
  }

  // Cesaro average Q: the dist itself, the period mean, or the tail (a
  // finite prefix has density zero).
  BasicEpsVector<S> cesaro_q() const {
    switch (kind_) {
      case Kind::Stationary:
        return dists_.front();
      case Kind::Prefix:
        return *tail_;
      case Kind::Periodic: {
        const Lattice& lat = lattice();
        std::vector<S> acc(lat.size(), scalar_traits<S>::zero());
        for (const auto& d : dists_)
          for (ElementIndex j = 0; j < lat.size(); ++j) acc[j] += d.mass(j);
        const S period = scalar_traits<S>::from_parts(static_cast<std::int64_t>(dists_.size()), 1);
        for (S& x : acc) x /= period;
        return BasicEpsVector<S>(lat, std::move(acc), false);
      }
    }
    return dists_.front();
  }

 private:
  BasicSourceSpec() = default;
  Kind kind_ = Kind::Stationary;
  std::vector<BasicEpsVector<S>> dists_;
  std::optional<BasicEpsVector<S>> tail_;
};

using SourceSpec = BasicSourceSpec<double>;
using ExactSourceSpec = BasicSourceSpec<Rational>;

}  // namespace polarlat

#endif  // POLARLAT_SOURCE_HPP_
