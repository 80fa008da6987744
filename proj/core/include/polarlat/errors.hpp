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

#ifndef POLARLAT_ERRORS_HPP_
#define POLARLAT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace polarlat {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Construction of an explicit lattice found a pair without a unique
// least upper bound or greatest lower bound.
class NotALattice : public Error {
 public:
  using Error::Error;
};

class NotDistributive : public Error {
 public:
  using Error::Error;
};

// The element-order map violates divisibility, the bottom-order rule, or
// the identity |a v b| * |a ^ b| = |a| * |b|.
class BadOrderMap : public Error {
 public:
  using Error::Error;
};

class IncomparablePair : public Error {
 public:
  using Error::Error;
};

class UnknownElement : public Error {
 public:
  using Error::Error;
};

class LatticeMismatch : public Error {
 public:
  using Error::Error;
};

class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

// Interval (a, b) does not satisfy the precondition of a partial-sum
// operation (a < b, or additionally no chain a < x < y < b).
class BadInterval : public Error {
 public:
  using Error::Error;
};

// classify() found two lattice elements meeting the two-inequality event.
class AmbiguousDelta : public Error {
 public:
  using Error::Error;
};

class NonDistributiveLattice : public Error {
 public:
  using Error::Error;
};

class NotAChain : public Error {
 public:
  using Error::Error;
};

// The asymptotic walk hit an element with an empty two-level overgroup set
// but several covers; no tested distributive lattice reaches this.
class StructurallyAmbiguous : public Error {
 public:
  using Error::Error;
};

// phi returned the empty-intersection convention coset during a simulation,
// which cannot happen when u is drawn from the transform itself.
class EmptyPhi : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class OverflowLimit : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace polarlat

#endif  // POLARLAT_ERRORS_HPP_
