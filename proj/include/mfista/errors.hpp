// Copyright 2026 The mfista Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MFISTA_ERRORS_HPP
#define MFISTA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfista {

// Dimension mismatches, nonpositive steps, malformed parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A finite-only container was asked to hold NaN or Inf.
class NonFiniteValue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested combination is valid input but has no exact implementation
// (for instance the L1 prox composed with an off-center ball).
class UnsupportedConfiguration : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Starting point outside dom h.
class InvalidStart : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A user oracle threw or returned garbage during iteration `iteration()`.
class OracleFailure : public std::runtime_error {
 public:
  OracleFailure(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " +
                           what),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

// A trace lacks the data a check needs (e.g. norms-only trace handed to a
// check that needs full iterate vectors).
class UnsupportedTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfista

#endif  // MFISTA_ERRORS_HPP
