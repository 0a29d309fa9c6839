// Copyright 2026 The magnoncat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace magnoncat {

/// Invalid parameters or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator or state dimensions do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix handed in as a density matrix is not Hermitian or not unit trace.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// S(phi_b) vanishes: symmetric SQUID biased at half a flux quantum.
class DegenerateSquidError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A state construction or projection produced a zero-norm state.
class NullStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Density-matrix invariants drifted during time evolution (CLI exit code 3).
class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CLI exit code 4).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace magnoncat
