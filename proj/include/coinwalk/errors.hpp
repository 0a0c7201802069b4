// Copyright 2026 The coinwalk Authors
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

#ifndef COINWALK_ERRORS_HPP
#define COINWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coinwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad θ, Σ ≤ 0, β ∉ [0,1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A shift would have moved amplitude off the finite lattice.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// Post-selection success probability too small to normalize the outcome.
class DegeneratePostselection : public Error {
 public:
  using Error::Error;
};

/// Root finder found no sign change on its scan grid.
class NoBracket : public Error {
 public:
  using Error::Error;
};

/// Upstream numerical corruption (e.g. a negative population).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coinwalk

#endif  // COINWALK_ERRORS_HPP
