// Copyright 2026 The qmeter developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmeter {

// Bad caller input: malformed operators, incompatible dimensions, out-of-range
// parameters. The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Internal invariant broken (a quantity that must be real came out complex,
// a verification campaign mismatched, ...). The CLI maps this to exit code 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weak-value ratios require a nonvanishing zero-coupling postselection
// probability.
class UndefinedWeakValueError : public ValidationError {
 public:
  UndefinedWeakValueError()
      : ValidationError(
            "undefined weak values: zero-coupling postselection probability "
            "vanishes") {}
  explicit UndefinedWeakValueError(const std::string& msg)
      : ValidationError(msg) {}
};

// Conditioning on an outcome whose probability is numerically zero.
class NullConditioningError : public ValidationError {
 public:
  NullConditioningError() : ValidationError("conditioning on null event") {}
};

// Spectral bookkeeping that needs distinct eigenvalues.
class DegenerateSpectrumError : public ValidationError {
 public:
  DegenerateSpectrumError()
      : ValidationError("degenerate spectrum unsupported") {}
};

// Lattice pointers only support couplings that are integer multiples of the
// grid spacing.
class OffLatticeCouplingError : public ValidationError {
 public:
  OffLatticeCouplingError() : ValidationError("off-lattice coupling") {}
};

}  // namespace qmeter
