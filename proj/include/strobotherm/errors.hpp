// Copyright 2026 The strobotherm Authors
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

#ifndef STROBOTHERM_ERRORS_HPP
#define STROBOTHERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace strobotherm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-Hermitian matrix, negative rate, mismatched dims.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested dimension exceeds a configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gibbs parameter fit failed to converge.
class FitError : public Error {
 public:
  FitError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Singular Jacobian or vanishing heat capacity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Operation requested on an object lacking the needed capability.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace strobotherm

#endif  // STROBOTHERM_ERRORS_HPP
