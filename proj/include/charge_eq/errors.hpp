// Copyright 2026 The charge_eq Authors.
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

#ifndef CHARGE_EQ_ERRORS_HPP_
#define CHARGE_EQ_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace charge_eq {

/// Raised when inputs violate a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for operations that are defined only for a subset of inputs,
/// e.g. the Hessian of a complex configuration.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an energy derivative is requested at a configuration whose
/// energy is +infinity.
class InfiniteEnergyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver stopped before meeting its tolerance. Carries the
/// last iterate so callers can still report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual_norm, int iterations)
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        residual_norm_(residual_norm),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual_norm() const { return residual_norm_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_norm_;
  int iterations_;
};

}  // namespace charge_eq

#endif  // CHARGE_EQ_ERRORS_HPP_
