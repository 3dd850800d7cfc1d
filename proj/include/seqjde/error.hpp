// SPDX-License-Identifier: Apache-2.0
//
// seqjde - sequential joint detection and estimation
// Copyright (C) 2026 The seqjde authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SEQJDE_ERROR_HPP
#define SEQJDE_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace seqjde {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parameter or configuration values outside their domain.
class InvalidParams : public Error {
  public:
    using Error::Error;
};

// Cost weights for which the decision boundary equation has no meaningful root.
class InvalidCosts : public Error {
  public:
    using Error::Error;
};

class InfeasibleConstraint : public Error {
  public:
    using Error::Error;
};

// A root finder or integrator failed to reach its tolerance.
class NumericalFailure : public Error {
  public:
    using Error::Error;
};

class QuadratureNonConvergence : public NumericalFailure {
  public:
    using NumericalFailure::NumericalFailure;
};

// The channel energy never reached the stopping threshold within the horizon.
class HorizonExhausted : public Error {
  public:
    HorizonExhausted(std::uint64_t samples, double energy, double threshold,
                     std::optional<std::size_t> replication = std::nullopt);

    std::uint64_t samples() const noexcept { return samples_; }
    double energy() const noexcept { return energy_; }
    double threshold() const noexcept { return threshold_; }
    std::optional<std::size_t> replication() const noexcept { return replication_; }

  private:
    std::uint64_t samples_;
    double energy_;
    double threshold_;
    std::optional<std::size_t> replication_;
};

}  // namespace seqjde

#endif
