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

#ifndef SEQJDE_MODEL_HPP
#define SEQJDE_MODEL_HPP

#include <string_view>

namespace seqjde {

enum class Hypothesis { H0, H1 };

std::string_view to_string(Hypothesis h) noexcept;

/// Gaussian prior on the unknown amplitude and Gaussian observation noise.
///
/// The amplitude is N(prior_mean, prior_std^2) under H1 and exactly zero
/// under H0; the noise is N(0, noise_std^2) and i.i.d. over time.
class ModelParams {
  public:
    /// Throws InvalidParams unless both standard deviations are positive and
    /// every value is finite.
    ModelParams(double prior_mean, double prior_std, double noise_std);

    double prior_mean() const noexcept { return prior_mean_; }
    double prior_std() const noexcept { return prior_std_; }
    double noise_std() const noexcept { return noise_std_; }

    double prior_variance() const noexcept { return prior_std_ * prior_std_; }
    double noise_variance() const noexcept { return noise_std_ * noise_std_; }

    /// Noise-to-prior variance ratio; acts as the prior's pseudo-energy in
    /// the shrinkage estimator.
    double variance_ratio() const noexcept { return noise_variance() / prior_variance(); }

    bool operator==(const ModelParams&) const = default;

  private:
    double prior_mean_;
    double prior_std_;
    double noise_std_;
};

/// Weights of the combined cost: false alarm, miss, and squared estimation
/// error under H1.
class CostWeights {
  public:
    /// Throws InvalidParams on negative or non-finite weights.
    CostWeights(double false_alarm, double miss, double estimation);

    double false_alarm() const noexcept { return false_alarm_; }
    double miss() const noexcept { return miss_; }
    double estimation() const noexcept { return estimation_; }

    bool operator==(const CostWeights&) const = default;

  private:
    double false_alarm_;
    double miss_;
    double estimation_;
};

/// Throws InvalidCosts when the weights make the threshold problem
/// degenerate (zero false-alarm weight, or zero miss and estimation weights).
void require_calibratable(const CostWeights& costs);

/// Largest combined cost that still requires observations:
/// min{c0, c1 + ce*mu^2} + ce*sigma_x^2. Constraints at or above this value
/// are met by deciding from the prior alone.
double admissible_cost_bound(const ModelParams& params, const CostWeights& costs) noexcept;

/// Combined cost floor approached as the channel energy grows without bound,
/// c1 + ce*(mu^2 + sigma_x^2), which is subtracted from C to obtain the
/// threshold equation's target.
double cost_offset(const ModelParams& params, const CostWeights& costs) noexcept;

}  // namespace seqjde

#endif
