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

#include "seqjde/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqjde/error.hpp"

namespace seqjde {

std::string_view to_string(Hypothesis h) noexcept {
    return h == Hypothesis::H0 ? "H0" : "H1";
}

ModelParams::ModelParams(double prior_mean, double prior_std, double noise_std)
    : prior_mean_(prior_mean), prior_std_(prior_std), noise_std_(noise_std) {
    if (!std::isfinite(prior_mean) || !std::isfinite(prior_std) || !std::isfinite(noise_std)) {
        throw InvalidParams("model parameters must be finite");
    }
    if (prior_std <= 0.0) {
        throw InvalidParams("prior standard deviation must be positive, got " +
                            std::to_string(prior_std));
    }
    if (noise_std <= 0.0) {
        throw InvalidParams("noise standard deviation must be positive, got " +
                            std::to_string(noise_std));
    }
}

CostWeights::CostWeights(double false_alarm, double miss, double estimation)
    : false_alarm_(false_alarm), miss_(miss), estimation_(estimation) {
    for (double w : {false_alarm, miss, estimation}) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidParams("cost weights must be finite and nonnegative");
        }
    }
}

void require_calibratable(const CostWeights& costs) {
    if (costs.false_alarm() <= 0.0) {
        throw InvalidCosts("invalid costs: false-alarm weight c0 must be positive");
    }
    if (costs.miss() + costs.estimation() <= 0.0) {
        throw InvalidCosts("invalid costs: c1 and ce cannot both be zero");
    }
}

double admissible_cost_bound(const ModelParams& params, const CostWeights& costs) noexcept {
    const double mu2 = params.prior_mean() * params.prior_mean();
    return std::min(costs.false_alarm(), costs.miss() + costs.estimation() * mu2) +
           costs.estimation() * params.prior_variance();
}

double cost_offset(const ModelParams& params, const CostWeights& costs) noexcept {
    const double mu2 = params.prior_mean() * params.prior_mean();
    return costs.miss() + costs.estimation() * (mu2 + params.prior_variance());
}

}  // namespace seqjde
