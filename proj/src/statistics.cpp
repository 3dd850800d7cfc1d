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

#include "seqjde/statistics.hpp"

#include <cmath>

#include "seqjde/error.hpp"

namespace seqjde {

SufficientStats update(const SufficientStats& s, double y, double h) {
    if (!std::isfinite(y) || !std::isfinite(h)) {
        throw InvalidParams("observation pair must be finite");
    }
    return {s.count + 1, s.energy + h * h, s.correlation + y * h};
}

double estimate(const SufficientStats& s, const ModelParams& p) noexcept {
    const double kappa = p.variance_ratio();
    return (s.correlation + p.prior_mean() * kappa) / (s.energy + kappa);
}

double posterior_variance(const SufficientStats& s, const ModelParams& p) noexcept {
    return p.noise_variance() / (s.energy + p.variance_ratio());
}

double log_likelihood_ratio(const SufficientStats& s, const ModelParams& p) noexcept {
    const double kappa = p.variance_ratio();
    const double mu = p.prior_mean();
    const double u = s.energy;
    const double v = s.correlation;
    // (V + mu*kappa)^2 / (2 sigma^2 (U + kappa)) - mu^2 / (2 sigma_x^2), expanded so
    // that the prior terms cancel algebraically and the empty history gives 0.
    const double quad = v * v + 2.0 * mu * kappa * v - mu * mu * kappa * u;
    return -0.5 * std::log1p(u / kappa) + quad / (2.0 * p.noise_variance() * (u + kappa));
}

Hypothesis decide(const SufficientStats& s, const ModelParams& p, const CostWeights& c) noexcept {
    if (c.false_alarm() == 0.0) {
        return Hypothesis::H1;
    }
    const double xhat = estimate(s, p);
    const double weight = c.miss() + c.estimation() * xhat * xhat;
    if (weight <= 0.0) {
        return Hypothesis::H0;
    }
    return std::log(c.false_alarm()) <= log_likelihood_ratio(s, p) + std::log(weight)
               ? Hypothesis::H1
               : Hypothesis::H0;
}

}  // namespace seqjde
