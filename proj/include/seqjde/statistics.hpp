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

#ifndef SEQJDE_STATISTICS_HPP
#define SEQJDE_STATISTICS_HPP

#include <cstdint>

#include "seqjde/model.hpp"

namespace seqjde {

/// Running sufficient statistics of the observation pairs (y_t, h_t).
struct SufficientStats {
    std::uint64_t count = 0;   ///< number of pairs folded in
    double energy = 0.0;       ///< sum of h_t^2
    double correlation = 0.0;  ///< sum of y_t * h_t

    bool operator==(const SufficientStats&) const = default;
};

/// Empty-history statistics.
constexpr SufficientStats initial_stats() noexcept { return {}; }

/// Folds one observation pair. Throws InvalidParams on non-finite input.
SufficientStats update(const SufficientStats& s, double y, double h);

/// Posterior mean of the amplitude, (V + mu*kappa) / (U + kappa).
double estimate(const SufficientStats& s, const ModelParams& p) noexcept;

/// Posterior variance of the amplitude, sigma^2 / (U + kappa).
double posterior_variance(const SufficientStats& s, const ModelParams& p) noexcept;

/// Log of the likelihood ratio H1:H0 of the y-history given the channel
/// history, with the amplitude integrated out against its prior.
double log_likelihood_ratio(const SufficientStats& s, const ModelParams& p) noexcept;

/// Estimation-aware decision: H1 iff c0 <= L * (c1 + ce * xhat^2).
///
/// Equality decides H1. Evaluated in the log domain; a zero right-hand
/// weight decides H0 unless c0 is also zero.
Hypothesis decide(const SufficientStats& s, const ModelParams& p, const CostWeights& c) noexcept;

}  // namespace seqjde

#endif
