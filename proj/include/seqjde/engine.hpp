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

#ifndef SEQJDE_ENGINE_HPP
#define SEQJDE_ENGINE_HPP

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "seqjde/error.hpp"
#include "seqjde/margin.hpp"
#include "seqjde/model.hpp"
#include "seqjde/statistics.hpp"

namespace seqjde {

/// One observation pair: y_t = x h_t + w_t together with the gain h_t.
struct Sample {
    double observation = 0.0;
    double gain = 0.0;
};

/// Realized stopping time, decision and estimate of one sequential run.
struct TripletOutcome {
    std::uint64_t stop_index = 0;
    Hypothesis decision = Hypothesis::H0;
    std::optional<double> estimate;  ///< present iff decision is H1
    SufficientStats terminal;
    double log_lr = 0.0;
    double predicted_cost = 0.0;  ///< expected_margin(U_T) + c1 + ce (mu^2 + sigma_x^2)
};

/// Combined cost achieved by the optimal decision and estimator when
/// stopping with channel energy U_T.
double predicted_cost(double energy, const ModelParams& params, const CostWeights& costs);

namespace detail {

struct NoStepObserver {
    void operator()(const Sample&, const SufficientStats&) const noexcept {}
};

TripletOutcome finish_run(const SufficientStats& terminal, const ModelParams& params,
                          const CostWeights& costs);

}  // namespace detail

/// Runs the optimal triplet on a stream of samples.
///
/// `next` is called once per sample and returns std::nullopt when the stream
/// ends. Sampling stops at the first t with U_t >= threshold; only the gains
/// influence when that happens. In the stop-at-zero regime nothing is read.
///
/// Throws HorizonExhausted if the threshold is not reached within `horizon`
/// samples or before the stream ends.
template <class Source, class Observer = detail::NoStepObserver>
    requires std::invocable<Source&>
TripletOutcome run_sequential(Source&& next, const Calibration& cal, const ModelParams& params,
                              const CostWeights& costs, std::uint64_t horizon,
                              Observer&& on_step = {}) {
    if (horizon < 1) {
        throw InvalidParams("horizon must be at least 1");
    }
    const auto threshold = cal.threshold();
    if (!threshold) {
        const auto& stop = std::get<StopAtZeroRegime>(cal.regime);
        TripletOutcome out;
        out.decision = stop.decision;
        out.estimate = stop.estimate;
        out.predicted_cost = predicted_cost(0.0, params, costs);
        return out;
    }

    SufficientStats stats = initial_stats();
    while (stats.energy < *threshold) {
        if (stats.count >= horizon) {
            throw HorizonExhausted(stats.count, stats.energy, *threshold);
        }
        const std::optional<Sample> sample = next();
        if (!sample) {
            throw HorizonExhausted(stats.count, stats.energy, *threshold);
        }
        stats = update(stats, sample->observation, sample->gain);
        on_step(*sample, stats);
    }
    return detail::finish_run(stats, params, costs);
}

/// Convenience overload over an in-memory stream.
TripletOutcome run_sequential(std::span<const Sample> samples, const Calibration& cal,
                              const ModelParams& params, const CostWeights& costs,
                              std::uint64_t horizon);

}  // namespace seqjde

#endif
