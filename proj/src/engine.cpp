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

#include "seqjde/engine.hpp"

namespace seqjde {

double predicted_cost(double energy, const ModelParams& params, const CostWeights& costs) {
    return expected_margin(energy, params, costs) + cost_offset(params, costs);
}

namespace detail {

TripletOutcome finish_run(const SufficientStats& terminal, const ModelParams& params,
                          const CostWeights& costs) {
    TripletOutcome out;
    out.stop_index = terminal.count;
    out.terminal = terminal;
    out.log_lr = log_likelihood_ratio(terminal, params);
    out.decision = decide(terminal, params, costs);
    if (out.decision == Hypothesis::H1) {
        out.estimate = estimate(terminal, params);
    }
    out.predicted_cost = predicted_cost(terminal.energy, params, costs);
    return out;
}

}  // namespace detail

TripletOutcome run_sequential(std::span<const Sample> samples, const Calibration& cal,
                              const ModelParams& params, const CostWeights& costs,
                              std::uint64_t horizon) {
    std::size_t next_index = 0;
    auto next = [&]() -> std::optional<Sample> {
        if (next_index >= samples.size()) {
            return std::nullopt;
        }
        return samples[next_index++];
    };
    return run_sequential(next, cal, params, costs, horizon);
}

}  // namespace seqjde
