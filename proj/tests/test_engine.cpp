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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "seqjde/engine.hpp"
#include "seqjde/error.hpp"

using namespace seqjde;

namespace {

const ModelParams kParams(0, 1, 1);
const CostWeights kCosts(1, 1, 1);

Calibration fixed_threshold(double gamma) {
    return Calibration{1.5, ObserveRegime{gamma}};
}

std::vector<Sample> samples(const std::vector<double>& gains, double x, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<Sample> out;
    for (double h : gains) {
        out.push_back({x * h + noise(rng), h});
    }
    return out;
}

}  // namespace

TEST_SUITE("engine") {
    TEST_CASE("constant gain stops at the first crossing") {
        const auto s = samples(std::vector<double>(10, 1.0), 0.3, 1);
        const auto out = run_sequential(s, fixed_threshold(3.2), kParams, kCosts, 100);
        CHECK(out.stop_index == 4);
        CHECK(out.terminal.energy == 4.0);
        CHECK(out.terminal.count == 4);
        double v = 0.0;
        for (int i = 0; i < 4; ++i) {
            v += s[i].observation;
        }
        CHECK(out.terminal.correlation == doctest::Approx(v).epsilon(1e-15));
        CHECK(out.log_lr == log_likelihood_ratio(out.terminal, kParams));
        CHECK(out.decision == decide(out.terminal, kParams, kCosts));
        CHECK(out.estimate.has_value() == (out.decision == Hypothesis::H1));
        if (out.estimate) {
            CHECK(*out.estimate == estimate(out.terminal, kParams));
        }
    }

    TEST_CASE("zero gains do not advance the energy") {
        const auto s = samples({2.0, 0.0, 0.0, 1.0, 1.0}, 0.0, 2);
        const auto out = run_sequential(s, fixed_threshold(4.5), kParams, kCosts, 100);
        CHECK(out.stop_index == 4);
        CHECK(out.terminal.energy == 5.0);
    }

    TEST_CASE("stop at zero reads nothing") {
        const auto cal = solve_threshold(2.5, kParams, kCosts);
        int calls = 0;
        const auto out = run_sequential(
            [&]() -> std::optional<Sample> {
                ++calls;
                return Sample{0.0, 1.0};
            },
            cal, kParams, kCosts, 10);
        CHECK(calls == 0);
        CHECK(out.stop_index == 0);
        CHECK(out.decision == Hypothesis::H1);
        CHECK(out.estimate == 0.0);
        CHECK(out.predicted_cost == doctest::Approx(2.0));
    }

    TEST_CASE("horizon exhausted") {
        const auto s = samples(std::vector<double>(5, 0.1), 0.0, 3);
        try {
            run_sequential(s, fixed_threshold(1.0), kParams, kCosts, 3);
            FAIL("expected HorizonExhausted");
        } catch (const HorizonExhausted& e) {
            CHECK(e.samples() == 3);
            CHECK(e.energy() == doctest::Approx(0.03));
            CHECK(e.threshold() == 1.0);
        }
        // Stream shorter than the horizon.
        CHECK_THROWS_AS(run_sequential(s, fixed_threshold(1.0), kParams, kCosts, 100),
                        HorizonExhausted);
        CHECK_THROWS_AS(run_sequential(s, fixed_threshold(1.0), kParams, kCosts, 0), InvalidParams);
    }

    TEST_CASE("predicted cost") {
        CHECK(predicted_cost(0.0, kParams, kCosts) == doctest::Approx(2.0));
        const auto cal = solve_threshold(1.5, kParams, kCosts);
        const double gamma = *cal.threshold();
        CHECK(predicted_cost(gamma, kParams, kCosts) == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(predicted_cost(gamma * 1.5, kParams, kCosts) < 1.5);
        CHECK(predicted_cost(1e6, kParams, kCosts) > 0.0);
    }

    TEST_CASE("stopping time depends only on the gains") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> gain(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> gains(200);
            for (auto& h : gains) {
                h = gain(rng);
            }
            const auto a = samples(gains, 0.0, 100 + trial);
            const auto b = samples(gains, 3.0, 900 + trial);
            const auto oa = run_sequential(a, fixed_threshold(7.0), kParams, kCosts, 200);
            const auto ob = run_sequential(b, fixed_threshold(7.0), kParams, kCosts, 200);
            CHECK(oa.stop_index == ob.stop_index);
            CHECK(oa.terminal.energy == ob.terminal.energy);

            // First crossing: the energy before the last sample is below threshold.
            double before = 0.0;
            for (std::uint64_t i = 0; i + 1 < oa.stop_index; ++i) {
                before += gains[i] * gains[i];
            }
            CHECK(before < 7.0);
            CHECK(oa.terminal.energy >= 7.0);
        }
    }

    TEST_CASE("step observer sees every sample") {
        const auto s = samples(std::vector<double>(10, 1.0), 0.0, 5);
        std::vector<double> energies;
        run_sequential(
            [&, i = std::size_t{0}]() mutable -> std::optional<Sample> { return s[i++]; },
            fixed_threshold(3.0), kParams, kCosts, 100,
            [&](const Sample&, const SufficientStats& st) { energies.push_back(st.energy); });
        CHECK(energies == std::vector<double>{1.0, 2.0, 3.0});
    }
}
