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

#include <algorithm>
#include <random>

#include "seqjde/error.hpp"
#include "seqjde/margin.hpp"
#include "seqjde/model.hpp"

using namespace seqjde;

TEST_SUITE("model") {
    TEST_CASE("variance ratio is derived from the two deviations") {
        const ModelParams p(0.3, 2.0, 3.0);
        CHECK(p.variance_ratio() == doctest::Approx(9.0 / 4.0).epsilon(1e-15));
        CHECK(p.prior_variance() == 4.0);
        CHECK(p.noise_variance() == 9.0);
    }

    TEST_CASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(ModelParams(0.0, 0.0, 1.0), InvalidParams);
        CHECK_THROWS_AS(ModelParams(0.0, 1.0, -1.0), InvalidParams);
        CHECK_THROWS_AS(ModelParams(NAN, 1.0, 1.0), InvalidParams);
        CHECK_THROWS_AS(CostWeights(-1.0, 1.0, 1.0), InvalidParams);
        CHECK_THROWS_AS(CostWeights(1.0, INFINITY, 1.0), InvalidParams);
        CHECK_NOTHROW(ModelParams(-5.0, 1.0, 1.0));
        CHECK_NOTHROW(CostWeights(0.0, 0.0, 0.0));
    }

    TEST_CASE("degenerate weights are not calibratable") {
        CHECK_THROWS_AS(require_calibratable(CostWeights(0.0, 1.0, 1.0)), InvalidCosts);
        CHECK_THROWS_AS(require_calibratable(CostWeights(1.0, 0.0, 0.0)), InvalidCosts);
        CHECK_NOTHROW(require_calibratable(CostWeights(1.0, 0.0, 1.0)));
    }

    TEST_CASE("admissible cost bound") {
        CHECK(admissible_cost_bound(ModelParams(0, 1, 1), CostWeights(1, 1, 1)) == 2.0);
        CHECK(admissible_cost_bound(ModelParams(2, 1, 1), CostWeights(1, 1, 1)) == 2.0);
        CHECK(admissible_cost_bound(ModelParams(3, 2, 0.5), CostWeights(1, 1, 0)) == 1.0);
    }

    TEST_CASE("bound minus the cost offset equals the margin at zero energy") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int i = 0; i < 200; ++i) {
            const ModelParams p(u(rng) - 1.5, 0.1 + u(rng), 0.1 + u(rng));
            const CostWeights c(0.05 + u(rng), u(rng), u(rng));
            const double lhs = admissible_cost_bound(p, c) - cost_offset(p, c);
            CHECK(lhs == doctest::Approx(margin_limits(p, c).at_zero).epsilon(1e-12));
        }
    }
}
