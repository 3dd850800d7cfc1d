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

#ifndef SEQJDE_MARGIN_HPP
#define SEQJDE_MARGIN_HPP

#include <optional>
#include <variant>

#include "seqjde/model.hpp"

namespace seqjde {

/// Rejection region of the decision margin at fixed channel energy U: the
/// margin is nonpositive for V <= -lower or V >= upper.
struct DecisionRegion {
    double lower = 0.0;
    double upper = 0.0;
};

/// Everything the threshold calibration knows about one energy level.
struct MarginPoint {
    double energy = 0.0;
    double root = 0.0;    ///< boundary root; may be negative
    double lower = 0.0;
    double upper = 0.0;
    double margin = 0.0;  ///< expected negative part of the decision margin under H0
};

struct MarginLimits {
    double at_zero = 0.0;
    double at_infinity = 0.0;
};

struct ObserveRegime {
    double threshold = 0.0;  ///< stop at the first t with U_t >= threshold
};

/// The constraint is met without observing: decide from the prior alone.
struct StopAtZeroRegime {
    Hypothesis decision = Hypothesis::H0;
    std::optional<double> estimate;  ///< prior mean when the decision is H1
};

struct Calibration {
    double constraint = 0.0;
    std::variant<ObserveRegime, StopAtZeroRegime> regime;

    bool observes() const noexcept { return std::holds_alternative<ObserveRegime>(regime); }

    std::optional<double> threshold() const noexcept {
        if (const auto* observe = std::get_if<ObserveRegime>(&regime)) {
            return observe->threshold;
        }
        return std::nullopt;
    }
};

/// Root g(U) of the decision-boundary equation
///
///   c0 = sqrt(kappa/(U+kappa)) * exp(g/(2 sigma^2 (U+kappa)) - mu^2/(2 sigma_x^2))
///        * [c1 + ce * g/(U+kappa)^2],
///
/// where g stands in for (V + mu*kappa)^2 and is allowed to be negative.
/// Uses the closed form when ce = 0, bisection otherwise.
///
/// Throws InvalidCosts for degenerate weights and InvalidParams for U < 0.
double boundary_root(double energy, const ModelParams& params, const CostWeights& costs);

/// Decision region endpoints: lower = sqrt(g+) + mu*kappa, upper = sqrt(g+) - mu*kappa.
DecisionRegion decision_region(double energy, const ModelParams& params,
                               const CostWeights& costs);

/// Expected negative part of the decision margin c0 - L*(c1 + ce*xhat^2)
/// when V ~ N(0, sigma^2 U), evaluated in closed form from Gaussian tail
/// probabilities and truncated moments. Exact Dirac limit at U = 0.
double expected_margin(double energy, const ModelParams& params, const CostWeights& costs);

MarginPoint margin_point(double energy, const ModelParams& params, const CostWeights& costs);

/// The same quantity by adaptive quadrature of the defining integral; kept
/// as an independent cross-check of expected_margin. Requires U > 0.
///
/// Throws QuadratureNonConvergence when the refinement budget runs out
/// before the absolute tolerance is met.
double expected_margin_quadrature(double energy, const ModelParams& params,
                                  const CostWeights& costs, double abs_tol);

/// Value at U = 0 and the limit as U grows without bound.
MarginLimits margin_limits(const ModelParams& params, const CostWeights& costs) noexcept;

/// Calibrates the stopping threshold for combined-cost constraint C.
///
/// Below admissible_cost_bound the threshold solves
/// expected_margin(gamma) = C - c1 - ce*(mu^2 + sigma_x^2) to 1e-10; at or
/// above it the prior-only decision is returned.
///
/// Throws InfeasibleConstraint for C <= 0 and InvalidCosts for degenerate weights.
Calibration solve_threshold(double constraint, const ModelParams& params,
                            const CostWeights& costs);

namespace detail {

/// Log of the boundary equation's right-hand side; -inf where the bracketed
/// weight is nonpositive.
double boundary_log_rhs(double root, double energy, const ModelParams& params,
                        const CostWeights& costs) noexcept;

/// Bracketing bisection for the boundary root, valid for every admissible
/// weight combination including ce = 0.
double boundary_root_bisection(double energy, const ModelParams& params,
                               const CostWeights& costs);

}  // namespace detail

}  // namespace seqjde

#endif
