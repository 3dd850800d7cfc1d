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

#include "seqjde/margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "seqjde/error.hpp"
#include "seqjde/numerics.hpp"

namespace seqjde {

namespace {

constexpr double kRootTolerance = 1e-10;
constexpr double kThresholdTolerance = 1e-10;
constexpr int kMaxBracketSteps = 2100;
constexpr int kMaxBisections = 2200;

void require_energy(double energy) {
    if (!std::isfinite(energy) || energy < 0.0) {
        throw InvalidParams("channel energy must be finite and nonnegative, got " +
                            std::to_string(energy));
    }
}

double prior_only_margin(const ModelParams& p, const CostWeights& c) noexcept {
    const double mu = p.prior_mean();
    return std::min(c.false_alarm() - c.miss() - c.estimation() * mu * mu, 0.0);
}

// Bisection on a monotone increasing function with f(lo) < 0 <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi, double tolerance) {
    for (int i = 0; i < kMaxBisections && hi - lo > tolerance; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace

namespace detail {

double boundary_log_rhs(double root, double energy, const ModelParams& p,
                        const CostWeights& c) noexcept {
    const double kappa = p.variance_ratio();
    const double total = energy + kappa;
    const double weight = c.miss() + c.estimation() * root / (total * total);
    if (!(weight > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    const double mu = p.prior_mean();
    return -0.5 * std::log1p(energy / kappa) + root / (2.0 * p.noise_variance() * total) -
           mu * mu / (2.0 * p.prior_variance()) + std::log(weight);
}

double boundary_root_bisection(double energy, const ModelParams& p, const CostWeights& c) {
    require_energy(energy);
    require_calibratable(c);
    const double log_c0 = std::log(c.false_alarm());
    auto excess = [&](double g) { return boundary_log_rhs(g, energy, p, c) - log_c0; };

    double lo = 0.0;
    double hi = 0.0;
    if (c.estimation() > 0.0) {
        // The right-hand side vanishes at the left end of its domain.
        const double total = energy + p.variance_ratio();
        lo = -total * total * c.miss() / c.estimation();
        double step = 1.0;
        hi = lo + step;
        int steps = 0;
        while (excess(hi) < 0.0) {
            if (++steps > kMaxBracketSteps) {
                throw NumericalFailure("boundary root: failed to bracket from above");
            }
            step *= 2.0;
            hi = lo + step;
        }
    } else {
        lo = -1.0;
        hi = 1.0;
        int steps = 0;
        while (excess(lo) >= 0.0 || excess(hi) < 0.0) {
            if (++steps > kMaxBracketSteps) {
                throw NumericalFailure("boundary root: failed to bracket");
            }
            if (excess(lo) >= 0.0) {
                lo *= 2.0;
            }
            if (excess(hi) < 0.0) {
                hi *= 2.0;
            }
        }
    }
    return bisect(excess, lo, hi, kRootTolerance);
}

}  // namespace detail

double boundary_root(double energy, const ModelParams& p, const CostWeights& c) {
    require_energy(energy);
    require_calibratable(c);
    if (c.estimation() > 0.0) {
        return detail::boundary_root_bisection(energy, p, c);
    }
    const double total = energy + p.variance_ratio();
    const double mu = p.prior_mean();
    return 2.0 * p.noise_variance() * total *
           (std::log(c.false_alarm() / c.miss()) + mu * mu / (2.0 * p.prior_variance()) +
            0.5 * std::log1p(energy / p.variance_ratio()));
}

DecisionRegion decision_region(double energy, const ModelParams& p, const CostWeights& c) {
    const double half_width = std::sqrt(std::max(boundary_root(energy, p, c), 0.0));
    const double shift = p.prior_mean() * p.variance_ratio();
    return {half_width + shift, half_width - shift};
}

MarginPoint margin_point(double energy, const ModelParams& p, const CostWeights& c) {
    require_energy(energy);
    require_calibratable(c);

    MarginPoint point;
    point.energy = energy;
    point.root = boundary_root(energy, p, c);
    const double half_width = std::sqrt(std::max(point.root, 0.0));
    const double mu = p.prior_mean();
    const double kappa = p.variance_ratio();
    point.lower = half_width + mu * kappa;
    point.upper = half_width - mu * kappa;

    if (energy == 0.0) {
        point.margin = prior_only_margin(p, c);
        return point;
    }

    const double c0 = c.false_alarm();
    const double c1 = c.miss();
    const double ce = c.estimation();
    const double total = energy + kappa;
    const double shrink = energy / total;
    if (point.root <= 0.0) {
        // The region is the whole line.
        point.margin = c0 - c1 - ce * (mu * mu + p.prior_variance() * shrink);
        return point;
    }

    using numerics::normal_cdf;
    using numerics::normal_pdf;

    // Under H0, V ~ N(0, sigma^2 U).
    const double null_sd = p.noise_std() * std::sqrt(energy);
    const double null_tail = normal_cdf(-point.lower / null_sd) + normal_cdf(-point.upper / null_sd);

    // Under the H1 marginal, V ~ N(mu U, sigma_x^2 U (U + kappa)); standardize
    // to z so that (V + mu kappa)/(U + kappa) = mu + a z.
    const double alt_sd = p.prior_std() * std::sqrt(energy * total);
    const double a = p.prior_std() * std::sqrt(shrink);
    const double z_left = (half_width + mu * total) / alt_sd;   // region z <= -z_left
    const double z_right = (half_width - mu * total) / alt_sd;  // region z >= z_right
    const double tail_left = normal_cdf(-z_left);
    const double tail_right = normal_cdf(-z_right);
    const double dens_left = normal_pdf(z_left);
    const double dens_right = normal_pdf(z_right);
    const double tails = tail_left + tail_right;

    // E[(mu + a z)^2 ; region] from E[z; z >= t] = pdf(t) and
    // E[z^2; z >= t] = Phi(-t) + t pdf(t).
    const double second_moment = mu * mu * tails + 2.0 * mu * a * (dens_right - dens_left) +
                                 a * a * (tails + z_left * dens_left + z_right * dens_right);

    point.margin = c0 * null_tail - c1 * tails - ce * second_moment;
    return point;
}

double expected_margin(double energy, const ModelParams& p, const CostWeights& c) {
    return margin_point(energy, p, c).margin;
}

double expected_margin_quadrature(double energy, const ModelParams& p, const CostWeights& c,
                                  double abs_tol) {
    if (!std::isfinite(energy) || energy <= 0.0) {
        throw InvalidParams("quadrature requires positive channel energy");
    }
    if (!(abs_tol > 0.0)) {
        throw InvalidParams("quadrature tolerance must be positive");
    }
    require_calibratable(c);

    const double c0 = c.false_alarm();
    const double c1 = c.miss();
    const double ce = c.estimation();
    const double mu = p.prior_mean();
    const double kappa = p.variance_ratio();
    const double total = energy + kappa;
    const double null_var = p.noise_variance() * energy;
    const double log_null_norm = -0.5 * std::log(2.0 * std::numbers::pi * null_var);
    const double log_prefactor = -0.5 * std::log1p(energy / kappa) -
                                 mu * mu / (2.0 * p.prior_variance());

    // (c0 - L(V) [c1 + ce xhat(V)^2])^- times the N(0, sigma^2 U) density,
    // with both exponents combined before exponentiating.
    auto integrand_v = [&](double v) {
        const double log_density = log_null_norm - v * v / (2.0 * null_var);
        const double shifted = v + mu * kappa;
        const double xhat = shifted / total;
        const double log_lr_density =
            log_prefactor + shifted * shifted / (2.0 * p.noise_variance() * total) + log_density;
        const double value =
            c0 * std::exp(log_density) - (c1 + ce * xhat * xhat) * std::exp(log_lr_density);
        return std::min(value, 0.0);
    };

    // Map (-1, 1) onto the real line at the wider of the two natural scales.
    const double scale = std::max(std::sqrt(null_var), p.prior_std() * std::sqrt(energy * total));
    auto integrand_t = [&](double t) {
        const double one_minus = 1.0 - t * t;
        const double v = scale * t / one_minus;
        const double jacobian = scale * (1.0 + t * t) / (one_minus * one_minus);
        const double value = integrand_v(v);
        return value == 0.0 ? 0.0 : value * jacobian;
    };
    auto to_t = [scale](double v) {
        return v == 0.0 ? 0.0 : (std::sqrt(scale * scale + 4.0 * v * v) - scale) / (2.0 * v);
    };

    // The margin depends on V only through |V + mu kappa| and decreases in it.
    // Locate its sign change numerically so that each piece is smooth.
    const double center = -mu * kappa;
    auto margin_at = [&](double offset) {
        const double xhat = offset / total;
        const double log_lr = log_prefactor + offset * offset / (2.0 * p.noise_variance() * total);
        return c0 - std::exp(log_lr) * (c1 + ce * xhat * xhat);
    };

    std::vector<std::pair<double, double>> pieces;
    if (margin_at(0.0) <= 0.0) {
        pieces.emplace_back(-1.0, 1.0);
    } else {
        double inner = 0.0;
        double outer = scale;
        while (margin_at(outer) > 0.0) {
            inner = outer;
            outer *= 2.0;
        }
        for (int i = 0; i < 400 && outer - inner > 0.0; ++i) {
            const double mid = inner + 0.5 * (outer - inner);
            if (mid <= inner || mid >= outer) {
                break;
            }
            (margin_at(mid) > 0.0 ? inner : outer) = mid;
        }
        pieces.emplace_back(-1.0, to_t(center - outer));
        pieces.emplace_back(to_t(center + outer), 1.0);
    }

    double value = 0.0;
    for (const auto& [a, b] : pieces) {
        const auto result =
            numerics::integrate_adaptive(integrand_t, a, b, abs_tol / pieces.size(), 50000, 32);
        if (!result.converged) {
            throw QuadratureNonConvergence("quadrature did not converge at U = " +
                                           std::to_string(energy) + " (error estimate " +
                                           std::to_string(result.error) + ")");
        }
        value += result.value;
    }
    return value;
}

MarginLimits margin_limits(const ModelParams& p, const CostWeights& c) noexcept {
    return {prior_only_margin(p, c), -cost_offset(p, c)};
}

Calibration solve_threshold(double constraint, const ModelParams& p, const CostWeights& c) {
    if (!std::isfinite(constraint) || constraint <= 0.0) {
        throw InfeasibleConstraint("infeasible constraint: C must be positive and finite, got " +
                                   std::to_string(constraint));
    }
    require_calibratable(c);

    Calibration cal;
    cal.constraint = constraint;
    if (constraint >= admissible_cost_bound(p, c)) {
        const double mu = p.prior_mean();
        StopAtZeroRegime stop;
        if (c.false_alarm() <= c.miss() + c.estimation() * mu * mu) {
            stop.decision = Hypothesis::H1;
            stop.estimate = mu;
        }
        cal.regime = stop;
        return cal;
    }

    const double target = constraint - cost_offset(p, c);
    auto excess = [&](double u) { return target - expected_margin(u, p, c); };

    double lo = 0.0;
    double hi = 1.0;
    int steps = 0;
    while (excess(hi) < 0.0) {
        if (++steps > kMaxBracketSteps) {
            throw NumericalFailure("threshold: failed to bracket the solution");
        }
        lo = hi;
        hi *= 2.0;
    }
    double gamma = bisect(excess, lo, hi, 0.0);
    if (std::abs(excess(gamma)) > kThresholdTolerance) {
        throw NumericalFailure("threshold: residual above tolerance at gamma = " +
                               std::to_string(gamma));
    }
    cal.regime = ObserveRegime{gamma};
    return cal;
}

}  // namespace seqjde
