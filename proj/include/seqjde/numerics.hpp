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

#ifndef SEQJDE_NUMERICS_HPP
#define SEQJDE_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>

namespace seqjde::numerics {

/// Standard normal density.
inline double normal_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

/// Standard normal cdf via erfc; keeps full relative precision in the lower
/// tail, so Phi(-z) is accurate for large z.
inline double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;       ///< estimated absolute error
    std::size_t intervals = 0;
    bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below abs_tol or max_intervals is reached. The initial
/// partition has `initial_pieces` equal subintervals.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals = 20000,
                                    std::size_t initial_pieces = 16);

}  // namespace seqjde::numerics

#endif
