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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqjde/cli/commands.hpp"
#include "seqjde/engine.hpp"
#include "seqjde/margin.hpp"
#include "seqjde/simulation.hpp"

using namespace seqjde;

namespace {

constexpr std::size_t kReps = 100000;
constexpr std::uint64_t kHorizon = 10000;

struct Config {
    ModelParams params;
    CostWeights costs;
};

const Config kReference{ModelParams(0, 1, 1), CostWeights(1, 1, 1)};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            detail = what;
        }
        ok = ok && cond;
    }
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ScenarioConfig scenario(const Config& cfg, ChannelModel channel, std::uint64_t seed) {
    ScenarioConfig sc;
    sc.params = cfg.params;
    sc.costs = cfg.costs;
    sc.channel = channel;
    sc.master_seed = seed;
    sc.reps = kReps;
    sc.horizon = kHorizon;
    return sc;
}

Estimate sample_mean(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

// 1. Closed forms at zero energy and the detection-only root.
Check exact_closed_forms() {
    Check chk;
    const Config configs[] = {
        {ModelParams(0, 1, 1), CostWeights(1, 1, 1)},
        {ModelParams(1, 1, 1), CostWeights(2, 0.5, 1)},
        {ModelParams(0.5, 1, 1.5), CostWeights(1, 0.5, 0)},
        {ModelParams(-2, 0.5, 3), CostWeights(0.3, 1, 0)},
        {ModelParams(0.7, 2, 0.5), CostWeights(4, 1, 0)},
        {ModelParams(1, 1, 1), CostWeights(1, 0.2, 5)},
    };
    int detection_only = 0;
    for (const auto& [p, c] : configs) {
        const auto empty = initial_stats();
        chk.require(log_likelihood_ratio(empty, p) == 0.0, "logL at empty history");
        chk.require(estimate(empty, p) == p.prior_mean(), "estimate at empty history");
        const double mu = p.prior_mean();
        const double expect = std::min(c.false_alarm() - c.miss() - c.estimation() * mu * mu, 0.0);
        chk.require(std::abs(expected_margin(0.0, p, c) - expect) <= 1e-12, "G(0)");
        if (c.estimation() == 0.0) {
            ++detection_only;
            for (double u : {0.0, 0.1, 1.0, 10.0, 100.0, 1e4}) {
                const double closed = boundary_root(u, p, c);
                const double bisected = detail::boundary_root_bisection(u, p, c);
                chk.require(std::abs(closed - bisected) <= 1e-9,
                            fmt("g closed form vs bisection at U=%g: %.3g", u, closed - bisected));
            }
        }
    }
    chk.require(detection_only >= 3, "too few detection-only configs");
    if (chk.ok) {
        chk.detail = "6 configs";
    }
    return chk;
}

// 2. Closed-form margin against adaptive quadrature of its definition.
Check oracle_equivalence() {
    Check chk;
    const Config configs[] = {kReference,
                              {ModelParams(1, 1, 1), CostWeights(2, 0.5, 1)},
                              {ModelParams(0.5, 1, 1.5), CostWeights(1, 0.5, 0)}};
    double worst = 0.0;
    for (const auto& [p, c] : configs) {
        for (double u : {0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0}) {
            const double diff =
                std::abs(expected_margin(u, p, c) - expected_margin_quadrature(u, p, c, 1e-10));
            worst = std::max(worst, diff);
        }
    }
    chk.require(worst <= 1e-7, fmt("max |diff| %.3g", worst));
    if (chk.ok) {
        chk.detail = fmt("max |diff| %.3g", worst);
    }
    return chk;
}

// 3. Monotonicity, limit at large energy, whole-line identity.
Check margin_shape() {
    Check chk;
    const Config configs[] = {kReference,
                              {ModelParams(1, 1, 1), CostWeights(2, 0.5, 1)},
                              {ModelParams(0.7, 1, 1), CostWeights(0.5, 1, 1)}};
    int identity_points = 0;
    for (const auto& [p, c] : configs) {
        double prev = INFINITY;
        for (int i = 0; i < 50; ++i) {
            const double u = 1e-3 * std::pow(1e7, i / 49.0);
            const double m = expected_margin(u, p, c);
            chk.require(m < prev, fmt("not strictly decreasing at U=%g", u));
            prev = m;
            if (boundary_root(u, p, c) <= 0.0) {
                ++identity_points;
                const double mu = p.prior_mean();
                const double whole =
                    c.false_alarm() - c.miss() -
                    c.estimation() * (mu * mu + p.prior_variance() * u / (u + p.variance_ratio()));
                chk.require(std::abs(m - whole) <= 1e-10, fmt("whole-line identity at U=%g", u));
            }
        }
        const double far = expected_margin(1e8, p, c);
        const double limit = margin_limits(p, c).at_infinity;
        chk.require(std::abs(far - limit) <= 1e-3, fmt("G(1e8) - limit = %.3g", far - limit));
    }
    chk.require(identity_points > 0, "whole-line regime never reached");
    if (chk.ok) {
        chk.detail = fmt("whole-line identity checked at %d points", identity_points);
    }
    return chk;
}

// 4. Threshold calibration residual and ordering.
Check calibration() {
    Check chk;
    const auto& [p, c] = kReference;
    double prev = 0.0;
    double worst = 0.0;
    for (double C : {1.9, 1.5, 1.0, 0.5}) {
        const auto cal = solve_threshold(C, p, c);
        if (!cal.threshold()) {
            chk.require(false, fmt("C=%g did not calibrate", C));
            continue;
        }
        const double gamma = *cal.threshold();
        const double residual =
            std::abs(expected_margin(gamma, p, c) - (C - cost_offset(p, c)));
        worst = std::max(worst, residual);
        chk.require(gamma > prev, fmt("gamma not antitone at C=%g", C));
        prev = gamma;
    }
    chk.require(worst <= 1e-9, fmt("residual %.3g", worst));
    if (chk.ok) {
        chk.detail = fmt("max residual %.3g", worst);
    }
    return chk;
}

// 5. Under H0 the likelihood ratio at the stopping time has mean one.
Check martingale() {
    Check chk;
    // kappa = 4 keeps U_T below kappa, where exp(logL_T) has finite variance.
    const Config cfg{ModelParams(0, 1, 2), CostWeights(1, 1, 1)};
    const auto cal = solve_threshold(1.7, cfg.params, cfg.costs);
    const ChannelModel channels[] = {ConstantChannel{1.0},
                                     Ar1Channel{0.9, 0.5, 0.5 / std::sqrt(0.19)}};
    std::string summary;
    for (const auto& channel : channels) {
        const auto run = monte_carlo(make_scenario_pair(scenario(cfg, channel, 2026)), cal);
        chk.require(run.report.energy < cfg.params.variance_ratio(), "U_T reached kappa");
        std::vector<double> ratio(kReps);
        for (std::size_t i = 0; i < kReps; ++i) {
            ratio[i] = std::exp(run.records[i].log_lr);
        }
        const auto m = sample_mean(ratio);
        chk.require(std::abs(m.value - 1.0) <= 3.0 * m.std_error,
                    fmt("mean %.5f se %.5f", m.value, m.std_error));
        summary += fmt("%smean %.5f se %.5f", summary.empty() ? "" : "; ", m.value, m.std_error);
    }
    if (chk.ok) {
        chk.detail = summary;
    }
    return chk;
}

// 6. MSE on acceptance equals posterior variance times detection rate.
Check mse_identity() {
    Check chk;
    const auto& [p, c] = kReference;
    const auto cal = solve_threshold(1.5, p, c);
    const auto run = monte_carlo(make_scenario_pair(scenario(kReference, ConstantChannel{1.0}, 11)), cal);
    const double post_var = p.noise_variance() / (run.report.energy + p.variance_ratio());
    std::vector<double> diff;
    diff.reserve(kReps);
    for (std::size_t i = kReps; i < 2 * kReps; ++i) {
        const auto& r = run.records[i];
        diff.push_back(r.decision == Hypothesis::H1 ? r.sq_error - post_var : 0.0);
    }
    const auto d = sample_mean(diff);
    chk.require(std::abs(d.value) <= 3.0 * d.std_error,
                fmt("difference %.3g se %.3g", d.value, d.std_error));
    if (chk.ok) {
        chk.detail = fmt("difference %.3g se %.3g", d.value, d.std_error);
    }
    return chk;
}

// 7. Combined cost meets the constraint and matches its prediction.
Check constraint_met() {
    Check chk;
    const auto& [p, c] = kReference;
    const double C = 1.5;
    const auto cal = solve_threshold(C, p, c);
    const ChannelModel channels[] = {ConstantChannel{1.0}, GaussianChannel{1.0},
                                     RayleighChannel{1.0}, Ar1Channel{0.9, std::sqrt(0.19), 1.0}};
    std::string summary;
    for (const auto& channel : channels) {
        const auto r = monte_carlo(make_scenario_pair(scenario(kReference, channel, 3)), cal).report;
        const auto& cost = r.combined;
        chk.require(cost.value <= C + 3.0 * cost.std_error,
                    fmt("cost %.5f exceeds C, se %.5f", cost.value, cost.std_error));
        chk.require(std::abs(cost.value - r.predicted) <= 3.0 * cost.std_error,
                    fmt("cost %.5f predicted %.5f se %.5f", cost.value, r.predicted, cost.std_error));
        summary += fmt("%s%.4f/%.4f", summary.empty() ? "cost/predicted " : ", ", cost.value,
                       r.predicted);
    }
    if (chk.ok) {
        chk.detail = summary;
    }
    return chk;
}

// 8. Joint scheme beats the separate scheme; they coincide without estimation cost.
Check joint_vs_separate() {
    Check chk;
    const Config joint_cfg{ModelParams(1, 1, 1), CostWeights(1, 0.2, 5)};
    const auto cal = solve_threshold(3.0, joint_cfg.params, joint_cfg.costs);
    const auto cmp =
        compare_schemes(make_scenario_pair(scenario(joint_cfg, ConstantChannel{1.0}, 5)), cal);
    chk.require(-cmp.difference > 3.0 * cmp.pooled_std_error,
                fmt("difference %.5f pooled se %.5f", cmp.difference, cmp.pooled_std_error));

    const Config detect{ModelParams(1, 1, 1), CostWeights(1, 0.2, 0)};
    const auto dcal = solve_threshold(0.15, detect.params, detect.costs);
    const auto same =
        compare_schemes(make_scenario_pair(scenario(detect, ConstantChannel{1.0}, 5)), dcal);
    chk.require(same.disagreements == 0, fmt("%zu disagreements", same.disagreements));
    chk.require(same.difference == 0.0, "nonzero difference without estimation cost");
    if (chk.ok) {
        chk.detail = fmt("difference %.5f pooled se %.5f", cmp.difference, cmp.pooled_std_error);
    }
    return chk;
}

// 9. The stopping time ignores the observations.
Check adaptedness() {
    Check chk;
    const auto& [p, c] = kReference;
    const auto cal = solve_threshold(1.2, p, c);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Sample> a(400);
        for (auto& s : a) {
            s = {normal(rng), normal(rng)};
        }
        std::vector<Sample> b = a;
        for (auto& s : b) {
            s.observation = 10.0 * normal(rng);
        }
        const auto oa = run_sequential(a, cal, p, c, 400);
        const auto ob = run_sequential(b, cal, p, c, 400);
        chk.require(oa.stop_index == ob.stop_index && oa.terminal.energy == ob.terminal.energy,
                    fmt("trial %d differs", trial));
    }
    if (chk.ok) {
        chk.detail = "100 trials";
    }
    return chk;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 10. Montecarlo output bytes do not depend on the worker count.
Check determinism() {
    Check chk;
    const auto dir = std::filesystem::temp_directory_path() / "seqjde_acceptance";
    std::filesystem::create_directories(dir);
    const auto config = dir / "config.json";
    std::ofstream(config) << R"({
        "model": {"mu_x": 0, "sigma_x": 1, "sigma": 1},
        "costs": {"c0": 1, "c1": 1, "ce": 1},
        "constraint_C": 1.5,
        "channel": {"type": "rayleigh", "scale": 1},
        "mc": {"reps": 100000, "master_seed": 7, "t_max": 10000}
    })";

    std::string first_json;
    std::string first_csv;
    for (unsigned threads : {1u, 4u, 8u}) {
        cli::CommandOptions opts;
        opts.config = config;
        opts.out = dir / ("run" + std::to_string(threads) + ".json");
        opts.threads = threads;
        std::ostringstream err;
        const int code = cli::cmd_montecarlo(opts, err);
        chk.require(code == cli::kExitOk, "montecarlo failed: " + err.str());
        const auto json_bytes = slurp(opts.out);
        const auto csv_bytes = slurp(cli::companion_path(opts.out, ".reps.csv"));
        if (threads == 1) {
            first_json = json_bytes;
            first_csv = csv_bytes;
        } else {
            chk.require(json_bytes == first_json && csv_bytes == first_csv,
                        fmt("output differs with %u threads", threads));
        }
    }
    if (chk.ok) {
        chk.detail = fmt("%zu bytes identical for 1, 4, 8 threads",
                         first_json.size() + first_csv.size());
    }
    return chk;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Check()>> criteria[] = {
        {"AC1  exact closed forms", exact_closed_forms},
        {"AC2  closed form vs quadrature", oracle_equivalence},
        {"AC3  margin shape and limits", margin_shape},
        {"AC4  threshold calibration", calibration},
        {"AC5  likelihood ratio martingale", martingale},
        {"AC6  MSE identity", mse_identity},
        {"AC7  combined cost constraint", constraint_met},
        {"AC8  joint vs separate", joint_vs_separate},
        {"AC9  stopping time adaptedness", adaptedness},
        {"AC10 thread-count determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check chk;
        try {
            chk = run();
        } catch (const std::exception& e) {
            chk.ok = false;
            chk.detail = std::string("exception: ") + e.what();
        }
        failures += chk.ok ? 0 : 1;
        std::printf("[%s] %s: %s\n", chk.ok ? "PASS" : "FAIL", name, chk.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
