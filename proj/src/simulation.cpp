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

#include "seqjde/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "seqjde/error.hpp"

namespace seqjde {

namespace {

constexpr std::uint64_t kChannelStream = 0;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t arm_stream(Hypothesis truth) noexcept { return truth == Hypothesis::H0 ? 1 : 2; }

struct RepResult {
    double amplitude = 0.0;
    TripletOutcome outcome;
};

unsigned resolve_threads(unsigned threads, std::size_t work) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(work, 1)));
}

// Runs every replication of one arm. Each replication owns its random stream,
// so the results do not depend on how replications are spread over threads.
std::vector<RepResult> simulate_arm(const ScenarioConfig& cfg, std::span<const double> gains,
                                    const Calibration& cal, unsigned threads) {
    std::vector<RepResult> results(cfg.reps);
    constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> first_failure{kNoFailure};
    std::mutex error_mutex;
    std::exception_ptr other_error;
    std::size_t other_error_rep = kNoFailure;

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t rep = begin; rep < end; ++rep) {
            try {
                ReplicationStream stream(cfg, gains, rep);
                results[rep].amplitude = stream.amplitude();
                results[rep].outcome =
                    run_sequential(stream, cal, cfg.params, cfg.costs, cfg.horizon);
            } catch (const HorizonExhausted&) {
                std::size_t current = first_failure.load();
                while (rep < current && !first_failure.compare_exchange_weak(current, rep)) {
                }
                return;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (rep < other_error_rep) {
                    other_error_rep = rep;
                    other_error = std::current_exception();
                }
                return;
            }
        }
    };

    const unsigned n_threads = resolve_threads(threads, cfg.reps);
    if (n_threads <= 1) {
        worker(0, cfg.reps);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        const std::size_t chunk = (cfg.reps + n_threads - 1) / n_threads;
        for (std::size_t begin = 0; begin < cfg.reps; begin += chunk) {
            pool.emplace_back(worker, begin, std::min(cfg.reps, begin + chunk));
        }
    }

    if (other_error && other_error_rep < first_failure.load()) {
        std::rethrow_exception(other_error);
    }
    if (const std::size_t rep = first_failure.load(); rep != kNoFailure) {
        // Rerun the lowest failing replication to recover its details.
        ReplicationStream stream(cfg, gains, rep);
        try {
            run_sequential(stream, cal, cfg.params, cfg.costs, cfg.horizon);
        } catch (const HorizonExhausted& e) {
            throw HorizonExhausted(e.samples(), e.energy(), e.threshold(), rep);
        }
    }
    return results;
}

Estimate proportion(std::size_t hits, std::size_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

// Mean and standard error of the mean, two-pass in index order.
Estimate sample_mean(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double mean = sum / n;
    if (xs.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double record_cost(const ReplicationRecord& r, const CostWeights& c) {
    if (r.arm == Hypothesis::H0) {
        return r.decision == Hypothesis::H1 ? c.false_alarm() : 0.0;
    }
    return (r.decision == Hypothesis::H0 ? c.miss() : 0.0) + c.estimation() * r.sq_error;
}

MonteCarloRun assemble(const ScenarioPair& pair, const Calibration& cal,
                       std::span<const RepResult> null_reps, std::span<const RepResult> alt_reps,
                       const DecisionRule& rule) {
    const ModelParams& p = pair.alt_arm.params;
    const CostWeights& c = pair.alt_arm.costs;
    const std::size_t n = pair.alt_arm.reps;

    MonteCarloRun run;
    run.records.reserve(2 * n);
    auto add_record = [&](std::size_t rep, Hypothesis arm, const RepResult& r) {
        ReplicationRecord rec;
        rec.rep = rep;
        rec.arm = arm;
        rec.amplitude = r.amplitude;
        rec.decision = rule(r.outcome.terminal);
        rec.log_lr = log_likelihood_ratio(r.outcome.terminal, p);
        if (rec.decision == Hypothesis::H1) {
            rec.estimate = estimate(r.outcome.terminal, p);
        }
        if (arm == Hypothesis::H1) {
            const double err = rec.estimate ? *rec.estimate - r.amplitude : r.amplitude;
            rec.sq_error = err * err;
        }
        run.records.push_back(rec);
    };
    for (std::size_t rep = 0; rep < n; ++rep) {
        add_record(rep, Hypothesis::H0, null_reps[rep]);
    }
    for (std::size_t rep = 0; rep < n; ++rep) {
        add_record(rep, Hypothesis::H1, alt_reps[rep]);
    }
    const std::span<const ReplicationRecord> null_records(run.records.data(), n);
    const std::span<const ReplicationRecord> alt_records(run.records.data() + n, n);

    std::size_t false_alarms = 0;
    std::vector<double> null_cost(n);
    for (std::size_t i = 0; i < n; ++i) {
        false_alarms += null_records[i].decision == Hypothesis::H1 ? 1 : 0;
        null_cost[i] = record_cost(null_records[i], c);
    }
    std::size_t misses = 0;
    std::vector<double> sq_d1(n);
    std::vector<double> sq_d0(n);
    std::vector<double> alt_cost(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = alt_records[i];
        const bool missed = r.decision == Hypothesis::H0;
        misses += missed ? 1 : 0;
        sq_d1[i] = missed ? 0.0 : r.sq_error;
        sq_d0[i] = missed ? r.sq_error : 0.0;
        alt_cost[i] = record_cost(r, c);
    }

    CostReport& report = run.report;
    report.reps = n;
    report.p0_d1 = proportion(false_alarms, n);
    report.p1_d0 = proportion(misses, n);
    report.mse_d1 = sample_mean(sq_d1);
    report.mse_d0 = sample_mean(sq_d0);
    report.combined.value = c.false_alarm() * report.p0_d1.value + c.miss() * report.p1_d0.value +
                            c.estimation() * (report.mse_d1.value + report.mse_d0.value);
    const Estimate null_mean = sample_mean(null_cost);
    const Estimate alt_mean = sample_mean(alt_cost);
    report.combined.std_error = std::hypot(null_mean.std_error, alt_mean.std_error);
    report.constraint = cal.constraint;
    const TripletOutcome& shared = alt_reps.empty() ? null_reps.front().outcome
                                                    : alt_reps.front().outcome;
    report.predicted = shared.predicted_cost;
    report.stop_index = shared.stop_index;
    report.energy = shared.terminal.energy;
    return run;
}

void require_matching_arms(const ScenarioPair& pair) {
    const auto& a = pair.null_arm;
    const auto& b = pair.alt_arm;
    if (a.truth != Hypothesis::H0 || b.truth != Hypothesis::H1) {
        throw InvalidParams("scenario pair must hold an H0 arm and an H1 arm");
    }
    if (!(a.params == b.params) || !(a.costs == b.costs) || !(a.channel == b.channel) ||
        a.master_seed != b.master_seed || a.horizon != b.horizon || a.reps != b.reps) {
        throw InvalidParams("scenario arms must share parameters, costs, channel, seed and horizon");
    }
    validate_scenario(a);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

std::uint64_t channel_seed(std::uint64_t master) noexcept {
    return derive_seed(master, kChannelStream, 0);
}

void validate_scenario(const ScenarioConfig& cfg) {
    if (cfg.reps < 1) {
        throw InvalidParams("reps must be at least 1");
    }
    if (cfg.horizon < 1) {
        throw InvalidParams("horizon must be at least 1");
    }
    validate_channel(cfg.channel);
}

ReplicationStream::ReplicationStream(const ScenarioConfig& cfg, std::span<const double> gains,
                                     std::size_t rep_index, std::optional<double> amplitude)
    : gains_(gains),
      noise_std_(cfg.params.noise_std()),
      rng_(derive_seed(cfg.master_seed, arm_stream(cfg.truth), rep_index)) {
    if (cfg.truth == Hypothesis::H1) {
        amplitude_ = amplitude ? *amplitude
                               : cfg.params.prior_mean() + cfg.params.prior_std() * normal_(rng_);
    } else if (amplitude && *amplitude != 0.0) {
        throw InvalidParams("the amplitude is zero under H0");
    }
}

std::optional<Sample> ReplicationStream::operator()() {
    if (position_ >= gains_.size()) {
        return std::nullopt;
    }
    const double h = gains_[position_++];
    return Sample{amplitude_ * h + noise_std_ * normal_(rng_), h};
}

Scenario sample_scenario(const ScenarioConfig& cfg, std::size_t rep_index) {
    validate_scenario(cfg);
    if (rep_index >= cfg.reps) {
        throw InvalidParams("replication index out of range");
    }
    Scenario out;
    out.gains = generate_channel(cfg.channel, channel_seed(cfg.master_seed), cfg.horizon);
    ReplicationStream stream(cfg, out.gains, rep_index);
    out.amplitude = stream.amplitude();
    out.observations.reserve(out.gains.size());
    while (const auto sample = stream()) {
        out.observations.push_back(sample->observation);
    }
    return out;
}

ScenarioPair make_scenario_pair(const ScenarioConfig& base) {
    ScenarioPair pair{base, base};
    pair.null_arm.truth = Hypothesis::H0;
    pair.alt_arm.truth = Hypothesis::H1;
    return pair;
}

std::vector<MonteCarloRun> evaluate_rules(const ScenarioPair& pair, const Calibration& cal,
                                          std::span<const DecisionRule> rules, unsigned threads) {
    require_matching_arms(pair);
    const auto& cfg = pair.alt_arm;
    const std::vector<double> gains =
        generate_channel(cfg.channel, channel_seed(cfg.master_seed), cfg.horizon);
    const auto null_reps = simulate_arm(pair.null_arm, gains, cal, threads);
    const auto alt_reps = simulate_arm(pair.alt_arm, gains, cal, threads);

    std::vector<MonteCarloRun> runs;
    runs.reserve(rules.size());
    for (const auto& rule : rules) {
        runs.push_back(assemble(pair, cal, null_reps, alt_reps, rule));
    }
    return runs;
}

MonteCarloRun monte_carlo(const ScenarioPair& pair, const Calibration& cal, unsigned threads) {
    const ModelParams p = pair.alt_arm.params;
    const CostWeights c = pair.alt_arm.costs;
    const DecisionRule joint = [p, c](const SufficientStats& s) { return decide(s, p, c); };
    return std::move(evaluate_rules(pair, cal, std::span(&joint, 1), threads).front());
}

Hypothesis separate_decide(const SufficientStats& s, const ModelParams& p, const CostWeights& c) {
    if (c.false_alarm() <= 0.0 || c.miss() <= 0.0) {
        throw InvalidCosts("invalid costs: the likelihood ratio test needs c0 > 0 and c1 > 0");
    }
    // Same arithmetic as decide() with ce = 0, so the two agree exactly there.
    return std::log(c.false_alarm()) <= log_likelihood_ratio(s, p) + std::log(c.miss())
               ? Hypothesis::H1
               : Hypothesis::H0;
}

SchemeComparison compare_schemes(const ScenarioPair& pair, const Calibration& cal,
                                 unsigned threads) {
    const ModelParams p = pair.alt_arm.params;
    const CostWeights c = pair.alt_arm.costs;
    separate_decide(initial_stats(), p, c);  // validates the weights up front
    const std::vector<DecisionRule> rules = {
        [p, c](const SufficientStats& s) { return decide(s, p, c); },
        [p, c](const SufficientStats& s) { return separate_decide(s, p, c); },
    };
    auto runs = evaluate_rules(pair, cal, rules, threads);

    SchemeComparison cmp;
    cmp.joint = std::move(runs[0]);
    cmp.separate = std::move(runs[1]);
    cmp.difference = cmp.joint.report.combined.value - cmp.separate.report.combined.value;
    cmp.pooled_std_error =
        std::hypot(cmp.joint.report.combined.std_error, cmp.separate.report.combined.std_error);

    const std::size_t n = pair.alt_arm.reps;
    std::vector<double> null_diff(n);
    std::vector<double> alt_diff(n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const auto& j = cmp.joint.records[i];
        const auto& s = cmp.separate.records[i];
        cmp.disagreements += j.decision != s.decision ? 1 : 0;
        (i < n ? null_diff[i] : alt_diff[i - n]) = record_cost(j, c) - record_cost(s, c);
    }
    cmp.paired_std_error =
        std::hypot(sample_mean(null_diff).std_error, sample_mean(alt_diff).std_error);
    return cmp;
}

}  // namespace seqjde
