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

#ifndef SEQJDE_SIMULATION_HPP
#define SEQJDE_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "seqjde/engine.hpp"
#include "seqjde/margin.hpp"
#include "seqjde/model.hpp"
#include "seqjde/statistics.hpp"

namespace seqjde {

// ---------------------------------------------------------------------------
// Channel processes

struct ConstantChannel {
    double gain = 1.0;
    bool operator==(const ConstantChannel&) const = default;
};

struct GaussianChannel {
    double std_dev = 1.0;
    bool operator==(const GaussianChannel&) const = default;
};

/// Magnitude of a circular complex Gaussian with per-component std `scale`.
struct RayleighChannel {
    double scale = 1.0;
    bool operator==(const RayleighChannel&) const = default;
};

/// h_t = phi h_{t-1} + innov_std * e_t, with h_1 ~ N(0, init_std^2).
struct Ar1Channel {
    double phi = 0.0;
    double innov_std = 1.0;
    double init_std = 1.0;
    bool operator==(const Ar1Channel&) const = default;
};

/// Plain text, one gain per line; blank lines and '#' comments are skipped.
struct FileChannel {
    std::filesystem::path path;
    bool operator==(const FileChannel&) const = default;
};

using ChannelModel =
    std::variant<ConstantChannel, GaussianChannel, RayleighChannel, Ar1Channel, FileChannel>;

/// Throws InvalidParams if the channel parameters are out of range.
void validate_channel(const ChannelModel& model);

/// Deterministic gain path of length `horizon` for (model, seed). File
/// channels return at most `horizon` values.
std::vector<double> generate_channel(const ChannelModel& model, std::uint64_t seed,
                                     std::size_t horizon);

std::vector<double> read_channel_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Seeding

/// Mixes (master, stream, index) into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

/// Seed of the shared gain path; depends on the master seed only.
std::uint64_t channel_seed(std::uint64_t master) noexcept;

// ---------------------------------------------------------------------------
// Scenarios

struct ScenarioConfig {
    Hypothesis truth = Hypothesis::H1;
    ModelParams params{0.0, 1.0, 1.0};
    CostWeights costs{1.0, 1.0, 1.0};
    ChannelModel channel = ConstantChannel{};
    std::uint64_t master_seed = 0;
    std::size_t reps = 1;
    std::uint64_t horizon = 1000;
};

/// Throws InvalidParams on zero reps or horizon, or an invalid channel.
void validate_scenario(const ScenarioConfig& cfg);

/// Lazily generated observations of one replication over a shared gain path.
///
/// The amplitude is drawn first, then one noise value per sample, so a
/// prefix of the stream does not depend on how much of it is consumed.
class ReplicationStream {
  public:
    ReplicationStream(const ScenarioConfig& cfg, std::span<const double> gains,
                      std::size_t rep_index, std::optional<double> amplitude = std::nullopt);

    double amplitude() const noexcept { return amplitude_; }

    std::optional<Sample> operator()();

  private:
    std::span<const double> gains_;
    double noise_std_;
    double amplitude_ = 0.0;
    std::size_t position_ = 0;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct Scenario {
    double amplitude = 0.0;
    std::vector<double> observations;
    std::vector<double> gains;
};

/// Materializes replication `rep_index` over the full horizon. The gains
/// depend only on (channel, master_seed); amplitude and noise depend on the
/// replication and the arm.
Scenario sample_scenario(const ScenarioConfig& cfg, std::size_t rep_index);

/// Null and alternative configurations that share everything but the truth.
struct ScenarioPair {
    ScenarioConfig null_arm;
    ScenarioConfig alt_arm;
};

ScenarioPair make_scenario_pair(const ScenarioConfig& base);

// ---------------------------------------------------------------------------
// Monte Carlo cost estimation

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Plug-in estimates of every term of the combined cost for one decision rule,
/// conditional on the shared gain path.
struct CostReport {
    std::size_t reps = 0;
    Estimate p0_d1;     ///< P0(d = 1)
    Estimate p1_d0;     ///< P1(d = 0)
    Estimate mse_d1;    ///< E1[(xhat - x)^2 ; d = 1]
    Estimate mse_d0;    ///< E1[x^2 ; d = 0]
    Estimate combined;  ///< c0 p0_d1 + c1 p1_d0 + ce (mse_d1 + mse_d0)
    double predicted = 0.0;
    double constraint = 0.0;
    std::uint64_t stop_index = 0;
    double energy = 0.0;  ///< U_T shared by every replication
};

/// One replication's outcome under one rule.
struct ReplicationRecord {
    std::size_t rep = 0;
    Hypothesis arm = Hypothesis::H0;
    double amplitude = 0.0;
    Hypothesis decision = Hypothesis::H0;
    std::optional<double> estimate;
    double sq_error = 0.0;  ///< (xhat - x)^2 if d = 1, x^2 if d = 0 (H1 arm only)
    double log_lr = 0.0;
};

struct MonteCarloRun {
    CostReport report;
    std::vector<ReplicationRecord> records;  ///< H0 arm first, each in replication order
};

/// A decision rule applied at the stopping time to the terminal statistics.
using DecisionRule = std::function<Hypothesis(const SufficientStats&)>;

/// Runs the calibrated triplet on every replication of both arms.
///
/// Results are bit-identical for any `threads` value. Throws
/// HorizonExhausted carrying the lowest failing replication index.
MonteCarloRun monte_carlo(const ScenarioPair& pair, const Calibration& cal, unsigned threads = 1);

/// Cost reports of several decision rules sharing stopping time, estimator
/// and random draws. Returns one run per rule.
std::vector<MonteCarloRun> evaluate_rules(const ScenarioPair& pair, const Calibration& cal,
                                          std::span<const DecisionRule> rules,
                                          unsigned threads = 1);

/// Likelihood ratio test that ignores the estimation cost: H1 iff
/// log L >= ln(c0/c1). Throws InvalidCosts if c0 or c1 is zero.
Hypothesis separate_decide(const SufficientStats& s, const ModelParams& p, const CostWeights& c);

struct SchemeComparison {
    MonteCarloRun joint;
    MonteCarloRun separate;
    double difference = 0.0;         ///< joint.combined - separate.combined
    double pooled_std_error = 0.0;   ///< sqrt(se_joint^2 + se_separate^2)
    double paired_std_error = 0.0;   ///< from per-replication cost differences
    std::size_t disagreements = 0;   ///< replications where the decisions differ
};

/// Joint (estimation-aware) versus separate (plain LRT) decisions on the same
/// replications.
SchemeComparison compare_schemes(const ScenarioPair& pair, const Calibration& cal,
                                 unsigned threads = 1);

}  // namespace seqjde

#endif
