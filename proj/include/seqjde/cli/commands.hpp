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

#ifndef SEQJDE_CLI_COMMANDS_HPP
#define SEQJDE_CLI_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "seqjde/model.hpp"

namespace seqjde::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitHorizon = 4,
};

struct CommandOptions {
    std::filesystem::path config;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;  ///< overrides mc.master_seed
    std::optional<std::size_t> reps;    ///< overrides mc.reps
    unsigned threads = 0;               ///< 0 = hardware concurrency
    Hypothesis truth = Hypothesis::H1;
    std::optional<double> amplitude;    ///< simulate: fixed x under H1
    std::optional<double> threshold;    ///< simulate: bypass calibration
    std::optional<std::filesystem::path> table;  ///< companion CSV path
};

/// Writes {regime, gamma?, C, C_max, G_at_gamma?, target} as JSON.
int cmd_calibrate(const CommandOptions& opts, std::ostream& err);

/// Writes `U,g,V1,V2,G,G_quadrature,abs_diff` over the configured grid.
int cmd_gtable(const CommandOptions& opts, std::ostream& err);

/// One replication: outcome JSON plus a per-step trace CSV
/// `t,h,y,U,V,logL,xhat` (default: <out>.trace.csv).
int cmd_simulate(const CommandOptions& opts, std::ostream& err);

/// Cost report JSON plus per-replication CSV
/// `rep,arm,x,decision,estimate,sq_err` (default: <out>.reps.csv).
int cmd_montecarlo(const CommandOptions& opts, std::ostream& err);

/// Joint and separate cost reports and their difference.
int cmd_compare(const CommandOptions& opts, std::ostream& err);

/// Round-trippable decimal with 17 significant digits.
std::string format_number(double x);

/// `out` with its extension replaced by `suffix`, e.g. run.json -> run.trace.csv.
std::filesystem::path companion_path(const std::filesystem::path& out, const std::string& suffix);

}  // namespace seqjde::cli

#endif
