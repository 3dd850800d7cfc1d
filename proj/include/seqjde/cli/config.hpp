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

#ifndef SEQJDE_CLI_CONFIG_HPP
#define SEQJDE_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "seqjde/error.hpp"
#include "seqjde/model.hpp"
#include "seqjde/simulation.hpp"

namespace seqjde::cli {

class ConfigError : public Error {
  public:
    using Error::Error;
};

enum class GridSpacing { linear, log };

struct GridSpec {
    double u_min = 0.0;
    double u_max = 1.0;
    std::size_t points = 2;
    GridSpacing spacing = GridSpacing::linear;
};

struct MonteCarloSpec {
    std::size_t reps = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t horizon = 1000;
};

/// Parsed experiment configuration.
///
/// Layout:
///   { "model":   {"mu_x", "sigma_x", "sigma"},
///     "costs":   {"c0", "c1", "ce"},
///     "constraint_C": C,
///     "channel": {"type": "constant", "h"} | {"type": "iid_gaussian", "std"}
///              | {"type": "rayleigh", "scale"}
///              | {"type": "ar1", "phi", "innov_std", "init_std"}
///              | {"type": "file", "path"},
///     "mc":      {"reps", "master_seed", "t_max"},
///     "grid":    {"u_min", "u_max", "points", "spacing": "linear" | "log"} }
///
/// "grid" is optional. Unknown keys are rejected.
struct RunConfig {
    ModelParams model{0.0, 1.0, 1.0};
    CostWeights costs{1.0, 1.0, 1.0};
    double constraint = 0.0;
    ChannelModel channel = ConstantChannel{};
    MonteCarloSpec mc;
    std::optional<GridSpec> grid;
};

/// Relative file-channel paths are resolved against `base_dir`.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

std::vector<double> grid_points(const GridSpec& grid);

ScenarioConfig scenario_config(const RunConfig& cfg);

}  // namespace seqjde::cli

#endif
