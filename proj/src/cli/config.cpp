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

#include "seqjde/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>

namespace seqjde::cli {

namespace {

using nlohmann::json;

void require_object(const json& node, std::string_view where) {
    if (!node.is_object()) {
        throw ConfigError("config: '" + std::string(where) + "' must be an object");
    }
}

void reject_unknown(const json& node, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& item : node.items()) {
        bool known = false;
        for (auto key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ConfigError("config: unknown key '" + item.key() + "' in '" +
                              std::string(where) + "'");
        }
    }
}

const json& member(const json& node, std::string_view where, const char* key) {
    const auto it = node.find(key);
    if (it == node.end()) {
        throw ConfigError("config: missing key '" + std::string(key) + "' in '" +
                          std::string(where) + "'");
    }
    return *it;
}

double number(const json& node, std::string_view where, const char* key) {
    const json& v = member(node, where, key);
    if (!v.is_number()) {
        throw ConfigError("config: '" + std::string(where) + "." + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError("config: '" + std::string(where) + "." + key + "' must be finite");
    }
    return x;
}

std::uint64_t count(const json& node, std::string_view where, const char* key) {
    const json& v = member(node, where, key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError("config: '" + std::string(where) + "." + key +
                          "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string text(const json& node, std::string_view where, const char* key) {
    const json& v = member(node, where, key);
    if (!v.is_string()) {
        throw ConfigError("config: '" + std::string(where) + "." + key + "' must be a string");
    }
    return v.get<std::string>();
}

ChannelModel parse_channel(const json& node, const std::filesystem::path& base_dir) {
    require_object(node, "channel");
    const std::string type = text(node, "channel", "type");
    if (type == "constant") {
        reject_unknown(node, "channel", {"type", "h"});
        return ConstantChannel{number(node, "channel", "h")};
    }
    if (type == "iid_gaussian") {
        reject_unknown(node, "channel", {"type", "std"});
        return GaussianChannel{number(node, "channel", "std")};
    }
    if (type == "rayleigh") {
        reject_unknown(node, "channel", {"type", "scale"});
        return RayleighChannel{number(node, "channel", "scale")};
    }
    if (type == "ar1") {
        reject_unknown(node, "channel", {"type", "phi", "innov_std", "init_std"});
        return Ar1Channel{number(node, "channel", "phi"), number(node, "channel", "innov_std"),
                          number(node, "channel", "init_std")};
    }
    if (type == "file") {
        reject_unknown(node, "channel", {"type", "path"});
        std::filesystem::path path = text(node, "channel", "path");
        if (path.is_relative() && !base_dir.empty()) {
            path = base_dir / path;
        }
        return FileChannel{path};
    }
    throw ConfigError("config: unknown channel type '" + type + "'");
}

GridSpec parse_grid(const json& node) {
    require_object(node, "grid");
    reject_unknown(node, "grid", {"u_min", "u_max", "points", "spacing"});
    GridSpec grid;
    grid.u_min = number(node, "grid", "u_min");
    grid.u_max = number(node, "grid", "u_max");
    grid.points = count(node, "grid", "points");
    const std::string spacing = node.contains("spacing") ? text(node, "grid", "spacing") : "linear";
    if (spacing == "linear") {
        grid.spacing = GridSpacing::linear;
    } else if (spacing == "log") {
        grid.spacing = GridSpacing::log;
    } else {
        throw ConfigError("config: grid.spacing must be 'linear' or 'log'");
    }
    if (grid.u_min < 0.0 || grid.u_max < grid.u_min) {
        throw ConfigError("config: grid requires 0 <= u_min <= u_max");
    }
    if (grid.points < 1 || (grid.points > 1 && grid.u_max == grid.u_min)) {
        throw ConfigError("config: grid needs at least one point over a nonempty range");
    }
    if (grid.spacing == GridSpacing::log && grid.u_min <= 0.0) {
        throw ConfigError("config: log grid requires u_min > 0");
    }
    return grid;
}

}  // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "<root>");
    reject_unknown(doc, "<root>", {"model", "costs", "constraint_C", "channel", "mc", "grid"});
    try {
        const json& model = member(doc, "<root>", "model");
        require_object(model, "model");
        reject_unknown(model, "model", {"mu_x", "sigma_x", "sigma"});
        const json& costs = member(doc, "<root>", "costs");
        require_object(costs, "costs");
        reject_unknown(costs, "costs", {"c0", "c1", "ce"});
        const json& mc = member(doc, "<root>", "mc");
        require_object(mc, "mc");
        reject_unknown(mc, "mc", {"reps", "master_seed", "t_max"});

        RunConfig cfg;
        cfg.model = ModelParams(number(model, "model", "mu_x"), number(model, "model", "sigma_x"),
                                number(model, "model", "sigma"));
        cfg.costs = CostWeights(number(costs, "costs", "c0"), number(costs, "costs", "c1"),
                                number(costs, "costs", "ce"));
        cfg.constraint = number(doc, "<root>", "constraint_C");
        cfg.channel = parse_channel(member(doc, "<root>", "channel"), base_dir);
        validate_channel(cfg.channel);
        cfg.mc.reps = count(mc, "mc", "reps");
        cfg.mc.master_seed = count(mc, "mc", "master_seed");
        cfg.mc.horizon = count(mc, "mc", "t_max");
        if (cfg.mc.reps < 1 || cfg.mc.horizon < 1) {
            throw ConfigError("config: mc.reps and mc.t_max must be at least 1");
        }
        if (doc.contains("grid")) {
            cfg.grid = parse_grid(doc["grid"]);
        }
        return cfg;
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

std::vector<double> grid_points(const GridSpec& grid) {
    std::vector<double> points(grid.points);
    if (grid.points == 1) {
        points[0] = grid.u_min;
        return points;
    }
    const double last = static_cast<double>(grid.points - 1);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double frac = static_cast<double>(i) / last;
        points[i] = grid.spacing == GridSpacing::linear
                        ? grid.u_min + frac * (grid.u_max - grid.u_min)
                        : grid.u_min * std::pow(grid.u_max / grid.u_min, frac);
    }
    points.back() = grid.u_max;
    return points;
}

ScenarioConfig scenario_config(const RunConfig& cfg) {
    ScenarioConfig sc;
    sc.params = cfg.model;
    sc.costs = cfg.costs;
    sc.channel = cfg.channel;
    sc.master_seed = cfg.mc.master_seed;
    sc.reps = cfg.mc.reps;
    sc.horizon = cfg.mc.horizon;
    return sc;
}

}  // namespace seqjde::cli
