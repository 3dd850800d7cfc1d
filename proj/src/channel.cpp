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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "seqjde/error.hpp"
#include "seqjde/simulation.hpp"

namespace seqjde {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw InvalidParams(std::string(what) + " must be positive and finite");
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

void validate_channel(const ChannelModel& model) {
    std::visit(Overloaded{
                   [](const ConstantChannel& c) {
                       if (!std::isfinite(c.gain) || c.gain == 0.0) {
                           throw InvalidParams("constant channel gain must be finite and nonzero");
                       }
                   },
                   [](const GaussianChannel& c) { require_positive(c.std_dev, "gaussian channel std"); },
                   [](const RayleighChannel& c) { require_positive(c.scale, "rayleigh channel scale"); },
                   [](const Ar1Channel& c) {
                       if (!std::isfinite(c.phi) || std::abs(c.phi) >= 1.0) {
                           throw InvalidParams("ar1 channel requires |phi| < 1");
                       }
                       require_positive(c.innov_std, "ar1 innovation std");
                       require_positive(c.init_std, "ar1 initial std");
                   },
                   [](const FileChannel& c) {
                       if (c.path.empty()) {
                           throw InvalidParams("file channel requires a path");
                       }
                   },
               },
               model);
}

std::vector<double> read_channel_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParams("cannot open channel file '" + path.string() + "'");
    }
    std::vector<double> gains;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
            throw InvalidParams("channel file '" + path.string() + "' line " +
                                std::to_string(line_no) + ": not a finite number");
        }
        gains.push_back(value);
    }
    return gains;
}

std::vector<double> generate_channel(const ChannelModel& model, std::uint64_t seed,
                                     std::size_t horizon) {
    if (horizon < 1) {
        throw InvalidParams("horizon must be at least 1");
    }
    validate_channel(model);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    return std::visit(
        Overloaded{
            [&](const ConstantChannel& c) { return std::vector<double>(horizon, c.gain); },
            [&](const GaussianChannel& c) {
                std::vector<double> h(horizon);
                for (auto& v : h) {
                    v = c.std_dev * normal(rng);
                }
                return h;
            },
            [&](const RayleighChannel& c) {
                std::vector<double> h(horizon);
                for (auto& v : h) {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    v = c.scale * std::hypot(re, im);
                }
                return h;
            },
            [&](const Ar1Channel& c) {
                std::vector<double> h(horizon);
                h[0] = c.init_std * normal(rng);
                for (std::size_t t = 1; t < horizon; ++t) {
                    h[t] = c.phi * h[t - 1] + c.innov_std * normal(rng);
                }
                return h;
            },
            [&](const FileChannel& c) {
                auto h = read_channel_file(c.path);
                if (h.size() > horizon) {
                    h.resize(horizon);
                }
                return h;
            },
        },
        model);
}

}  // namespace seqjde
