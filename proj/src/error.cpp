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

#include "seqjde/error.hpp"

namespace seqjde {

namespace {

std::string horizon_message(std::uint64_t samples, double energy, double threshold,
                            std::optional<std::size_t> replication) {
    std::string msg = "horizon exhausted: channel energy " + std::to_string(energy) +
                      " below threshold " + std::to_string(threshold) + " after " +
                      std::to_string(samples) + " samples";
    if (replication) {
        msg += " (replication " + std::to_string(*replication) + ")";
    }
    return msg;
}

}  // namespace

HorizonExhausted::HorizonExhausted(std::uint64_t samples, double energy, double threshold,
                                   std::optional<std::size_t> replication)
    : Error(horizon_message(samples, energy, threshold, replication)),
      samples_(samples),
      energy_(energy),
      threshold_(threshold),
      replication_(replication) {}

}  // namespace seqjde
