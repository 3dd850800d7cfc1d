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

// Command-line front end: seqjde <subcommand> --config cfg.json --out result

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqjde/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace seqjde;
    using namespace seqjde::cli;

    CLI::App app{"Sequential joint detection and estimation"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string truth = "H1";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "JSON experiment configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "output path")->required();
        sub->add_option("--seed", opts.seed, "override mc.master_seed");
        sub->add_option("--reps", opts.reps, "override mc.reps");
    };

    auto* calibrate = app.add_subcommand("calibrate", "solve for the stopping threshold");
    add_common(calibrate);

    auto* gtable = app.add_subcommand("gtable", "tabulate the expected margin over the grid");
    add_common(gtable);

    auto* simulate = app.add_subcommand("simulate", "run one replication with a step trace");
    add_common(simulate);
    simulate->add_option("--truth", truth, "true hypothesis")
        ->check(CLI::IsMember({"H0", "H1"}));
    simulate->add_option("--x", opts.amplitude, "fix the amplitude under H1");
    simulate->add_option("--gamma", opts.threshold, "use this threshold instead of calibrating");
    simulate->add_option("--trace", opts.table, "trace CSV path (default <out>.trace.csv)");

    auto* montecarlo = app.add_subcommand("montecarlo", "estimate the combined cost");
    add_common(montecarlo);
    montecarlo->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
    montecarlo->add_option("--csv", opts.table, "replication CSV path (default <out>.reps.csv)");

    auto* compare = app.add_subcommand("compare", "joint versus separate decision rules");
    add_common(compare);
    compare->add_option("--threads", opts.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    opts.truth = truth == "H0" ? Hypothesis::H0 : Hypothesis::H1;

    if (calibrate->parsed()) {
        return cmd_calibrate(opts, std::cerr);
    }
    if (gtable->parsed()) {
        return cmd_gtable(opts, std::cerr);
    }
    if (simulate->parsed()) {
        return cmd_simulate(opts, std::cerr);
    }
    if (montecarlo->parsed()) {
        return cmd_montecarlo(opts, std::cerr);
    }
    return cmd_compare(opts, std::cerr);
}
