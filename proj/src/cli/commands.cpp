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

#include "seqjde/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "seqjde/cli/config.hpp"
#include "seqjde/engine.hpp"
#include "seqjde/error.hpp"
#include "seqjde/margin.hpp"
#include "seqjde/simulation.hpp"
#include "seqjde/statistics.hpp"

namespace seqjde::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kTableQuadratureTolerance = 1e-10;

class OutputError : public Error {
  public:
    using Error::Error;
};

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot write '" + path.string() + "'");
    }
    return out;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
}

// Maps library errors onto exit codes; every subcommand runs through here.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const HorizonExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kExitHorizon;
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

RunConfig load_with_overrides(const CommandOptions& opts) {
    RunConfig cfg = load_config(opts.config);
    if (opts.seed) {
        cfg.mc.master_seed = *opts.seed;
    }
    if (opts.reps) {
        if (*opts.reps < 1) {
            throw ConfigError("--reps must be at least 1");
        }
        cfg.mc.reps = *opts.reps;
    }
    return cfg;
}

json estimate_json(const Estimate& e) { return {{"value", e.value}, {"std_error", e.std_error}}; }

json report_json(const CostReport& r) {
    return {
        {"reps", r.reps},
        {"stop_index", r.stop_index},
        {"U_T", r.energy},
        {"p0_d1", estimate_json(r.p0_d1)},
        {"p1_d0", estimate_json(r.p1_d0)},
        {"mse_d1", estimate_json(r.mse_d1)},
        {"mse_d0", estimate_json(r.mse_d0)},
        {"combined", estimate_json(r.combined)},
        {"predicted", r.predicted},
        {"constraint_C", r.constraint},
    };
}

json calibration_json(const Calibration& cal, const RunConfig& cfg) {
    const double target = cal.constraint - cost_offset(cfg.model, cfg.costs);
    json doc;
    if (const auto gamma = cal.threshold()) {
        doc["regime"] = "observe";
        doc["gamma"] = *gamma;
        doc["C"] = cal.constraint;
        doc["C_max"] = admissible_cost_bound(cfg.model, cfg.costs);
        doc["G_at_gamma"] = expected_margin(*gamma, cfg.model, cfg.costs);
        doc["target"] = target;
    } else {
        const auto& stop = std::get<StopAtZeroRegime>(cal.regime);
        doc["regime"] = "stop_at_zero";
        doc["C"] = cal.constraint;
        doc["C_max"] = admissible_cost_bound(cfg.model, cfg.costs);
        doc["target"] = target;
        doc["decision"] = to_string(stop.decision);
        doc["estimate"] = stop.estimate ? json(*stop.estimate) : json(nullptr);
    }
    return doc;
}

std::string csv_cell(std::optional<double> x) { return x ? format_number(*x) : std::string(); }

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::filesystem::path companion_path(const std::filesystem::path& out, const std::string& suffix) {
    std::filesystem::path p = out;
    p.replace_extension(suffix);
    return p;
}

int cmd_calibrate(const CommandOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_with_overrides(opts);
        const Calibration cal = solve_threshold(cfg.constraint, cfg.model, cfg.costs);
        write_json(opts.out, calibration_json(cal, cfg));
        return int{kExitOk};
    });
}

int cmd_gtable(const CommandOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_with_overrides(opts);
        if (!cfg.grid) {
            throw ConfigError("config: gtable requires a 'grid' section");
        }
        require_calibratable(cfg.costs);
        auto out = open_output(opts.out);
        out << "U,g,V1,V2,G,G_quadrature,abs_diff\n";
        bool failed = false;
        for (double u : grid_points(*cfg.grid)) {
            const MarginPoint pt = margin_point(u, cfg.model, cfg.costs);
            std::optional<double> quad;
            if (u > 0.0) {
                try {
                    quad = expected_margin_quadrature(u, cfg.model, cfg.costs,
                                                      kTableQuadratureTolerance);
                } catch (const QuadratureNonConvergence& e) {
                    err << "warning: " << e.what() << '\n';
                    failed = true;
                }
            }
            const std::optional<double> diff =
                quad ? std::optional<double>(std::abs(pt.margin - *quad)) : std::nullopt;
            out << format_number(u) << ',' << format_number(pt.root) << ','
                << format_number(pt.lower) << ',' << format_number(pt.upper) << ','
                << format_number(pt.margin) << ',' << csv_cell(quad) << ',' << csv_cell(diff)
                << '\n';
        }
        return failed ? int{kExitNumerical} : int{kExitOk};
    });
}

int cmd_simulate(const CommandOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_with_overrides(opts);
        Calibration cal;
        if (opts.threshold) {
            if (!std::isfinite(*opts.threshold) || *opts.threshold <= 0.0) {
                throw ConfigError("--gamma must be positive");
            }
            cal.constraint = cfg.constraint;
            cal.regime = ObserveRegime{*opts.threshold};
        } else {
            cal = solve_threshold(cfg.constraint, cfg.model, cfg.costs);
        }
        if (opts.amplitude && opts.truth == Hypothesis::H0) {
            throw ConfigError("--x applies to the H1 arm only");
        }

        ScenarioConfig sc = scenario_config(cfg);
        sc.truth = opts.truth;
        const std::vector<double> gains =
            generate_channel(sc.channel, channel_seed(sc.master_seed), sc.horizon);
        ReplicationStream stream(sc, gains, 0, opts.amplitude);

        const auto trace_path = opts.table.value_or(companion_path(opts.out, ".trace.csv"));
        auto trace = open_output(trace_path);
        trace << "t,h,y,U,V,logL,xhat\n";
        auto on_step = [&](const Sample& s, const SufficientStats& st) {
            trace << st.count << ',' << format_number(s.gain) << ','
                  << format_number(s.observation) << ',' << format_number(st.energy) << ','
                  << format_number(st.correlation) << ','
                  << format_number(log_likelihood_ratio(st, cfg.model)) << ','
                  << format_number(estimate(st, cfg.model)) << '\n';
        };
        const TripletOutcome outcome =
            run_sequential(stream, cal, cfg.model, cfg.costs, sc.horizon, on_step);

        json doc;
        doc["truth"] = to_string(opts.truth);
        doc["x"] = stream.amplitude();
        doc["regime"] = cal.observes() ? "observe" : "stop_at_zero";
        if (const auto gamma = cal.threshold()) {
            doc["gamma"] = *gamma;
        }
        doc["C"] = cal.constraint;
        doc["T"] = outcome.stop_index;
        doc["decision"] = to_string(outcome.decision);
        doc["estimate"] = outcome.estimate ? json(*outcome.estimate) : json(nullptr);
        doc["U_T"] = outcome.terminal.energy;
        doc["V_T"] = outcome.terminal.correlation;
        doc["logL_T"] = outcome.log_lr;
        doc["predicted_cost"] = outcome.predicted_cost;
        write_json(opts.out, doc);
        return int{kExitOk};
    });
}

int cmd_montecarlo(const CommandOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_with_overrides(opts);
        const Calibration cal = solve_threshold(cfg.constraint, cfg.model, cfg.costs);
        const MonteCarloRun run =
            monte_carlo(make_scenario_pair(scenario_config(cfg)), cal, opts.threads);

        json doc;
        doc["calibration"] = calibration_json(cal, cfg);
        doc["master_seed"] = cfg.mc.master_seed;
        doc["t_max"] = cfg.mc.horizon;
        doc["reps"] = cfg.mc.reps;
        doc["report"] = report_json(run.report);
        write_json(opts.out, doc);

        auto csv = open_output(opts.table.value_or(companion_path(opts.out, ".reps.csv")));
        csv << "rep,arm,x,decision,estimate,sq_err\n";
        for (const auto& r : run.records) {
            csv << r.rep << ',' << to_string(r.arm) << ',' << format_number(r.amplitude) << ','
                << to_string(r.decision) << ',' << csv_cell(r.estimate) << ','
                << (r.arm == Hypothesis::H1 ? format_number(r.sq_error) : std::string()) << '\n';
        }
        return int{kExitOk};
    });
}

int cmd_compare(const CommandOptions& opts, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_with_overrides(opts);
        const Calibration cal = solve_threshold(cfg.constraint, cfg.model, cfg.costs);
        const SchemeComparison cmp =
            compare_schemes(make_scenario_pair(scenario_config(cfg)), cal, opts.threads);

        json doc;
        doc["calibration"] = calibration_json(cal, cfg);
        doc["master_seed"] = cfg.mc.master_seed;
        doc["reps"] = cfg.mc.reps;
        doc["joint"] = report_json(cmp.joint.report);
        doc["separate"] = report_json(cmp.separate.report);
        doc["difference"] = cmp.difference;
        doc["pooled_std_error"] = cmp.pooled_std_error;
        doc["paired_std_error"] = cmp.paired_std_error;
        doc["disagreements"] = cmp.disagreements;
        write_json(opts.out, doc);
        return int{kExitOk};
    });
}

}  // namespace seqjde::cli
