// Copyright 2026 The cvqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "cvqss/harness/config.hpp"
#include "cvqss/harness/experiment.hpp"
#include "cvqss/harness/output.hpp"
#include "cvqss/harness/region.hpp"
#include "cvqss/harness/summary.hpp"

namespace cvqss::harness {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitOracle = 3, kExitBound = 4 };

inline constexpr double kOracleZ = 5.0;

struct CommandResult {
    Table table;
    int exit_code = kExitOk;
    std::string message;
};

namespace detail {
inline nlohmann::ordered_json row_ref(const std::vector<SweepRow>& rows, const std::optional<std::size_t>& i) {
    if (!i) return nullptr;
    const auto& r = rows[*i];
    return {{"row", *i},           {"v_sq_db", json_number(r.point.v_sq_db)}, {"v_N", json_number(r.point.v_N)},
            {"R", json_number(r.point.R)}, {"gain", json_number(r.point.gain)},   {"F_unity", json_number(r.F_unity)},
            {"T", json_number(r.T)}, {"V", json_number(r.V)}};
}

inline void finish(CommandResult& res, std::size_t violations, double max_z, const std::string& worst) {
    auto& s = res.table.summary;
    s["classical_violations"] = violations;
    s["oracle_max_z"] = json_number(max_z);
    if (!worst.empty()) s["oracle_worst"] = worst;
    if (!std::isnan(max_z) && !(max_z < kOracleZ)) {
        res.exit_code = kExitOracle;
        res.message = "oracle deviation z = " + format_number(max_z) + " at " + worst;
    } else if (violations > 0) {
        res.exit_code = kExitBound;
        res.message = std::to_string(violations) + " classical-dealer rows outside the classical bounds";
    }
}

inline CommandResult summary_command(const ExperimentConfig& c) {
    CommandResult res;
    const auto s = run_summary(c);
    res.table.columns = {"quantity", "value"};
    for (const auto& e : s.entries) res.table.rows.push_back({e.quantity, e.value});
    res.table.summary["name"] = c.name;
    res.table.summary["protocol"] = "summary";
    finish(res, s.classical_violations, s.oracle_max_z, s.oracle_worst);
    return res;
}
}  // namespace detail

inline Table sweep_table(const ExperimentConfig& c, const SweepResult& r) {
    Table t;
    t.columns = sweep_columns();
    for (const auto& row : r.rows) {
        std::vector<Cell> cells;
        for (double v : row_values(row)) cells.emplace_back(v);
        t.rows.push_back(std::move(cells));
    }
    const auto& s = r.summary;
    t.summary["name"] = c.name;
    t.summary["protocol"] = to_string(c.protocol);
    t.summary["rows"] = s.rows;
    t.summary["unreachable"] = s.unreachable;
    t.summary["best_F"] = detail::row_ref(r.rows, s.best_F);
    t.summary["best_T"] = detail::row_ref(r.rows, s.best_T);
    t.summary["min_V"] = detail::row_ref(r.rows, s.min_V);
    t.summary["exceeds_classical"] = {{"F", s.exceed_F}, {"T", s.exceed_T}, {"V", s.exceed_V}};
    return t;
}

/// `run`: the sweep table, or the headline table for protocol = summary.
inline CommandResult command_run(const ExperimentConfig& c) {
    if (c.protocol == Protocol::summary) return detail::summary_command(c);
    CommandResult res;
    const auto r = run_sweep(c);
    res.table = sweep_table(c, r);
    detail::finish(res, r.summary.classical_violations, r.summary.oracle_max_z, r.summary.oracle_worst);
    return res;
}

/// `region`: Pareto frontier of each dealer setting in the grid.
inline CommandResult command_region(const ExperimentConfig& c) {
    if (c.protocol == Protocol::summary) throw ConfigError("region needs a reconstruction protocol");
    CommandResult res;
    const auto r = run_region(c);
    res.table.columns = frontier_columns();
    for (const auto& curve : r.curves) {
        for (const auto& p : curve.frontier) {
            const auto& row = r.sweep.rows[p.row];
            res.table.rows.push_back({curve.v_sq_db, curve.v_N, row.point.R, row.point.gain, p.T, p.V});
        }
    }
    res.table.summary["name"] = c.name;
    res.table.summary["protocol"] = to_string(c.protocol);
    res.table.summary["grid_points"] = r.sweep.rows.size();
    res.table.summary["curves"] = r.curves.size();
    detail::finish(res, r.sweep.summary.classical_violations, r.sweep.summary.oracle_max_z,
                   r.sweep.summary.oracle_worst);
    return res;
}

/// `oracle`: every grid point replayed on sampled shots.
inline CommandResult command_oracle(ExperimentConfig c) {
    c.oracle = true;
    if (c.protocol == Protocol::summary) return detail::summary_command(c);
    CommandResult res;
    const auto r = run_sweep(c);
    res.table.columns = {"row", "v_sq_db", "v_N", "R", "gain", "max_z", "pass", "worst"};
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        res.table.rows.push_back({static_cast<double>(i), row.point.v_sq_db, row.point.v_N, row.point.R,
                                  row.point.gain, row.oracle_max_z,
                                  std::isnan(row.oracle_max_z) ? kNaN : (row.oracle_max_z < kOracleZ ? 1.0 : 0.0),
                                  row.oracle_worst});
    }
    res.table.summary["name"] = c.name;
    res.table.summary["shots"] = c.shots;
    res.table.summary["seed"] = c.seed;
    detail::finish(res, r.summary.classical_violations, r.summary.oracle_max_z, r.summary.oracle_worst);
    return res;
}

}  // namespace cvqss::harness
