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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "cvqss/harness/experiment.hpp"

namespace cvqss::harness {

struct FrontierPoint {
    double T = 0.0;
    double V = 0.0;
    std::size_t row = 0;  // index into the sweep rows
};

/// Points not dominated in (max T, min V). Ties in T keep the lower V.
inline std::vector<FrontierPoint> pareto_frontier(std::vector<FrontierPoint> pts) {
    std::stable_sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.T != b.T) return a.T > b.T;
        return a.V < b.V;
    });
    std::vector<FrontierPoint> front;
    for (const auto& p : pts)
        if (front.empty() || p.V < front.back().V) front.push_back(p);
    return front;
}

/// Every point of `b` is matched or beaten (T no lower, V no higher) by some
/// point of `a`.
inline bool dominates(const std::vector<FrontierPoint>& a, const std::vector<FrontierPoint>& b, double tol = 1e-12) {
    return std::all_of(b.begin(), b.end(), [&](const FrontierPoint& q) {
        return std::any_of(a.begin(), a.end(),
                           [&](const FrontierPoint& p) { return p.T >= q.T - tol && p.V <= q.V + tol; });
    });
}

struct RegionCurve {
    double v_sq_db = 0.0;
    double v_N = 0.0;
    std::vector<FrontierPoint> frontier;
};

struct RegionResult {
    SweepResult sweep;
    std::vector<RegionCurve> curves;
};

inline const std::vector<std::string>& frontier_columns() {
    static const std::vector<std::string> cols{"v_sq_db", "v_N", "R", "gain", "T", "V"};
    return cols;
}

/// Accessible (T, V) region over the (R, gain) grid, one frontier per dealer
/// setting (v_sq_db, v_N).
inline RegionResult run_region(const ExperimentConfig& c) {
    if (!c.sweep.count(SweepAxis::R) && !c.sweep.count(SweepAxis::gain))
        throw ConfigError("region needs a sweep over R and/or gain");
    RegionResult res;
    res.sweep = run_sweep(c);
    std::map<std::pair<double, double>, std::vector<FrontierPoint>> groups;
    std::vector<std::pair<double, double>> order;
    for (std::size_t i = 0; i < res.sweep.rows.size(); ++i) {
        const auto& r = res.sweep.rows[i];
        const std::pair<double, double> key{r.point.v_sq_db, r.point.v_N};
        if (!groups.count(key)) order.push_back(key);
        auto& g = groups[key];
        if (r.reachable && std::isfinite(r.T) && std::isfinite(r.V)) g.push_back({r.T, r.V, i});
    }
    for (const auto& key : order) {
        if (groups[key].empty()) throw ConfigError("region grid has no reachable points");
        res.curves.push_back({key.first, key.second, pareto_frontier(groups[key])});
    }
    return res;
}

}  // namespace cvqss::harness
