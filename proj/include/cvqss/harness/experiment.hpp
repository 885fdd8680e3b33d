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

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvqss/bounds.hpp"
#include "cvqss/harness/config.hpp"
#include "cvqss/metrics.hpp"
#include "cvqss/monte_carlo.hpp"
#include "cvqss/protocols.hpp"

namespace cvqss::harness {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kBoundSlack = 1e-9;

/// The modes one grid point produces. `raw` is empty when the requested gain
/// cannot be reached; the corrected variants are empty when g+ g- <= 0.
template <class ModeT>
struct PipelineModes {
    ModeT secret;
    std::optional<ModeT> raw = std::nullopt;
    std::optional<ModeT> symmetric = std::nullopt;
    std::optional<ModeT> unity = std::nullopt;
    double g_plus = kNaN;
    double g_minus = kNaN;
    double applied_gain = kNaN;
    std::string unreachable = {};
};

inline bool uses_reflectivity(Protocol p) { return p == Protocol::single_ff || p == Protocol::double_ff; }

inline bool uses_gain(Protocol p, const ExperimentConfig& c) {
    switch (p) {
        case Protocol::pia:
        case Protocol::two_opa:
        case Protocol::single_ff:
        case Protocol::double_ff: return true;
        case Protocol::adversary_1: return c.gain.has_value();
        default: return false;
    }
}

inline DetectorSpec feed_forward_detector(const ExperimentConfig& c) { return DetectorSpec{c.eta_ff, c.dark_noise}; }

inline std::optional<LoSpec> displacement_mirror(const ExperimentConfig& c) {
    if (!c.mirror_R) return std::nullopt;
    return LoSpec{*c.mirror_R, c.eta_lo};
}

template <class Net>
PipelineModes<typename Net::Mode> build_pipeline(Net& net, const ExperimentConfig& c) {
    using ModeT = typename Net::Mode;
    auto s = dealer_encode(net, c.dealer);
    PipelineModes<ModeT> p{s.secret};
    try {
        switch (c.protocol) {
            case Protocol::mz:
                p.raw = reconstruct_mz(net, s, c.eta_mz);
                break;
            case Protocol::pia:
                p.applied_gain = c.gain.value_or(kPiaUnityGain);
                p.raw = reconstruct_pia(net, s, c.player, p.applied_gain);
                break;
            case Protocol::two_opa:
                p.applied_gain = c.gain.value_or(kTwoOpaUnityGain);
                p.raw = reconstruct_two_opa(net, s, c.player, p.applied_gain);
                break;
            case Protocol::single_ff: {
                SingleFFParams sp{c.R, c.gain, c.eta_bs, feed_forward_detector(c), displacement_mirror(c)};
                auto r = reconstruct_single_ff(net, s, c.player, sp);
                p.applied_gain = r.gain_plus;
                p.raw = std::move(r.output);
                break;
            }
            case Protocol::double_ff: {
                p.applied_gain = c.gain.value_or(1.0);
                DoubleFFParams dp{c.R1, p.applied_gain, feed_forward_detector(c), displacement_mirror(c)};
                p.raw = reconstruct_double_ff(net, s, c.player, dp).output;
                break;
            }
            case Protocol::adversary_1:
                if (c.gain) {
                    p.applied_gain = *c.gain;
                    p.raw = adversary_amplified(net, s.share1, *c.gain);
                } else {
                    p.raw = s.share1;
                }
                break;
            case Protocol::adversary_3:
                p.raw = s.share3;
                break;
            case Protocol::summary:
                throw ConfigError("the summary protocol has no single pipeline");
        }
    } catch (const UnreachableGain& e) {
        p.unreachable = e.what();
        return p;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    p.g_plus = analytic(p.raw->plus).coeff(s.axes.secret_plus);
    p.g_minus = analytic(p.raw->minus).coeff(s.axes.secret_minus);
    if (p.g_plus * p.g_minus > 0.0) {
        p.symmetric = symmetrize_gains(net, *p.raw, p.g_plus, p.g_minus);
        p.unity = amplify_to_unity(net, *p.raw, p.g_plus, p.g_minus);
    }
    return p;
}

/// Output quadratures handed to the Monte Carlo oracle.
template <class ModeT>
std::vector<ModeT> oracle_modes(const PipelineModes<ModeT>& p) {
    std::vector<ModeT> out{p.secret};
    for (const auto* m : {&p.raw, &p.symmetric, &p.unity})
        if (*m) out.push_back(**m);
    return out;
}

struct GridPoint {
    double v_sq_db = kNaN;
    double v_N = 0.0;
    double R = kNaN;
    double gain = kNaN;
};

struct SweepRow {
    GridPoint point;
    double g_plus = kNaN, g_minus = kNaN, g_product = kNaN;
    double F_raw = kNaN, F_sym = kNaN, F_unity = kNaN;
    double T_plus = kNaN, T_minus = kNaN, T = kNaN;
    double V_plus = kNaN, V_minus = kNaN, V = kNaN;
    double F_bound = kNaN, T_bound = kNaN, V_bound = kNaN;
    bool reachable = false;
    bool classical_dealer = false;
    double oracle_max_z = kNaN;
    std::string oracle_worst;
};

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{
        "v_sq_db", "v_N",     "R",       "gain",    "g_plus",  "g_minus", "g_product", "F_raw",
        "F_sym",   "F_unity", "T_plus",  "T_minus", "T",       "V_plus",  "V_minus",   "V",
        "F_bound", "T_bound", "V_bound", "reachable", "oracle_max_z"};
    return cols;
}

inline std::vector<double> row_values(const SweepRow& r) {
    return {r.point.v_sq_db, r.point.v_N, r.point.R, r.point.gain, r.g_plus, r.g_minus, r.g_product,
            r.F_raw,         r.F_sym,     r.F_unity, r.T_plus,    r.T_minus, r.T,       r.V_plus,
            r.V_minus,       r.V,         r.F_bound, r.T_bound,   r.V_bound, r.reachable ? 1.0 : 0.0,
            r.oracle_max_z};
}

/// Config with one grid point applied.
inline ExperimentConfig at_point(ExperimentConfig c, const GridPoint& g) {
    if (!std::isnan(g.v_sq_db)) {
        c.dealer.v_sq = db_to_linear(g.v_sq_db);
        c.dealer.v_anti = 1.0 / c.dealer.v_sq + c.anti_excess;
    }
    c.dealer.v_noise = g.v_N;
    if (!std::isnan(g.R)) {
        if (c.protocol == Protocol::double_ff) c.R1 = g.R;
        else c.R = g.R;
    }
    if (c.sweep.count(SweepAxis::gain)) c.gain = g.gain;
    return c;
}

inline SweepRow evaluate_point(const ExperimentConfig& base, const GridPoint& g, std::size_t row_index = 0) {
    const ExperimentConfig c = at_point(base, g);
    AnalyticBackend net;
    auto p = build_pipeline(net, c);
    const auto& reg = net.registry();
    SweepRow r;
    r.point = g;
    r.point.v_sq_db = linear_to_db(c.dealer.v_sq);
    r.point.R = c.protocol == Protocol::double_ff ? c.R1 : (uses_reflectivity(c.protocol) ? c.R : kNaN);
    r.point.gain = uses_gain(c.protocol, c) ? p.applied_gain : kNaN;
    r.classical_dealer = c.classical_dealer();
    if (!p.raw) return r;
    r.reachable = true;
    const auto& out = *p.raw;
    r.g_plus = p.g_plus;
    r.g_minus = p.g_minus;
    r.g_product = p.g_plus * p.g_minus;
    r.F_raw = fidelity(reg, p.secret, out);
    if (p.symmetric) r.F_sym = fidelity(reg, p.secret, *p.symmetric);
    if (p.unity) r.F_unity = fidelity(reg, p.secret, *p.unity);
    else if (r.g_product == 0.0) r.F_unity = 0.0;  // unity gain needs unbounded amplification noise
    auto t = signal_transfer(reg, p.secret, out);
    r.T_plus = t.plus;
    r.T_minus = t.minus;
    r.T = t.total();
    r.V_plus = conditional_variance(reg, p.secret, out, Quadrature::plus).coherent_form;
    r.V_minus = conditional_variance(reg, p.secret, out, Quadrature::minus).coherent_form;
    r.V = r.V_plus * r.V_minus;
    auto b = classical_bounds(p.g_plus, p.g_minus);
    r.F_bound = b.fidelity_max;
    r.T_bound = b.signal_transfer_max;
    r.V_bound = b.noise_product_min;

    if (c.oracle) {
        OracleSettings os;
        os.shots = c.shots;
        os.seed = c.seed + row_index;
        auto rep = oracle_check([&](auto& n) { return oracle_modes(build_pipeline(n, c)); }, os);
        r.oracle_max_z = rep.max_z;
        r.oracle_worst = rep.worst.quantity;
    }
    return r;
}

/// Does the row leave the classical region of its own gains?
struct BoundCheck {
    bool fidelity = false;
    bool transfer = false;
    bool noise = false;
    bool any() const { return fidelity || transfer || noise; }
};

inline BoundCheck exceeds_classical(const SweepRow& r, double slack = kBoundSlack) {
    BoundCheck b;
    if (!r.reachable) return b;
    b.fidelity = r.F_unity > r.F_bound + slack;
    b.transfer = r.T > r.T_bound + slack;
    b.noise = r.V < r.V_bound - slack;
    return b;
}

inline std::vector<GridPoint> grid(const ExperimentConfig& c) {
    auto axis = [&](SweepAxis a, double fallback) {
        auto it = c.sweep.find(a);
        return it == c.sweep.end() ? std::vector<double>{fallback} : it->second.values();
    };
    const double R_default = c.protocol == Protocol::double_ff ? c.R1 : c.R;
    std::vector<GridPoint> pts;
    for (double sq : axis(SweepAxis::v_sq_db, kNaN))
        for (double n : axis(SweepAxis::v_N, c.dealer.v_noise))
            for (double R : axis(SweepAxis::R, R_default))
                for (double G : axis(SweepAxis::gain, kNaN)) pts.push_back({sq, n, R, G});
    return pts;
}

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t unreachable = 0;
    std::optional<std::size_t> best_F;  // by F_unity
    std::optional<std::size_t> best_T;
    std::optional<std::size_t> min_V;
    std::size_t exceed_F = 0, exceed_T = 0, exceed_V = 0;
    std::size_t classical_violations = 0;  // classical-dealer rows outside the classical region
    double oracle_max_z = kNaN;
    std::string oracle_worst;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
    SweepSummary s;
    s.rows = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!r.reachable) {
            ++s.unreachable;
            continue;
        }
        if (!std::isnan(r.F_unity) && (!s.best_F || r.F_unity > rows[*s.best_F].F_unity)) s.best_F = i;
        if (!s.best_T || r.T > rows[*s.best_T].T) s.best_T = i;
        if (!s.min_V || r.V < rows[*s.min_V].V) s.min_V = i;
        auto b = exceeds_classical(r);
        s.exceed_F += b.fidelity;
        s.exceed_T += b.transfer;
        s.exceed_V += b.noise;
        if (r.classical_dealer && b.any()) ++s.classical_violations;
        if (!std::isnan(r.oracle_max_z) && (std::isnan(s.oracle_max_z) || r.oracle_max_z > s.oracle_max_z)) {
            s.oracle_max_z = r.oracle_max_z;
            s.oracle_worst = r.oracle_worst;
        }
    }
    return s;
}

inline SweepResult run_sweep(const ExperimentConfig& c) {
    if (c.protocol == Protocol::summary) throw ConfigError("use the summary runner for protocol = summary");
    if (c.dealer.secret_plus == 0.0 || c.dealer.secret_minus == 0.0)
        throw ConfigError("signal transfer needs non-zero secret amplitudes");
    SweepResult res;
    const auto pts = grid(c);
    for (std::size_t i = 0; i < pts.size(); ++i) res.rows.push_back(evaluate_point(c, pts[i], i));
    res.summary = summarize(res.rows);
    return res;
}

}  // namespace cvqss::harness
