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

// Acceptance checks 1-9. One PASS/FAIL line per criterion; exit 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cvqss/harness/commands.hpp"
#include "cvqss/harness/presets.hpp"
#include "cvqss/monte_carlo.hpp"

using namespace cvqss;
using namespace cvqss::harness;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool timely = s < limit_s;
    const bool pass = o.ok && timely;
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s  (%.2f s, limit %.0f s%s)  %s\n", n, pass ? "PASS" : "FAIL", title, s, limit_s,
                timely ? "" : ", too slow", o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

DealerConfig random_dealer(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DealerConfig c;
    c.v_sq = 0.05 + 0.95 * u(rng);
    c.v_anti = 1.0 / c.v_sq + 3.0 * u(rng);
    c.v_noise = 20.0 * u(rng);
    c.secret_plus = -5.0 + 10.0 * u(rng);
    c.secret_minus = -5.0 + 10.0 * u(rng);
    return c;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

Outcome mz_exactness() {
    double worst_foreign = 0.0, worst_F = 0.0;
    for (double v_sq : linspace(0.1, 1.0, 5))
        for (double excess : linspace(0.0, 10.0, 5))
            for (double v_N : linspace(0.0, 100.0, 5)) {
                AnalyticBackend net;
                DealerConfig c;
                c.v_sq = v_sq;
                c.v_anti = 1.0 / v_sq + excess;
                c.v_noise = v_N;
                auto s = dealer_encode(net, c);
                auto out = reconstruct_mz(net, s);
                for (auto q : {Quadrature::plus, Quadrature::minus}) {
                    for (const auto& [axis, coeff] : out[q].coeffs) {
                        const double want = axis == s.axes.secret(q) ? 1.0 : 0.0;
                        worst_foreign = std::max(worst_foreign, std::abs(coeff - want));
                    }
                    worst_foreign = std::max(worst_foreign, std::abs(out[q].mean - s.secret[q].mean));
                }
                worst_F = std::max(worst_F, std::abs(fidelity(net.registry(), s.secret, out) - 1.0));
            }
    return {worst_foreign < 1e-12 && worst_F < 1e-12,
            fmt("125 points, max coefficient error %.1e, max |F-1| %.1e", worst_foreign, worst_F)};
}

Outcome unity_equivalence() {
    std::mt19937_64 rng(2026);
    double pair_dev = 0.0, formula_dev = 0.0, noise_coeff = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto cfg = random_dealer(rng);
        for (auto who : {ShareChoice::player1, ShareChoice::player2}) {
            AnalyticBackend net;
            auto s = dealer_encode(net, cfg);
            const auto& reg = net.registry();
            std::vector<Mode> outs{
                reconstruct_pia(net, s, who, kPiaUnityGain),
                reconstruct_two_opa(net, s, who, kTwoOpaUnityGain),
                parametric_correction(net, reconstruct_single_ff(net, s, who, SingleFFParams{}).output),
                reconstruct_double_ff(net, s, who, DoubleFFParams{}).output,
            };
            auto moments = [&](const Mode& o) {
                return std::array{variance(reg, o.plus), variance(reg, o.minus), covariance(reg, o.plus, o.minus),
                                  covariance(reg, o.plus, s.secret.plus), covariance(reg, o.minus, s.secret.minus)};
            };
            for (std::size_t a = 0; a < outs.size(); ++a) {
                const auto ma = moments(outs[a]);
                for (std::size_t b = a + 1; b < outs.size(); ++b) {
                    const auto mb = moments(outs[b]);
                    for (std::size_t k = 0; k < ma.size(); ++k) pair_dev = std::max(pair_dev, std::abs(ma[k] - mb[k]));
                }
                formula_dev = std::max({formula_dev, std::abs(ma[0] - (1 + 2 * cfg.v_sq)),
                                        std::abs(ma[1] - (1 + 2 * cfg.v_sq))});
                noise_coeff = std::max({noise_coeff, std::abs(outs[a].plus.coeff(s.axes.noise_plus)),
                                        std::abs(outs[a].minus.coeff(s.axes.noise_minus))});
            }
        }
    }
    return {pair_dev < 1e-10 && formula_dev < 1e-10 && noise_coeff < 1e-10,
            fmt("pairwise %.1e, vs 1+2v_sq %.1e, noise coefficient %.1e", pair_dev, formula_dev, noise_coeff)};
}

Outcome classical_limits() {
    auto c = parse_config_text(
        "protocol = single_ff\n"
        "dealer.v_sq = 1\ndealer.v_anti = 1\ndealer.v_N = 0\n"
        "sweep.R.from = 0\nsweep.R.to = 1\nsweep.R.steps = 41\n"
        "sweep.gain.from = 0\nsweep.gain.to = 5.65685424949238\nsweep.gain.steps = 41\n");
    auto r = run_sweep(c);
    double F = -1, T = -1, V = 1e300;
    std::size_t violations = 0;
    for (const auto& row : r.rows) {
        if (!std::isnan(row.F_unity)) F = std::max(F, row.F_unity);
        if (!std::isnan(row.T)) T = std::max(T, row.T);
        if (!std::isnan(row.V)) V = std::min(V, row.V);
        violations += exceeds_classical(row).any();
    }
    const bool ok = r.rows.size() == 41 * 41 && std::abs(F - 0.5) <= 1e-3 && std::abs(T - 1.0) <= 1e-3 &&
                    std::abs(V - 0.25) <= 1e-3 && violations == 0;
    return {ok, fmt("%zu points, max F %.6f, max T %.6f, min V %.6f, violations %zu", r.rows.size(), F, T, V,
                    violations)};
}

Outcome quantum_advantage() {
    auto c = parse_config_text(find_preset("ideal-summary").text);
    auto s = run_summary(c);
    const double F23 = s.at("F_23"), Favg = s.at("F_avg");
    c.dealer.v_sq = 1e-6;
    c.dealer.v_anti = 1e6;
    const double F23_strong = run_summary(c).at("F_23");
    const bool ok = std::abs(F23 - 0.738) <= 1e-3 && std::abs(Favg - (1 + 2 * F23) / 3) < 1e-12 && Favg > 2.0 / 3 &&
                    std::abs(F23_strong - 1) <= 1e-3;
    return {ok, fmt("F23 %.6f, F_avg %.6f, F23(v_sq=1e-6) %.6f", F23, Favg, F23_strong)};
}

Outcome experimental_reproduction() {
    auto s = run_summary(parse_config_text(find_preset("lab-summary").text));
    const double F23 = s.at("F_23"), T23 = s.at("T_23"), V23 = s.at("V_23"), F12 = s.at("F_12"), Favg = s.at("F_avg");
    auto in = [](double v, double a, double b) { return v >= a && v <= b; };
    const bool ok = in(F23, 0.58, 0.70) && in(T23, 0.9, 1.2) && in(V23, 0.3, 0.6) && in(F12, 0.90, 1.0) &&
                    in(Favg, 0.68, 0.80);
    return {ok, fmt("F23 %.4f, T23 %.4f, V23 %.4f, F12 %.4f, F_avg %.4f", F23, T23, V23, F12, Favg)};
}

Outcome entanglement() {
    auto mode_level = [](double v_sq, double v_anti) {
        AnalyticBackend net;
        auto a = new_squeezed(net, v_sq, v_anti, Quadrature::minus, "sqz1");
        auto b = new_squeezed(net, v_sq, v_anti, Quadrature::plus, "sqz2");
        auto [e1, e2] = epr_pair(net, a, b);
        return std::pair{duan_inseparability(net.registry(), e1, e2), reid_epr(net.registry(), e1, e2)};
    };
    const double v = db_to_linear(-4.5);
    const double duan = epr_duan(v, 1 / v), reid = epr_reid(v, 1 / v);
    const double duan1 = epr_duan(1, 1), reid1 = epr_reid(1, 1);
    double agree = 0.0;
    for (auto [vs, va] : {std::pair{v, 1 / v}, std::pair{1.0, 1.0}, std::pair{0.2, 9.0}}) {
        auto [d, r] = mode_level(vs, va);
        agree = std::max({agree, std::abs(d - epr_duan(vs, va)), std::abs(r - epr_reid(vs, va))});
    }
    const double eta = fit_epr_loss(v, 1 / v, kMeasuredDuan).value_or(kNaN);
    const bool ok = std::abs(duan - 0.3548) <= 1e-4 && std::abs(reid - 0.397) <= 1e-3 && duan < 1 && reid < 1 &&
                    duan1 == 1.0 && reid1 == 1.0 && agree < 1e-12;
    return {ok, fmt("Duan %.6f, Reid %.6f, vacuum %.17g / %.17g, mode-level agreement %.1e; "
                    "fitted eta for Duan 0.44: %.4f (Reid %.4f)",
                    duan, reid, duan1, reid1, agree, eta, epr_reid(v, 1 / v, eta))};
}

Outcome oracle_equivalence() {
    OracleSettings cfg;  // 1e6 shots, z < 5
    std::size_t runs = 0, failed = 0;
    double worst = 0.0;
    std::string worst_name;
    auto check = [&](const std::string& name, auto pipeline) {
        auto rep = oracle_check(pipeline, cfg);
        ++runs;
        cfg.seed += 1;
        if (!rep.pass) ++failed;
        if (rep.max_z > worst) {
            worst = rep.max_z;
            worst_name = name + ": " + rep.worst.quantity;
        }
    };
    auto harness_pipeline = [&](const std::string& name, ExperimentConfig c) {
        check(name, [c](auto& net) { return oracle_modes(build_pipeline(net, c)); });
    };

    for (double v_sq : {0.1, 0.55, 1.0})
        for (double v_N : {0.0, 100.0}) {
            DealerConfig d;
            d.v_sq = v_sq;
            d.v_anti = 1 / v_sq + 2;
            d.v_noise = v_N;
            check("mz", [d](auto& net) {
                auto s = dealer_encode(net, d);
                return std::vector{s.secret, reconstruct_mz(net, s)};
            });
        }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2; ++i) {
        const auto d = random_dealer(rng);
        for (auto who : {ShareChoice::player1, ShareChoice::player2})
            check("unity", [d, who](auto& net) {
                auto s = dealer_encode(net, d);
                return std::vector{s.secret, reconstruct_pia(net, s, who, kPiaUnityGain),
                                   reconstruct_two_opa(net, s, who, kTwoOpaUnityGain),
                                   parametric_correction(net, reconstruct_single_ff(net, s, who, SingleFFParams{}).output),
                                   reconstruct_double_ff(net, s, who, DoubleFFParams{}).output};
            });
    }
    auto classical = parse_config_text("protocol = single_ff\ndealer.v_sq = 1\ndealer.v_anti = 1\n");
    for (double R : {0.25, 0.5, 0.75})
        for (double G : {0.0, 2.0, 5.0}) {
            auto c = classical;
            c.R = R;
            c.gain = G;
            harness_pipeline("single_ff classical", c);
        }
    harness_pipeline("ideal summary", parse_config_text(find_preset("ideal-summary").text + "\nprotocol = single_ff\n"));
    auto lab = parse_config_text(find_preset("fig3b").text);
    lab.sweep.clear();
    lab.gain.reset();
    harness_pipeline("lab single_ff", lab);
    lab.protocol = Protocol::double_ff;
    harness_pipeline("lab double_ff", lab);
    for (auto p : {Protocol::adversary_1, Protocol::adversary_3}) {
        auto c = parse_config_text("dealer.v_sq_db = -4.5\ndealer.v_N = 10\n");
        c.protocol = p;
        harness_pipeline(to_string(p), c);
    }
    auto adv_amp = parse_config_text("protocol = adversary_1\ndealer.v_sq = 1\ndealer.v_anti = 1\n");
    adv_amp.gain = std::numbers::sqrt2;
    harness_pipeline("adversary_1 amplified", adv_amp);
    const double v = db_to_linear(-4.5);
    check("epr", [v](auto& net) {
        auto a = new_squeezed(net, v, 1 / v, Quadrature::minus, "sqz1");
        auto b = new_squeezed(net, v, 1 / v, Quadrature::plus, "sqz2");
        auto [e1, e2] = epr_pair(net, a, b);
        return std::vector{e1, e2};
    });
    return {failed == 0, fmt("%zu pipelines at %zu shots, %zu failed, max z %.2f (%s)", runs, cfg.shots, failed, worst,
                             worst_name.c_str())};
}

Outcome symplectic_suite() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_cross = 0.0;
    std::size_t ops = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        AnalyticBackend net;
        std::vector<Mode> live;
        auto fresh = [&]() -> Mode {
            switch (rng() % 4) {
                case 0: return new_vacuum(net);
                case 1: return new_coherent(net, 4 * u(rng) - 2, 4 * u(rng) - 2);
                case 2: {
                    const double v = 0.05 + 0.95 * u(rng);
                    return new_squeezed(net, v, 1 / v + 3 * u(rng), u(rng) < 0.5 ? Quadrature::plus : Quadrature::minus);
                }
                default: return net.quantum_mode(1 + 5 * u(rng), 1 + 5 * u(rng), "thermal");
            }
        };
        for (int i = 0; i < 3; ++i) live.push_back(fresh());
        const int steps = 1 + static_cast<int>(rng() % 12);
        for (int k = 0; k < steps; ++k, ++ops) {
            const std::size_t i = rng() % live.size();
            std::size_t j = rng() % live.size();
            if (j == i) j = (i + 1) % live.size();
            switch (rng() % 7) {
                case 0: {
                    auto [c, d] = beam_splitter(net, live[i], live[j], u(rng));
                    live[i] = c;
                    live[j] = d;
                    break;
                }
                case 1: live[i] = phase_shift(net, live[i], 2 * std::numbers::pi * u(rng)); break;
                case 2: live[i] = phase_insensitive_amp(net, live[i], new_vacuum(net), 1 + 4 * u(rng)); break;
                case 3: live[i] = phase_sensitive_amp(net, live[i], 0.1 + 5 * u(rng)); break;
                case 4: live[i] = loss(net, live[i], u(rng)); break;
                case 5:
                case 6: {
                    const auto q = u(rng) < 0.5 ? Quadrature::plus : Quadrature::minus;
                    DetectorSpec det{0.5 + 0.5 * u(rng), 0.1 * u(rng)};
                    auto sig = homodyne(net, live[j], q, det);
                    const double G = 4 * u(rng) - 2;
                    live[i] = (rng() % 2) ? displace(net, live[i], q, sig, G)
                                          : lo_displace(net, live[i], q, sig, G, 0.9 + 0.09 * u(rng));
                    live[j] = fresh();
                    break;
                }
            }
        }
        const auto& reg = net.registry();
        for (std::size_t a = 0; a < live.size(); ++a) {
            worst = std::max(worst, std::abs(commutator_weight(reg, live[a]) - 1.0));
            for (std::size_t b = a + 1; b < live.size(); ++b)
                for (auto qa : {Quadrature::plus, Quadrature::minus})
                    for (auto qb : {Quadrature::plus, Quadrature::minus})
                        worst_cross = std::max(worst_cross, std::abs(commutator(reg, live[a][qa], live[b][qb])));
        }
    }
    return {worst < 1e-12 && worst_cross < 1e-12,
            fmt("1000 compositions, %zu operations, max |W-1| %.1e, max cross-mode commutator %.1e", ops, worst,
                worst_cross)};
}

Outcome adversary_trend() {
    auto c = parse_config_text(find_preset("fig5-adversary").text);
    auto r1 = run_sweep(c);
    std::size_t bad = 0;
    for (std::size_t i = 1; i < r1.rows.size(); ++i)
        bad += !(r1.rows[i].T < r1.rows[i - 1].T) || !(r1.rows[i].V > r1.rows[i - 1].V);
    c.protocol = Protocol::adversary_3;
    auto r3 = run_sweep(c);
    std::size_t nonzero = 0;
    for (const auto& row : r3.rows) nonzero += row.F_unity != 0.0;
    const auto& first = r1.rows.front();
    const auto& last = r1.rows.back();
    return {bad == 0 && nonzero == 0 && r1.rows.size() > 2,
            fmt("%zu rows over v_N [%g, %g]: T %.4f -> %.4f, V %.4f -> %.4f, trend breaks %zu, share-3 nonzero F %zu",
                r1.rows.size(), first.point.v_N, last.point.v_N, first.T, last.T, first.V, last.V, bad, nonzero)};
}

}  // namespace

int main() {
    criterion(1, "Mach-Zehnder exactness", 1, mz_exactness);
    criterion(2, "unity-gain protocol equivalence", 1, unity_equivalence);
    criterion(3, "classical limits", 5, classical_limits);
    criterion(4, "quantum advantage", 1, quantum_advantage);
    criterion(5, "experimental reproduction", 1, experimental_reproduction);
    criterion(6, "entanglement criteria", 1, entanglement);
    criterion(7, "oracle equivalence", 60, oracle_equivalence);
    criterion(8, "symplectic suite", 5, symplectic_suite);
    criterion(9, "adversary security trend", 1, adversary_trend);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
