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
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvqss/backend.hpp"
#include "cvqss/bounds.hpp"
#include "cvqss/optics.hpp"
#include "cvqss/states.hpp"

namespace cvqss {

class UnreachableGain : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Dealer

struct DealerConfig {
    double v_sq = 1.0;         // squeezed-quadrature variance of each OPA
    double v_anti = 1.0;       // anti-squeezed variance (>= 1/v_sq; larger = mixed)
    double v_noise = 0.0;      // variance of each classical noise quadrature
    double secret_plus = 5.0;  // coherent amplitude <X+> of the secret
    double secret_minus = 5.0;
    double eta_encode = 1.0;  // mode matching of the secret with EPR1

    void validate() const {
        if (!(v_sq > 0.0) || v_sq > 1.0) throw std::invalid_argument("dealer v_sq must lie in (0, 1]");
        if (v_sq * v_anti < 1.0 - AxisRegistry::kHeisenbergSlack)
            throw std::invalid_argument("dealer v_anti must be >= 1/v_sq");
        if (!(v_noise >= 0.0)) throw std::invalid_argument("dealer v_noise must be >= 0");
        if (!(eta_encode > 0.0) || eta_encode > 1.0) throw std::invalid_argument("dealer efficiency must be in (0, 1]");
    }

    bool classical() const { return v_sq == 1.0 && v_anti == 1.0; }
};

/// Axis ids the dealer allocates, in allocation order.
struct ShareAxes {
    AxisId secret_plus, secret_minus;
    AxisId sqz1_plus, sqz1_minus;  // sqz1 is squeezed on X-
    AxisId sqz2_plus, sqz2_minus;  // sqz2 is squeezed on X+
    AxisId noise_plus, noise_minus;

    AxisId secret(Quadrature q) const { return q == Quadrature::plus ? secret_plus : secret_minus; }
};

enum class ShareChoice { player1, player2 };

template <class ModeT>
struct BasicShareSet {
    ModeT secret;  // the dealer's input, before any encoding loss
    ModeT share1, share2, share3;
    ShareAxes axes;

    const ModeT& player(int k) const {
        switch (k) {
            case 1: return share1;
            case 2: return share2;
            case 3: return share3;
        }
        throw std::invalid_argument("player must be 1, 2 or 3");
    }
    const ModeT& select(ShareChoice who) const { return who == ShareChoice::player1 ? share1 : share2; }
};

using ShareSet = BasicShareSet<Mode>;

/// share1 = (in + EPR1 + N)/sqrt2, share2 = (in - EPR1 - N)/sqrt2,
/// share3 = EPR2 + N on X+ and EPR2 - N on X-.
template <class Net>
BasicShareSet<typename Net::Mode> dealer_encode(Net& net, const DealerConfig& cfg) {
    cfg.validate();
    const auto base = static_cast<AxisId>(net.registry().size());
    auto secret = new_coherent(net, cfg.secret_plus, cfg.secret_minus, "secret");
    auto sqz1 = new_squeezed(net, cfg.v_sq, cfg.v_anti, Quadrature::minus, "sqz1");
    auto sqz2 = new_squeezed(net, cfg.v_sq, cfg.v_anti, Quadrature::plus, "sqz2");
    auto noise_plus = net.classical_noise(cfg.v_noise, "N.plus");
    auto noise_minus = net.classical_noise(cfg.v_noise, "N.minus");
    ShareAxes axes{base, base + 1, base + 2, base + 3, base + 4, base + 5, base + 6, base + 7};

    auto [epr1, epr2] = epr_pair(net, sqz1, sqz2);
    auto input = loss(net, secret, cfg.eta_encode);
    epr1 = loss(net, epr1, cfg.eta_encode);
    auto [sum, diff] = beam_splitter(net, input, epr1, 0.5);

    const double h = 1.0 / std::numbers::sqrt2;
    using T = Term<Net>;
    auto share1 = linear_combine(net, {T(1, 1, sum), T(h, 0, noise_plus), T(0, h, noise_minus)});
    auto share2 = linear_combine(net, {T(1, 1, diff), T(-h, 0, noise_plus), T(0, -h, noise_minus)});
    auto share3 = linear_combine(net, {T(1, 1, epr2), T(1, 0, noise_plus), T(0, -1, noise_minus)});
    return {std::move(secret), std::move(share1), std::move(share2), std::move(share3), axes};
}

/// Share 3 as seen by the partner of `who`. Share 2 carries EPR1 and N with
/// the opposite sign to share 1, so a pi phase delay on share 3 lets one code
/// path serve both the {1,3} and {2,3} groups.
template <class Net>
typename Net::Mode aligned_share3(Net& net, const BasicShareSet<typename Net::Mode>& s, ShareChoice who) {
    return who == ShareChoice::player1 ? net.make_mode(s.share3.plus, s.share3.minus)
                                       : phase_shift(net, s.share3, std::numbers::pi);
}

// ---------------------------------------------------------------------------
// {1,2}: Mach-Zehnder

template <class Net>
typename Net::Mode reconstruct_mz(Net& net, const BasicShareSet<typename Net::Mode>& s, double eta_bs = 1.0) {
    auto a = loss(net, s.share1, eta_bs);
    auto b = loss(net, s.share2, eta_bs);
    return beam_splitter(net, a, b, 0.5).first;
}

// ---------------------------------------------------------------------------
// {1,3} / {2,3}: phase-insensitive amplifier with share 3 as the idler

template <class Net>
typename Net::Mode reconstruct_pia(Net& net, const BasicShareSet<typename Net::Mode>& s, ShareChoice who, double G) {
    auto idler = aligned_share3(net, s, who);
    return phase_insensitive_amp(net, s.select(who), idler, G);
}

inline constexpr double kPiaUnityGain = 2.0;

// ---------------------------------------------------------------------------
// {1,3} / {2,3}: two parametric amplifiers between balanced beam splitters

inline constexpr double kTwoOpaUnityGain = 3.0 + 2.0 * std::numbers::sqrt2;

/// The first beam splitter output is de-amplified on X+ (gain 1/G), the second
/// amplified on X+ (gain G); a second balanced beam splitter recombines them.
template <class Net>
typename Net::Mode reconstruct_two_opa(Net& net, const BasicShareSet<typename Net::Mode>& s, ShareChoice who,
                                       double G) {
    if (!(G > 0.0)) throw std::invalid_argument("two-OPA gain must be > 0");
    auto s3 = aligned_share3(net, s, who);
    auto [c, d] = beam_splitter(net, s.select(who), s3, 0.5);
    auto c_amp = phase_sensitive_amp(net, c, 1.0 / G);
    auto d_amp = phase_sensitive_amp(net, d, G);
    return beam_splitter(net, c_amp, d_amp, 0.5).first;
}

// ---------------------------------------------------------------------------
// Feed-forward protocols

/// Displacement through a highly reflective mirror, with the mode matching
/// of the target beam onto that mirror.
struct LoSpec {
    double mirror_R = 50.0 / 51.0;
    double eta = 1.0;
};

template <class ModeT>
struct FeedForwardResult {
    ModeT output;
    double gain_plus = 0.0;   // electronic gain applied to X+
    double gain_minus = 0.0;  // electronic gain applied to X- (double feed-forward only)
};

struct SingleFFParams {
    double R = 2.0 / 3.0;
    std::optional<double> G_elec;  // empty: solve for g+ g- = 1
    double eta_bs = 1.0;           // mode matching of the two shares
    DetectorSpec detector;
    std::optional<LoSpec> lo;      // empty: ideal displacement
};

namespace detail {
inline double solve_linear_gain(double target, double base, double slope, const char* what) {
    if (std::abs(slope) < 1e-300) {
        if (std::abs(target - base) <= 1e-12) return 0.0;
        throw UnreachableGain(std::string(what) + ": feed-forward carries no secret component");
    }
    return (target - base) / slope;
}
}  // namespace detail

/// Shares meet on a beam splitter of reflectivity R. X+ of the second output
/// is detected and fed forward onto X+ of the first, which is the
/// reconstructed state.
template <class Net>
FeedForwardResult<typename Net::Mode> reconstruct_single_ff(Net& net, const BasicShareSet<typename Net::Mode>& s,
                                                            ShareChoice who, const SingleFFParams& p) {
    detail::require_unit_interval(p.R, "feed-forward beam splitter reflectivity");
    auto a = loss(net, s.select(who), p.eta_bs);
    auto s3 = aligned_share3(net, s, who);
    auto b = loss(net, s3, p.eta_bs);
    auto [kept, probe] = beam_splitter(net, a, b, p.R);
    auto signal = homodyne(net, probe, Quadrature::plus, p.detector);
    auto target = p.lo ? loss(net, kept, p.lo->eta) : std::move(kept);

    const double scale = p.lo ? lo_target_transmission(p.lo->mirror_R) : 1.0;
    const double kick = p.lo ? lo_kick_efficiency(p.lo->mirror_R) : 1.0;
    double G = 0.0;
    if (p.G_elec) {
        G = *p.G_elec;
    } else {
        const double g_minus = scale * analytic(target.minus).coeff(s.axes.secret_minus);
        if (g_minus == 0.0) throw UnreachableGain("single feed-forward: no secret on X-, unity gain unreachable");
        G = detail::solve_linear_gain(1.0 / g_minus, scale * analytic(target.plus).coeff(s.axes.secret_plus),
                                      kick * analytic(signal.value).coeff(s.axes.secret_plus), "single feed-forward");
    }
    auto out = p.lo ? lo_displace(net, target, Quadrature::plus, signal, G, p.lo->mirror_R)
                    : displace(net, target, Quadrature::plus, signal, G);
    return {std::move(out), G, 0.0};
}

/// X+ -> X+/sqrt3, X- -> sqrt3 X-: maps the unity-gain single feed-forward
/// output back to the form of the secret.
template <class Net>
typename Net::Mode parametric_correction(Net& net, const typename Net::Mode& m) {
    return phase_sensitive_amp(net, m, 1.0 / 3.0);
}

struct DoubleFFParams {
    double R1 = 0.5;
    double g_target = 1.0;
    DetectorSpec detector;
    std::optional<LoSpec> lo;
};

/// Share A is split against vacuum (reflectivity R1). The transmitted part
/// meets share 3 on a balanced beam splitter; X- of one output and X+ of the
/// other are detected and fed forward onto both quadratures of the kept part.
/// Electronic gains are solved so both optical gains equal g_target.
template <class Net>
FeedForwardResult<typename Net::Mode> reconstruct_double_ff(Net& net, const BasicShareSet<typename Net::Mode>& s,
                                                            ShareChoice who, const DoubleFFParams& p) {
    detail::require_unit_interval(p.R1, "double feed-forward reflectivity");
    auto vac = new_vacuum(net, "dff.vac");
    auto [kept, relay] = beam_splitter(net, s.select(who), vac, p.R1);
    auto s3 = aligned_share3(net, s, who);
    auto [sum, diff] = beam_splitter(net, relay, s3, 0.5);
    auto sig_plus = homodyne(net, diff, Quadrature::plus, p.detector);
    auto sig_minus = homodyne(net, sum, Quadrature::minus, p.detector);
    auto target = p.lo ? loss(net, kept, p.lo->eta) : std::move(kept);

    const double scale = p.lo ? lo_target_transmission(p.lo->mirror_R) : 1.0;
    const double kick = p.lo ? lo_kick_efficiency(p.lo->mirror_R) : 1.0;
    auto solve = [&](Quadrature q, const typename Net::Signal& sig) {
        const AxisId id = s.axes.secret(q);
        return detail::solve_linear_gain(p.g_target, scale * analytic(target[q]).coeff(id),
                                         kick * analytic(sig.value).coeff(id), "double feed-forward");
    };
    const double G_plus = solve(Quadrature::plus, sig_plus);
    const double G_minus = solve(Quadrature::minus, sig_minus);

    if (p.lo) {
        auto out = lo_displace(net, target,
                               {Kick<Net>{Quadrature::plus, sig_plus, G_plus},
                                Kick<Net>{Quadrature::minus, sig_minus, G_minus}},
                               p.lo->mirror_R);
        return {std::move(out), G_plus, G_minus};
    }
    auto half = displace(net, target, Quadrature::plus, sig_plus, G_plus);
    return {displace(net, half, Quadrature::minus, sig_minus, G_minus), G_plus, G_minus};
}

/// Electronic-gain to optical-gain maps of the ideal feed-forward protocols,
/// in the sign conventions they were first written in. Kept for reference and
/// cross-checks; the protocols above solve gains from the optics directly.
namespace gain_maps {
inline double single_ff_g_plus(double G) { return 1.0 / std::sqrt(3.0) + G / std::sqrt(6.0); }
inline double single_ff_g_minus() { return 1.0 / std::sqrt(3.0); }
inline double single_ff_unity_G() { return 2.0 * std::numbers::sqrt2; }
/// The double feed-forward map uses an electronic gain of the opposite sign to
/// the one reconstruct_double_ff reports.
inline double double_ff_g(double G) { return (1.0 - G / std::numbers::sqrt2) / 2.0; }
}  // namespace gain_maps

// ---------------------------------------------------------------------------
// Gain corrections applied after reconstruction

/// Noiseless parametric operation equalising both quadrature gains to
/// sign * sqrt(g+ g-). Needs g+ g- > 0.
template <class Net>
typename Net::Mode symmetrize_gains(Net& net, const typename Net::Mode& m, double g_plus, double g_minus) {
    if (!(g_plus * g_minus > 0.0)) throw UnreachableGain("gains of opposite sign cannot be equalised");
    auto out = phase_sensitive_amp(net, m, g_minus / g_plus);
    if (g_plus < 0.0) out = phase_shift(net, out, std::numbers::pi);
    return out;
}

/// Equalise the gains, then bring them to one with an ideal phase-insensitive
/// amplifier (vacuum idler) or an attenuator. Empty when g+ g- <= 0.
template <class Net>
std::optional<typename Net::Mode> amplify_to_unity(Net& net, const typename Net::Mode& m, double g_plus,
                                                   double g_minus) {
    if (!(g_plus * g_minus > 0.0)) return std::nullopt;
    auto sym = symmetrize_gains(net, m, g_plus, g_minus);
    const double g2 = g_plus * g_minus;
    if (g2 < 1.0) {
        auto idler = new_vacuum(net, "amp.idler");
        return phase_insensitive_amp(net, sym, idler, 1.0 / g2);
    }
    if (g2 > 1.0) return loss(net, sym, 1.0 / g2);
    return sym;
}

// ---------------------------------------------------------------------------
// Adversaries

/// Ideal linear amplification of a single share; amp_gain is the amplitude
/// gain (sqrt2 restores unity gain for shares 1 and 2).
template <class Net>
typename Net::Mode adversary_amplified(Net& net, const typename Net::Mode& share, double amp_gain) {
    auto idler = new_vacuum(net, "adv.idler");
    return phase_insensitive_amp(net, share, idler, amp_gain * amp_gain);
}

// ---------------------------------------------------------------------------
// Reports

struct CoefficientRow {
    AxisId axis;
    std::string label;
    double plus;
    double minus;
};

struct ReconstructionReport {
    double g_plus = 0.0;
    double g_minus = 0.0;
    double v_out_plus = 0.0;
    double v_out_minus = 0.0;
    std::vector<CoefficientRow> coefficients;
    std::map<std::string, double> parameters;
};

inline ReconstructionReport make_report(const AxisRegistry& reg, const ShareSet& s, const Mode& out,
                                        std::map<std::string, double> parameters = {}) {
    ReconstructionReport r;
    r.g_plus = out.plus.coeff(s.axes.secret_plus);
    r.g_minus = out.minus.coeff(s.axes.secret_minus);
    r.v_out_plus = variance(reg, out.plus);
    r.v_out_minus = variance(reg, out.minus);
    std::map<AxisId, CoefficientRow> rows;
    for (const auto& [id, c] : out.plus.coeffs) rows.try_emplace(id, CoefficientRow{id, reg.at(id).label, 0, 0}).first->second.plus = c;
    for (const auto& [id, c] : out.minus.coeffs) rows.try_emplace(id, CoefficientRow{id, reg.at(id).label, 0, 0}).first->second.minus = c;
    for (auto& [id, row] : rows) r.coefficients.push_back(std::move(row));
    r.parameters = std::move(parameters);
    return r;
}

/// What a single player holds, reported as if it were a reconstruction.
inline ReconstructionReport adversary_view(const AxisRegistry& reg, const ShareSet& s, int player) {
    return make_report(reg, s, s.player(player), {{"player", static_cast<double>(player)}});
}

}  // namespace cvqss
