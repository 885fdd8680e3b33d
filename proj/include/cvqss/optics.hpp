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
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "cvqss/backend.hpp"
#include "cvqss/states.hpp"
#include "cvqss/units.hpp"

namespace cvqss {

struct DetectorSpec {
    double efficiency = 1.0;
    double dark_noise_variance = 0.0;  // relative to the QNL of the detected beam

    static DetectorSpec ideal() { return {}; }
    static DetectorSpec with_dark_db(double efficiency, double dark_db) {
        return {efficiency, db_to_linear(dark_db)};
    }
    void validate() const {
        if (!(efficiency > 0.0) || efficiency > 1.0) throw std::invalid_argument("detector efficiency must be in (0, 1]");
        if (!(dark_noise_variance >= 0.0)) throw std::invalid_argument("dark noise variance must be >= 0");
    }
};

namespace detail {
inline void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}
// Exact zeros and units for quarter-turn phases.
inline double snap_trig(double v) {
    constexpr double eps = 1e-15;
    if (std::abs(v) < eps) return 0.0;
    if (std::abs(v - 1.0) < eps) return 1.0;
    if (std::abs(v + 1.0) < eps) return -1.0;
    return v;
}
}  // namespace detail

/// (c, d) = (sqrt(R) a + sqrt(T) b, sqrt(T) a - sqrt(R) b) on both quadratures.
/// The matrix is symmetric and orthogonal, so the map is its own inverse.
template <class Net>
std::pair<typename Net::Mode, typename Net::Mode> beam_splitter(Net& net, const typename Net::Mode& a,
                                                                  const typename Net::Mode& b, double R) {
    detail::require_unit_interval(R, "beam splitter reflectivity");
    const double r = std::sqrt(R);
    const double t = std::sqrt(1.0 - R);
    auto c = linear_combine(net, {Term<Net>(r, r, a), Term<Net>(t, t, b)});
    auto d = linear_combine(net, {Term<Net>(t, t, a), Term<Net>(-r, -r, b)});
    return {std::move(c), std::move(d)};
}

template <class Net>
typename Net::Mode phase_shift(Net& net, const typename Net::Mode& m, double phi) {
    net.require_live(m);
    const double c = detail::snap_trig(std::cos(phi));
    const double s = detail::snap_trig(std::sin(phi));
    return net.make_mode(c * m.plus - s * m.minus, s * m.plus + c * m.minus);
}

/// Canonical EPR source: sqz1 squeezed on X-, sqz2 squeezed on X+, mixed on
/// a balanced beam splitter. EPR1 = (sqz1 + sqz2)/sqrt2, EPR2 = (sqz1 - sqz2)/sqrt2.
template <class Net>
std::pair<typename Net::Mode, typename Net::Mode> epr_pair(Net& net, const typename Net::Mode& sqz1,
                                                             const typename Net::Mode& sqz2) {
    return beam_splitter(net, sqz1, sqz2, 0.5);
}

/// X+ = sqrt(G) X+_in - sqrt(G-1) X+_idler,  X- = sqrt(G) X-_in + sqrt(G-1) X-_idler.
template <class Net>
typename Net::Mode phase_insensitive_amp(Net& net, const typename Net::Mode& input, const typename Net::Mode& idler,
                                         double G) {
    if (!(G >= 1.0)) throw std::invalid_argument("phase-insensitive gain must be >= 1");
    const double g = std::sqrt(G);
    const double n = std::sqrt(G - 1.0);
    return linear_combine(net, {Term<Net>(g, g, input), Term<Net>(-n, n, idler)});
}

/// Noiseless degenerate amplifier: X+ -> sqrt(G) X+, X- -> X-/sqrt(G).
template <class Net>
typename Net::Mode phase_sensitive_amp(Net& net, const typename Net::Mode& m, double G) {
    if (!(G > 0.0)) throw std::invalid_argument("phase-sensitive gain must be > 0");
    const double g = std::sqrt(G);
    return linear_combine(net, {Term<Net>(g, 1.0 / g, m)});
}

/// Beam-splitter loss: sqrt(eta) m + sqrt(1-eta) vacuum.
template <class Net>
typename Net::Mode loss(Net& net, const typename Net::Mode& m, double eta) {
    detail::require_unit_interval(eta, "transmission");
    net.require_live(m);
    if (eta == 1.0) return net.make_mode(m.plus, m.minus);
    auto vac = new_vacuum(net, "loss");
    const double a = std::sqrt(eta);
    const double b = std::sqrt(1.0 - eta);
    return linear_combine(net, {Term<Net>(a, a, m), Term<Net>(b, b, vac)});
}

/// Balanced homodyne photocurrent of one quadrature. The measured mode is
/// consumed; using it again raises MeasuredModeReuse.
template <class Net>
typename Net::Signal homodyne(Net& net, const typename Net::Mode& m, Quadrature q,
                              const DetectorSpec& det = DetectorSpec::ideal()) {
    det.validate();
    net.require_live(m);
    auto detected = det.efficiency < 1.0 ? loss(net, m, det.efficiency) : net.make_mode(m.plus, m.minus);
    typename Net::Signal sig{detected[q]};
    if (det.dark_noise_variance > 0.0) sig.value += net.classical_noise(det.dark_noise_variance, "dark").value;
    net.consume(m);
    net.consume(detected);
    return sig;
}

/// Feed-forward displacement: the chosen quadrature gets + G * signal.
template <class Net>
typename Net::Mode displace(Net& net, const typename Net::Mode& target, Quadrature q,
                            const typename Net::Signal& signal, double G) {
    net.require_live(target);
    auto out = net.make_mode(target.plus, target.minus);
    out[q] += G * signal.value;
    return out;
}

template <class Net>
struct Kick {
    Quadrature quadrature;
    const typename Net::Signal& signal;
    double gain;
};

/// Displacement through a highly reflective mirror: an auxiliary beam carrying
/// the electronic kicks is combined with the target on a beam splitter of
/// reflectivity mirror_R. The target keeps amplitude sqrt(mirror_R); the kick
/// reaches it scaled by lo_kick_efficiency(mirror_R).
template <class Net>
typename Net::Mode lo_displace(Net& net, const typename Net::Mode& target, std::initializer_list<Kick<Net>> kicks,
                               double mirror_R) {
    if (!(mirror_R > 0.0 && mirror_R < 1.0)) throw std::invalid_argument("LO mirror reflectivity must lie in (0, 1)");
    auto aux = new_vacuum(net, "lo");
    for (const auto& k : kicks) aux = displace(net, aux, k.quadrature, k.signal, k.gain);
    return beam_splitter(net, target, aux, mirror_R).first;
}

template <class Net>
typename Net::Mode lo_displace(Net& net, const typename Net::Mode& target, Quadrature q,
                               const typename Net::Signal& signal, double G, double mirror_R) {
    return lo_displace(net, target, {Kick<Net>{q, signal, G}}, mirror_R);
}

inline double lo_target_transmission(double mirror_R) { return std::sqrt(mirror_R); }
inline double lo_kick_efficiency(double mirror_R) { return std::sqrt(1.0 - mirror_R); }

}  // namespace cvqss
