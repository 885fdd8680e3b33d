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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvqss/linear_form.hpp"

namespace cvqss {

enum class Quadrature { plus, minus };

inline Quadrature conjugate(Quadrature q) {
    return q == Quadrature::plus ? Quadrature::minus : Quadrature::plus;
}

inline const char* to_string(Quadrature q) { return q == Quadrature::plus ? "plus" : "minus"; }

enum class AxisKind { quantum, classical };

/// One independent zero-mean Gaussian fluctuation source. Variances are in
/// units of the quantum noise limit (vacuum = 1).
///
/// Quantum axes come in conjugate pairs: the amplitude fluctuation x_m and the
/// phase fluctuation y_m of one elementary mode m, linked through `partner`.
/// `quadrature` records which of the two an axis is. Classical axes (electronic
/// noise, dark current) have no partner and carry no commutator weight.
struct NoiseAxis {
    AxisId id = 0;
    double variance = 0.0;
    AxisKind kind = AxisKind::classical;
    std::optional<AxisId> partner;
    Quadrature quadrature = Quadrature::plus;
    std::string label;
};

/// Allocates axis ids. Not thread-safe: use one registry per pipeline.
class AxisRegistry {
  public:
    /// Slack allowed on the Heisenberg product of a quantum pair.
    static constexpr double kHeisenbergSlack = 1e-12;

    std::pair<AxisId, AxisId> add_quantum_pair(double var_plus, double var_minus, std::string_view label) {
        if (!(var_plus > 0.0) || !(var_minus > 0.0) || !std::isfinite(var_plus) || !std::isfinite(var_minus))
            throw std::invalid_argument("quantum axis variances must be positive and finite");
        if (var_plus * var_minus < 1.0 - kHeisenbergSlack)
            throw std::invalid_argument("quantum pair violates the uncertainty relation V+ V- >= 1");
        auto x = next_id();
        auto y = x + 1;
        std::string base(label);
        axes_.push_back({x, var_plus, AxisKind::quantum, y, Quadrature::plus, base + ".plus"});
        axes_.push_back({y, var_minus, AxisKind::quantum, x, Quadrature::minus, base + ".minus"});
        return {x, y};
    }

    AxisId add_classical(double variance, std::string_view label) {
        if (!(variance >= 0.0) || !std::isfinite(variance))
            throw std::invalid_argument("classical axis variance must be non-negative and finite");
        auto id = next_id();
        axes_.push_back({id, variance, AxisKind::classical, std::nullopt, Quadrature::plus, std::string(label)});
        return id;
    }

    const NoiseAxis& at(AxisId id) const {
        if (id >= axes_.size()) throw std::out_of_range("unknown axis id");
        return axes_[id];
    }
    double variance(AxisId id) const { return at(id).variance; }
    std::size_t size() const { return axes_.size(); }
    std::span<const NoiseAxis> axes() const { return axes_; }

  private:
    AxisId next_id() const { return static_cast<AxisId>(axes_.size()); }

    std::vector<NoiseAxis> axes_;
};

// ---------------------------------------------------------------------------
// Second moments of linear forms

inline double covariance(const AxisRegistry& reg, const LinearForm& a, const LinearForm& b) {
    // Walk the smaller map, look up in the larger one.
    const auto& small = a.coeffs.size() <= b.coeffs.size() ? a : b;
    const auto& large = a.coeffs.size() <= b.coeffs.size() ? b : a;
    double sum = 0.0;
    for (const auto& [id, c] : small.coeffs) {
        auto it = large.coeffs.find(id);
        if (it != large.coeffs.end()) sum += c * it->second * reg.variance(id);
    }
    return sum;
}

inline double variance(const AxisRegistry& reg, const LinearForm& f) { return covariance(reg, f, f); }

/// Commutator weight w such that [f, g] = 2i w in the QNL = 1 normalization.
inline double commutator(const AxisRegistry& reg, const LinearForm& f, const LinearForm& g) {
    double w = 0.0;
    for (const auto& [id, c] : f.coeffs) {
        const auto& axis = reg.at(id);
        if (axis.kind != AxisKind::quantum) continue;
        double partner_coeff = g.coeff(*axis.partner);
        if (partner_coeff == 0.0) continue;
        w += axis.quadrature == Quadrature::plus ? c * partner_coeff : -c * partner_coeff;
    }
    return w;
}

}  // namespace cvqss
