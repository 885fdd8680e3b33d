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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "cvqss/axis_registry.hpp"
#include "cvqss/linear_form.hpp"

namespace cvqss {

/// An optical mode: amplitude (plus) and phase (minus) quadratures, each a
/// form over the noise axes of the owning backend. `serial` identifies the
/// mode for measurement bookkeeping.
template <class Form>
struct BasicMode {
    Form plus;
    Form minus;
    std::uint64_t serial = 0;

    const Form& operator[](Quadrature q) const { return q == Quadrature::plus ? plus : minus; }
    Form& operator[](Quadrature q) { return q == Quadrature::plus ? plus : minus; }
};

/// A measured photocurrent. Carries no commutator weight of its own.
template <class Form>
struct BasicSignal {
    Form value;
};

class MeasuredModeReuse : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Owns the axis registry of one pipeline and hands out modes and signals.
///
/// `Source` decides what a form is: exact coefficients (AnalyticBackend) or
/// per-shot samples (SampledBackend). Optical components are written once,
/// against this interface, and run unchanged on either.
template <class Source>
class Backend {
  public:
    using Form = typename Source::Form;
    using Mode = BasicMode<Form>;
    using Signal = BasicSignal<Form>;

    Backend() = default;
    template <class... Args>
    explicit Backend(std::in_place_t, Args&&... args) : source_(std::forward<Args>(args)...) {}

    Mode quantum_mode(double var_plus, double var_minus, std::string_view label, double mean_plus = 0.0,
                      double mean_minus = 0.0) {
        auto [x, y] = registry_.add_quantum_pair(var_plus, var_minus, label);
        Form p = source_.axis(registry_.at(x));
        Form m = source_.axis(registry_.at(y));
        p += source_.constant(mean_plus);
        m += source_.constant(mean_minus);
        return make_mode(std::move(p), std::move(m));
    }

    Signal classical_noise(double variance, std::string_view label) {
        auto id = registry_.add_classical(variance, label);
        return Signal{source_.axis(registry_.at(id))};
    }

    Form constant(double value) const { return source_.constant(value); }
    Form zero() const { return source_.constant(0.0); }

    Mode make_mode(Form plus, Form minus) { return Mode{std::move(plus), std::move(minus), next_serial_++}; }

    void require_live(const Mode& m) const {
        if (consumed_.contains(m.serial))
            throw MeasuredModeReuse("mode #" + std::to_string(m.serial) + " was already measured");
    }
    void consume(const Mode& m) {
        require_live(m);
        consumed_.insert(m.serial);
    }
    bool is_consumed(const Mode& m) const { return consumed_.contains(m.serial); }

    const AxisRegistry& registry() const { return registry_; }
    Source& source() { return source_; }
    const Source& source() const { return source_; }

  private:
    AxisRegistry registry_;
    Source source_;
    std::uint64_t next_serial_ = 1;
    std::unordered_set<std::uint64_t> consumed_;
};

struct SymbolicSource {
    using Form = LinearForm;
    Form axis(const NoiseAxis& a) { return LinearForm::axis(a.id); }
    Form constant(double v) const { return LinearForm::constant(v); }
};

/// Exact second-moment backend: every quadrature is a coefficient vector.
using AnalyticBackend = Backend<SymbolicSource>;
using Mode = AnalyticBackend::Mode;
using ClassicalSignal = AnalyticBackend::Signal;

// ---------------------------------------------------------------------------
// Moments of analytic modes

inline double variance(const AxisRegistry& reg, const Mode& m, Quadrature q) { return variance(reg, m[q]); }

inline double covariance(const AxisRegistry& reg, const Mode& a, Quadrature qa, const Mode& b, Quadrature qb) {
    return covariance(reg, a[qa], b[qb]);
}

/// W(X+, X-); equals 1 for every physical mode.
inline double commutator_weight(const AxisRegistry& reg, const Mode& m) { return commutator(reg, m.plus, m.minus); }

}  // namespace cvqss
