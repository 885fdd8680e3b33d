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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cvqss/backend.hpp"

namespace cvqss {

/// A block of per-shot values of one quadrature, with the exact form it
/// should follow carried alongside. Protocols read the shadow only to
/// calibrate electronic gains; all sampled statistics come from `values`.
struct SampledForm {
    LinearForm shadow;
    std::vector<double> values;

    SampledForm& operator+=(const SampledForm& o) {
        check_size(o);
        shadow += o.shadow;
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        return *this;
    }
    SampledForm& operator-=(const SampledForm& o) {
        check_size(o);
        shadow -= o.shadow;
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    SampledForm& operator*=(double s) {
        shadow *= s;
        for (auto& v : values) v *= s;
        return *this;
    }

    friend SampledForm operator+(SampledForm a, const SampledForm& b) { return a += b; }
    friend SampledForm operator-(SampledForm a, const SampledForm& b) { return a -= b; }
    friend SampledForm operator-(SampledForm a) { return a *= -1.0; }
    friend SampledForm operator*(double s, SampledForm a) { return a *= s; }
    friend SampledForm operator*(SampledForm a, double s) { return a *= s; }

  private:
    void check_size(const SampledForm& o) const {
        if (o.values.size() != values.size()) throw std::logic_error("sampled forms from different shot blocks");
    }
};

inline const LinearForm& analytic(const SampledForm& f) { return f.shadow; }

/// Draws every axis once per shot, from N(0, variance), as it is created.
class SamplingSource {
  public:
    using Form = SampledForm;

    SamplingSource() : SamplingSource(1, 0) {}
    SamplingSource(std::size_t shots, std::uint64_t seed, std::uint64_t stream = 0) : shots_(shots) {
        if (shots == 0) throw std::invalid_argument("shot block must be non-empty");
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        rng_.seed(seq);
    }

    Form axis(const NoiseAxis& a) {
        Form f{LinearForm::axis(a.id), std::vector<double>(shots_, 0.0)};
        if (a.variance > 0.0) {
            std::normal_distribution<double> dist(0.0, std::sqrt(a.variance));
            for (auto& v : f.values) v = dist(rng_);
        }
        if (a.id != axis_samples_.size()) throw std::logic_error("axes must be drawn in id order");
        axis_samples_.push_back(f.values);
        return f;
    }
    Form constant(double v) const { return Form{LinearForm::constant(v), std::vector<double>(shots_, v)}; }

    std::size_t shots() const { return shots_; }
    /// Samples drawn for each axis, indexed by axis id.
    const std::vector<std::vector<double>>& axis_samples() const { return axis_samples_; }

  private:
    std::size_t shots_;
    std::mt19937_64 rng_;
    std::vector<std::vector<double>> axis_samples_;
};

/// Monte Carlo backend: every quadrature is a block of sampled values.
using SampledBackend = Backend<SamplingSource>;

inline SampledBackend make_sampled_backend(std::size_t shots, std::uint64_t seed, std::uint64_t stream = 0) {
    return SampledBackend(std::in_place, shots, seed, stream);
}

}  // namespace cvqss
