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
#include <map>

namespace cvqss {

using AxisId = std::uint32_t;

/// A real affine functional over independent noise axes:
///     mean + sum_i coeffs[i] * axis_i
/// Every quadrature and every photocurrent in the simulator is one of these.
/// Entries are dropped only when they become exactly zero.
struct LinearForm {
    double mean = 0.0;
    std::map<AxisId, double> coeffs;

    static LinearForm axis(AxisId id, double coefficient = 1.0) {
        LinearForm f;
        if (coefficient != 0.0) f.coeffs.emplace(id, coefficient);
        return f;
    }
    static LinearForm constant(double value) {
        LinearForm f;
        f.mean = value;
        return f;
    }

    double coeff(AxisId id) const {
        auto it = coeffs.find(id);
        return it == coeffs.end() ? 0.0 : it->second;
    }

    void add(AxisId id, double c) {
        if (c == 0.0) return;
        auto [it, inserted] = coeffs.try_emplace(id, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) coeffs.erase(it);
        }
    }

    LinearForm& operator+=(const LinearForm& o) {
        mean += o.mean;
        for (const auto& [id, c] : o.coeffs) add(id, c);
        return *this;
    }
    LinearForm& operator-=(const LinearForm& o) {
        mean -= o.mean;
        for (const auto& [id, c] : o.coeffs) add(id, -c);
        return *this;
    }
    LinearForm& operator*=(double s) {
        mean *= s;
        if (s == 0.0) {
            coeffs.clear();
            return *this;
        }
        for (auto& [id, c] : coeffs) c *= s;
        return *this;
    }

    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator-(LinearForm a) { return a *= -1.0; }
    friend LinearForm operator*(double s, LinearForm a) { return a *= s; }
    friend LinearForm operator*(LinearForm a, double s) { return a *= s; }
};

/// Identity accessor so generic code can ask any form type for its exact
/// coefficient representation.
inline const LinearForm& analytic(const LinearForm& f) { return f; }

}  // namespace cvqss
