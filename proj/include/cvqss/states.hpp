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

#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "cvqss/backend.hpp"

namespace cvqss {

template <class Net>
typename Net::Mode new_vacuum(Net& net, std::string_view label = "vac") {
    return net.quantum_mode(1.0, 1.0, label);
}

/// Squeezed (possibly mixed) state: `v_sq` on the squeezed quadrature,
/// `v_anti` on its conjugate. Mixedness lives entirely in v_anti.
template <class Net>
typename Net::Mode new_squeezed(Net& net, double v_sq, double v_anti, Quadrature squeezed,
                                std::string_view label = "sqz") {
    if (!(v_sq > 0.0) || v_sq > 1.0) throw std::invalid_argument("squeezed variance must lie in (0, 1]");
    if (v_sq * v_anti < 1.0 - AxisRegistry::kHeisenbergSlack)
        throw std::invalid_argument("anti-squeezed variance below 1/v_sq");
    return squeezed == Quadrature::plus ? net.quantum_mode(v_sq, v_anti, label)
                                        : net.quantum_mode(v_anti, v_sq, label);
}

template <class Net>
typename Net::Mode new_coherent(Net& net, double mean_plus, double mean_minus, std::string_view label = "coh") {
    return net.quantum_mode(1.0, 1.0, label, mean_plus, mean_minus);
}

/// One summand of linear_combine: a mode contributes c_plus X+ and c_minus X-
/// to the respective quadratures; a signal contributes c_plus s to X+ and
/// c_minus s to X-.
template <class Net>
struct Term {
    double c_plus;
    double c_minus;
    std::variant<std::reference_wrapper<const typename Net::Mode>, std::reference_wrapper<const typename Net::Signal>>
        source;

    Term(double cp, double cm, const typename Net::Mode& m) : c_plus(cp), c_minus(cm), source(std::cref(m)) {}
    Term(double cp, double cm, const typename Net::Signal& s) : c_plus(cp), c_minus(cm), source(std::cref(s)) {}
};

template <class Net>
typename Net::Mode linear_combine(Net& net, std::initializer_list<Term<Net>> terms) {
    auto plus = net.zero();
    auto minus = net.zero();
    for (const auto& t : terms) {
        if (const auto* m = std::get_if<0>(&t.source)) {
            const auto& mode = m->get();
            net.require_live(mode);
            plus += t.c_plus * mode.plus;
            minus += t.c_minus * mode.minus;
        } else {
            const auto& sig = std::get<1>(t.source).get();
            plus += t.c_plus * sig.value;
            minus += t.c_minus * sig.value;
        }
    }
    return net.make_mode(std::move(plus), std::move(minus));
}

}  // namespace cvqss
