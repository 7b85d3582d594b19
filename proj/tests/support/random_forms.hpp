// Copyright 2026 The fibreforms Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Random generators shared by the property tests.

#include <fibreforms/form.hpp>
#include <fibreforms/rng.hpp>

namespace fibreforms::testing {

inline Rational small_rational(CounterRng& rng) {
    const int num = rng.uniform_int(-6, 6);
    const int den = rng.uniform_int(1, 4);
    return Rational(num, den);
}

/// Random polynomial with up to `terms` monomials of total degree <= max_deg.
inline Polynomial random_polynomial(int nvars, int max_deg, int terms, CounterRng& rng) {
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponents e{};
        int budget = rng.uniform_int(0, max_deg);
        while (budget-- > 0) ++e[static_cast<std::size_t>(rng.uniform_int(0, nvars - 1))];
        p += Polynomial::monomial(nvars, e, small_rational(rng));
    }
    return p;
}

/// Random polynomial form: each basis term present with probability `density`.
inline Form random_form(int dim, int degree, CounterRng& rng, int max_deg = 2, double density = 0.5) {
    Form f(dim, degree);
    if (degree > dim) return f;
    for (const auto& m : basis(dim, degree))
        if (rng.uniform() < density) f.add_term(m, random_polynomial(dim, max_deg, 3, rng));
    return f;
}

/// Random triangular polynomial diffeomorphism y_i = a_i x_i + q_i(x_0..x_{i-1}), a_i != 0.
inline std::vector<Polynomial> random_triangular_map(int dim, CounterRng& rng) {
    std::vector<Polynomial> comp;
    for (int i = 0; i < dim; ++i) {
        Rational a(rng.uniform_int(1, 3) * (rng.uniform() < 0.5 ? -1 : 1), rng.uniform_int(1, 2));
        Polynomial p = Polynomial::variable(dim, i) * a;
        for (int t = 0; t < 2 && i > 0; ++t) {
            Exponents e{};
            int budget = rng.uniform_int(0, 2);
            while (budget-- > 0) ++e[static_cast<std::size_t>(rng.uniform_int(0, i - 1))];
            p += Polynomial::monomial(dim, e, small_rational(rng));
        }
        comp.push_back(std::move(p));
    }
    return comp;
}

}  // namespace fibreforms::testing
