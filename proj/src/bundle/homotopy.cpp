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

#include "fibreforms/bundle/homotopy.hpp"

#include <memory>

#include "fibreforms/bundle/shadow.hpp"
#include "fibreforms/error.hpp"
#include "fibreforms/quadrature.hpp"

namespace fibreforms {

namespace {

constexpr int kRadialNodes = 16;

// int_0^1 t^{l-1} c(x0 + t (x - x0)) dt
CoefficientField radial_average(const CoefficientField& c, int ell, std::span<const double> center,
                                std::span<const Rational> center_q) {
    const int dim = c.dim();
    if (c.kind() == FieldKind::kPolynomial) {
        std::vector<Rational> neg(center_q.begin(), center_q.end());
        for (auto& q : neg) q = -q;
        return c.polynomial().translate(center_q).radial_integral(ell).translate(neg);
    }
    auto field = std::make_shared<const CoefficientField>(c);
    std::vector<double> x0(center.begin(), center.end());
    return CallableField{dim, [field, x0, ell](std::span<const double> x) {
                             const auto& gl = gauss_legendre(kRadialNodes);
                             std::vector<double> y(x.size());
                             double acc = 0.0;
                             for (int q = 0; q < kRadialNodes; ++q) {
                                 const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(q)] + 1.0);
                                 for (std::size_t a = 0; a < x.size(); ++a) y[a] = x0[a] + t * (x[a] - x0[a]);
                                 double tp = 1.0;
                                 for (int p = 1; p < ell; ++p) tp *= t;
                                 acc += 0.5 * gl.weights[static_cast<std::size_t>(q)] * tp * field->eval(y);
                             }
                             return acc;
                         }};
}

}  // namespace

Form homotopy_operator(const Form& h, std::span<const double> center) {
    const int dim = h.dim();
    const int ell = h.degree();
    if (static_cast<int>(center.size()) != dim) throw DimensionError("homotopy center dimension differs from the form");
    if (ell == 0) return Form(dim, 0);
    Form out(dim, ell - 1);
    if (ell > dim) return out;
    std::vector<Rational> cq;
    for (double c : center) cq.push_back(rational_from_double(c));

    for (const auto& [m, c] : h.terms()) {
        const CoefficientField r = radial_average(c, ell, center, cq);
        for (int a = 0; a < m.valency(); ++a) {
            const int axis = m[a];
            // (x^axis - c^axis), exact for polynomial data
            CoefficientField lever = Polynomial::variable(dim, axis) - Polynomial::constant(dim, cq[static_cast<std::size_t>(axis)]);
            CoefficientField term = lever * r;
            out.add_term(m.erase_at(a), (a % 2) ? -term : term);
        }
    }
    return out;
}

Form poincare_antiderivative(const Form& h, const StarDomain& dom, double tolerance) {
    if (h.degree() == 0) throw DomainError("antiderivative needs a form of degree at least 1");
    if (h.dim() != dom.dim()) throw DimensionError("form and domain dimensions differ");
    const ClosednessReport cr = check_closedness(h, tolerance, &dom.box);
    if (!cr.closed) throw DomainError("input form is not closed (residual " + std::to_string(cr.max_residual) + ")");
    return homotopy_operator(h, dom.center);
}

}  // namespace fibreforms
