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

#include "fibreforms/diffeomorphism.hpp"

#include <cmath>
#include <memory>

#include "fibreforms/error.hpp"

namespace fibreforms {

Diffeomorphism::Diffeomorphism(std::vector<Polynomial> components) : comp_(std::move(components)) {
    const int n = dim();
    for (const auto& c : comp_)
        if (c.nvars() != n) throw DimensionError("diffeomorphism components must use N variables");
    jac_.resize(comp_.size());
    for (std::size_t i = 0; i < comp_.size(); ++i)
        for (int j = 0; j < n; ++j) jac_[i].push_back(comp_[i].partial(j));
}

Diffeomorphism Diffeomorphism::identity(int dim) {
    std::vector<Polynomial> c;
    for (int i = 0; i < dim; ++i) c.push_back(Polynomial::variable(dim, i));
    return Diffeomorphism(std::move(c));
}

Diffeomorphism Diffeomorphism::affine(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(b.size());
    if (a.rows() != n || a.cols() != n) throw DimensionError("affine map needs a square matrix");
    std::vector<Polynomial> c;
    for (int i = 0; i < n; ++i) {
        Polynomial p = Polynomial::constant(n, rational_from_double(b(i)));
        for (int j = 0; j < n; ++j) p += Polynomial::variable(n, j) * rational_from_double(a(i, j));
        c.push_back(std::move(p));
    }
    return Diffeomorphism(std::move(c));
}

std::vector<double> Diffeomorphism::apply(std::span<const double> x) const {
    std::vector<double> y(comp_.size());
    for (std::size_t i = 0; i < comp_.size(); ++i) y[i] = comp_[i].eval(x);
    return y;
}

Eigen::MatrixXd Diffeomorphism::jacobian(std::span<const double> x) const {
    const int n = dim();
    Eigen::MatrixXd j(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) j(r, c) = jac_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].eval(x);
    return j;
}

Eigen::VectorXd Diffeomorphism::pullback_covector(std::span<const double> x, const Eigen::VectorXd& p) const {
    return jacobian(x).transpose() * p;
}

Eigen::VectorXd Diffeomorphism::pushforward_covector(std::span<const double> x, const Eigen::VectorXd& p) const {
    const Eigen::MatrixXd j = jacobian(x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(j.transpose());
    if (!lu.isInvertible()) throw DomainError("singular Jacobian");
    return lu.solve(p);
}

Form pullback(const Diffeomorphism& phi, const Form& a) {
    const int n = a.dim();
    if (phi.dim() != n) throw DimensionError("pullback: map and form live on charts of different dimension");
    std::vector<Form> dphi;
    for (int i = 0; i < n; ++i) dphi.push_back(exterior_derivative(Form::scalar(phi.components()[static_cast<std::size_t>(i)])));

    auto shared = std::make_shared<const Diffeomorphism>(phi);
    Form r(n, a.degree());
    for (const auto& [m, c] : a.terms()) {
        CoefficientField composed;
        if (c.kind() == FieldKind::kPolynomial) {
            composed = c.polynomial().compose(phi.components());
        } else {
            CoefficientField inner = c;
            composed = CallableField{n, [inner, shared](std::span<const double> x) { return inner.eval(shared->apply(x)); }};
        }
        Form term = Form::scalar(composed);
        for (int p = 0; p < m.valency(); ++p) term = wedge(term, dphi[static_cast<std::size_t>(m[p])]);
        r += term;
    }
    return r;
}

MetricField pullback(const Diffeomorphism& phi, const MetricField& g) {
    const int n = phi.dim();
    if (g.dim() != n) throw DimensionError("metric and map dimensions differ");
    if (g.kind() == MetricField::Kind::kCallable) {
        return MetricField::callable(n, [phi, g](std::span<const double> x) {
            const Eigen::MatrixXd j = phi.jacobian(x);
            const std::vector<double> y = phi.apply(x);
            return Eigen::MatrixXd(j.transpose() * g.eval(y) * j);
        });
    }
    std::vector<Polynomial> composed;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) composed.push_back(g.entry(i, j).compose(phi.components()));
    std::vector<Polynomial> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Polynomial e(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Polynomial& gij = composed[static_cast<std::size_t>(i * n + j)];
                    if (gij.is_zero()) continue;
                    e += phi.components()[static_cast<std::size_t>(i)].partial(a) * gij *
                         phi.components()[static_cast<std::size_t>(j)].partial(b);
                }
            out.push_back(std::move(e));
        }
    return MetricField::dense(n, std::move(out));
}

}  // namespace fibreforms
