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

#include "fibreforms/qc/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fibreforms/error.hpp"

namespace fibreforms {

Integrand metric_quadratic_integrand(const MetricField& g, double sign) {
    return {g.dim(), sign > 0 ? "metric_quadratic" : "negated_metric_quadratic",
            [g, sign](std::span<const double> x, const Eigen::VectorXd& p) {
                const Eigen::MatrixXd m = g.eval(x);
                return sign * p.dot(m.llt().solve(p));
            }};
}

Integrand quadratic_integrand(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double c) {
    if (a.rows() != a.cols() || a.rows() != b.size()) throw DimensionError("quadratic integrand shape mismatch");
    return {static_cast<int>(b.size()), "quadratic",
            [a, b, c](std::span<const double>, const Eigen::VectorXd& p) { return p.dot(a * p) + b.dot(p) + c; }};
}

Integrand norm_integrand(int dim) {
    return {dim, "norm", [](std::span<const double>, const Eigen::VectorXd& p) { return p.norm(); }};
}

Integrand double_well_integrand(int dim) {
    return {dim, "double_well", [](std::span<const double>, const Eigen::VectorXd& p) {
                Eigen::VectorXd a = p, b = p;
                a(0) -= 1.0;
                b(0) += 1.0;
                return std::min(a.squaredNorm(), b.squaredNorm());
            }};
}

Integrand affine_rescaled(const Integrand& f, double alpha, double beta) {
    if (!(alpha > 0)) throw DomainError("affine rescaling needs alpha > 0");
    auto inner = f.eval;
    return {f.dim, f.name + "_rescaled",
            [inner, alpha, beta](std::span<const double> x, const Eigen::VectorXd& p) { return alpha * inner(x, p) + beta; }};
}

Integrand cost_integrand(const GaugedCost& cost, const MetricField& g) {
    if (cost.cost.ell != 1) throw DimensionError("a 1-form integrand needs a cost of degree 1");
    const int dim = g.dim();
    return {dim, cost.cost.name, [cost, g, dim](std::span<const double> x, const Eigen::VectorXd& p) {
                FormValue w(dim, 1);
                for (int a = 0; a < dim; ++a) w.c[static_cast<std::size_t>(a)] = p(a);
                return cost(w, g.eval(x));
            }};
}

FormIntegrand cost_form_integrand(const GaugedCost& cost, const MetricField& g) {
    return {g.dim(), cost.cost.ell, cost.cost.name,
            [cost, g](std::span<const double> x, const FormValue& w) { return cost(w, g.eval(x)); }};
}

Integrand change_of_variables_reduction(const Integrand& f, const Diffeomorphism& phi, const MetricField& g) {
    if (phi.dim() != f.dim || g.dim() != f.dim) throw DimensionError("change of variables: dimension mismatch");
    auto inner = f.eval;
    return {f.dim, f.name + "_pulled_back", [inner, phi, g](std::span<const double> xh, const Eigen::VectorXd& ph) {
                const std::vector<double> x = phi.apply(xh);
                const Eigen::VectorXd p = phi.pushforward_covector(xh, ph);
                return g.sqrt_det(x) * inner(x, p);
            }};
}

double continuity_probe(const Integrand& f, std::span<const double> x, const Eigen::VectorXd& p, double h) {
    const double base = f(x, p);
    std::vector<double> y(x.begin(), x.end());
    double worst = 0.0;
    for (std::size_t a = 0; a < y.size(); ++a)
        for (double s : {-h, h}) {
            y[a] = x[a] + s;
            worst = std::max(worst, std::abs(f(y, p) - base));
            y[a] = x[a];
        }
    for (Eigen::Index a = 0; a < p.size(); ++a)
        for (double s : {-h, h}) {
            Eigen::VectorXd q = p;
            q(a) += s;
            worst = std::max(worst, std::abs(f(x, q) - base));
        }
    return worst;
}

}  // namespace fibreforms
