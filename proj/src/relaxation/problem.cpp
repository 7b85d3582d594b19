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

#include "fibreforms/relaxation/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fibreforms/bundle/homotopy.hpp"
#include "fibreforms/error.hpp"
#include "fibreforms/parallel.hpp"
#include "fibreforms/quadrature.hpp"

namespace fibreforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int order_of(const GaugedProblem& p, int order) { return order > 0 ? order : p.disc.quadrature_order; }

// sum of w_q * c(x_q) * sqrt(det g(x_q)); +inf dominates
double integrate_cost(const GaugedProblem& p, int order,
                      const std::function<double(std::span<const double>, const Eigen::MatrixXd&)>& pointwise) {
    const QuadRule rule = tensor_rule(p.domain.box, order);
    std::vector<double> vals(rule.size());
    parallel_for(rule.size(), [&](std::size_t q) {
        const auto x = rule.point(q);
        const Eigen::MatrixXd g = p.chart.metric.eval(x);
        const double c = pointwise(x, g);
        vals[q] = c == kInf ? kInf : c * std::sqrt(g.determinant());
    });
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        if (vals[q] == kInf) return kInf;
        acc += rule.weights[q] * vals[q];
    }
    return acc;
}

}  // namespace

GaugedProblem relax(const BundleChart& chart, const StarDomain& domain, CostFunction cost, Form gauge, double s,
                    Discretization disc) {
    const int dim = chart.dim();
    if (domain.dim() != dim) throw DimensionError("domain and chart dimensions differ");
    if (cost.ell < 1 || cost.ell > dim) throw DimensionError("cost degree must lie in [1, n+k]");
    if (gauge.dim() != dim) throw DimensionError("gauge and chart dimensions differ");
    if (gauge.degree() != cost.ell - 1) throw DimensionError("gauge degree must be l - 1");
    if (!(s > 1.0)) throw DomainError("Sobolev exponent must exceed 1");
    for (std::size_t a = 0; a < domain.box.lo.size(); ++a)
        if (domain.box.lo[a] < chart.box.lo[a] || domain.box.hi[a] > chart.box.hi[a])
            throw DomainError("domain box leaves the chart box");
    return GaugedProblem{chart, domain, std::move(cost), std::move(gauge), s, disc};
}

double gauged_objective(const GaugedProblem& p, const Form& xi, int order) {
    if (xi.dim() != p.chart.dim() || xi.degree() != p.ell() - 1) throw DimensionError("potential has the wrong shape");
    const Form dxi = exterior_derivative(xi);
    const GaugedCost c = p.gauged();
    return integrate_cost(p, order_of(p, order), [&](std::span<const double> x, const Eigen::MatrixXd& g) {
        return c(dxi.eval(x), g);
    });
}

double tuple_objective(const GaugedProblem& p, const ShadowData& sd, int order) {
    if (sd.ell != p.ell()) throw DimensionError("tuple degree differs from the cost degree");
    const ProjectedTuple t = horizontal_projection(shadow_reconstruct(sd), p.chart.n);
    return integrate_cost(p, order_of(p, order), [&](std::span<const double> x, const Eigen::MatrixXd& g) {
        ShadowValue v{t.f.eval(x), {}};
        for (const auto& e : t.entries) v.g.push_back(e.g.eval(x));
        return p.cost(v, g);
    });
}

AdmissibilityReport check_admissible(const Form& f, const std::vector<Form>& gs, const std::vector<Form>& thetas,
                                     const Form& gauge, const StarDomain& dom, const BundleChart& chart,
                                     double tolerance, int per_axis) {
    if (gs.size() != thetas.size()) throw DimensionError("need one theta per g");
    Form w = f;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].degree() + thetas[i].degree() != f.degree()) throw DimensionError("theta is not complementary to g");
        w += wedge(gs[i], thetas[i]);
    }
    AdmissibilityReport r;
    const ClosednessReport cr = check_closedness(w, tolerance, &dom.box);
    r.closed = cr.closed;
    r.closedness_residual = cr.max_residual;

    Form total = w;
    if (gauge.degree() + 1 != w.degree()) throw DimensionError("gauge degree must be l - 1");
    total += exterior_derivative(gauge);
    const int ell = total.degree();
    for (int face = 0; face < dom.face_count(); ++face) {
        const int axis = face / 2;
        for (const auto& x : dom.face_lattice(face, per_axis)) {
            const Eigen::MatrixXd g = chart.metric.eval(x);
            const Eigen::MatrixXd ginv = g.inverse();
            const Eigen::VectorXd nu = dom.face_normal(face) / std::sqrt(ginv(axis, axis));
            const Eigen::VectorXd sharp = ginv * nu;
            const FormValue v = total.eval(x);
            if (ell == 0) continue;
            const FormValue c = interior(std::span(sharp.data(), static_cast<std::size_t>(sharp.size())), v);
            const Eigen::Map<const Eigen::VectorXd> cv(c.c.data(), static_cast<Eigen::Index>(c.c.size()));
            const double pairing = std::sqrt(std::max(0.0, cv.dot(covector_gram(ginv, ell - 1) * cv)));
            r.max_normal_pairing = std::max(r.max_normal_pairing, pairing);
        }
    }
    r.admissible = r.closed && r.max_normal_pairing < tolerance;
    return r;
}

PotentialReport potential_from_tuple(const GaugedProblem& p, const ShadowData& sd, int per_axis) {
    if (sd.ell != p.ell()) throw DimensionError("tuple degree differs from the problem degree");
    const Form h = shadow_reconstruct(sd);
    const Form shifted = h + exterior_derivative(p.gauge);
    PotentialReport r;
    const Form k = homotopy_operator(shifted, p.domain.center);
    r.xi = k - p.gauge;
    for (int face = 0; face < p.domain.face_count(); ++face)
        for (const auto& x : p.domain.face_lattice(face, per_axis))
            for (double v : k.eval(x).c) r.trace_defect = std::max(r.trace_defect, std::abs(v));
    return r;
}

CoercivityReport coercivity_check(const CostFunction& cost, const std::vector<CoercivitySample>& samples,
                                  const MetricField& g, double s, double rel_tol) {
    if (samples.empty()) throw DomainError("coercivity check needs samples");
    const std::size_t m = samples.size();
    std::vector<double> r(m), c(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Eigen::MatrixXd gm = g.eval(samples[i].x);
        r[i] = std::pow(tuple_norm(samples[i].tuple, gm), s);
        c[i] = cost(samples[i].tuple, gm);
    }
    CoercivityReport rep;
    if (cost.growth) {
        rep.declared = true;
        rep.fitted = *cost.growth;
    } else {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
        const std::size_t fit = std::max<std::size_t>(2, (m + 1) / 2);
        double lo = kInf, hi = -kInf;
        for (std::size_t i = 0; i + 1 < std::min(fit, m); ++i) {
            const std::size_t a = order[i], b = order[i + 1];
            if (r[b] - r[a] <= 0.0) continue;
            const double slope = (c[b] - c[a]) / (r[b] - r[a]);
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
        if (lo == kInf) lo = hi = 0.0;
        double a1 = kInf, a2 = -kInf;
        for (std::size_t i = 0; i < std::min(fit, m); ++i) {
            const std::size_t k = order[i];
            a1 = std::min(a1, c[k] - lo * r[k]);
            a2 = std::max(a2, c[k] - hi * r[k]);
        }
        rep.fitted = CostGrowth{a1, a2, lo, hi, s};
    }
    const CostGrowth& k = rep.fitted;
    for (std::size_t i = 0; i < m; ++i) {
        const double slack = rel_tol * (1.0 + std::abs(c[i]));
        if (k.a1 + k.b1 * r[i] > c[i] + slack || c[i] > k.a2 + k.b2 * r[i] + slack) rep.violations.push_back(i);
    }
    rep.holds = rep.violations.empty() && k.b1 > 0.0 && k.b2 > 0.0;
    return rep;
}

}  // namespace fibreforms
