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

#include "fibreforms/solver/discrete.hpp"

#include <cmath>
#include <limits>

#include "fibreforms/error.hpp"
#include "fibreforms/parallel.hpp"
#include "fibreforms/quadrature.hpp"
#include "fibreforms/simd/kernels.hpp"

namespace fibreforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Grid grid_over(const Box& box, int resolution) {
    return Grid{box, std::vector<int>(box.lo.size(), resolution)};
}

}  // namespace

DiscreteField DiscreteField::from_gauge(const GaugedProblem& p, int resolution) {
    if (resolution < 4) throw DomainError("no interior degrees of freedom");
    DiscreteField f;
    f.grid_ = grid_over(p.domain.box, resolution);
    f.degree_ = p.ell() - 1;
    f.comps_ = basis(p.chart.dim(), f.degree_);
    const std::size_t n = f.grid_.size();
    std::vector<double> x(static_cast<std::size_t>(p.chart.dim()));
    for (const auto& m : f.comps_) {
        const CoefficientField c = p.gauge.coefficient(m);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            f.grid_.node(i, x);
            v[i] = c.eval(x);
        }
        f.values_.push_back(v);
        f.gauge_.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!f.grid_.on_boundary(i)) f.interior_.push_back(i);
    return f;
}

Eigen::VectorXd DiscreteField::get_dofs() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dofs()));
    Eigen::Index k = 0;
    for (const auto& comp : values_)
        for (std::size_t i : interior_) v(k++) = comp[i];
    return v;
}

void DiscreteField::set_dofs(const Eigen::VectorXd& v) {
    if (static_cast<std::size_t>(v.size()) != dofs()) throw DimensionError("dof vector has the wrong length");
    Eigen::Index k = 0;
    for (auto& comp : values_)
        for (std::size_t i : interior_) comp[i] = v(k++);
}

Form DiscreteField::to_form() const {
    Form f(grid_.dim(), degree_);
    for (std::size_t c = 0; c < comps_.size(); ++c) f.add_term(comps_[c], SampledField{grid_, values_[c]});
    return f;
}

bool DiscreteField::same_boundary(const DiscreteField& o) const {
    if (!(grid_ == o.grid_) || comps_.size() != o.comps_.size()) return false;
    for (std::size_t c = 0; c < comps_.size(); ++c)
        for (std::size_t i = 0; i < grid_.size(); ++i)
            if (grid_.on_boundary(i) && std::bit_cast<std::uint64_t>(values_[c][i]) != std::bit_cast<std::uint64_t>(o.values_[c][i]))
                return false;
    return true;
}

DiscreteField DiscreteField::prolongate(const GaugedProblem& p, int resolution) const {
    DiscreteField fine = from_gauge(p, resolution);
    const int dim = grid_.dim();
    std::vector<double> x(static_cast<std::size_t>(dim));
    std::vector<int> lo(static_cast<std::size_t>(dim));
    std::vector<double> t(static_cast<std::size_t>(dim));
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        std::vector<double> offset(grid_.size());
        for (std::size_t i = 0; i < offset.size(); ++i) offset[i] = values_[c][i] - gauge_[c][i];
        for (std::size_t i : fine.interior_) {
            fine.grid_.node(i, x);
            for (int a = 0; a < dim; ++a) {
                const auto ua = static_cast<std::size_t>(a);
                const double s = (x[ua] - grid_.box.lo[ua]) / grid_.spacing(a);
                lo[ua] = std::clamp(static_cast<int>(std::floor(s)), 0, grid_.shape[ua] - 2);
                t[ua] = s - lo[ua];
            }
            double acc = 0.0;
            for (std::size_t corner = 0; corner < (std::size_t{1} << dim); ++corner) {
                double w = 1.0;
                std::size_t flat = 0;
                for (int a = 0; a < dim; ++a) {
                    const auto ua = static_cast<std::size_t>(a);
                    const bool up = (corner >> ua) & 1U;
                    w *= up ? t[ua] : 1.0 - t[ua];
                    flat += static_cast<std::size_t>(lo[ua] + (up ? 1 : 0)) * grid_.stride(a);
                }
                if (w != 0.0) acc += w * offset[flat];
            }
            fine.values_[c][i] = fine.gauge_[c][i] + acc;
        }
    }
    return fine;
}

DiscreteObjective::DiscreteObjective(const GaugedProblem& p, int resolution, int quadrature_order)
    : dim_(p.chart.dim()), ell_(p.ell()), res_(resolution), cost_(p.gauged()) {
    if (resolution < 4) throw DomainError("no interior degrees of freedom");
    if (quadrature_order < 1) throw DomainError("quadrature order must be positive");
    grid_ = grid_over(p.domain.box, resolution);
    const GaussLegendre& gl = gauss_legendre(quadrature_order);
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(dim_)), w1(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const double h = grid_.spacing(a);
        for (int cell = 0; cell + 1 < resolution; ++cell) {
            const double left = grid_.box.lo[ua] + cell * h;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                nodes[ua].push_back(left + 0.5 * h * (gl.nodes[q] + 1.0));
                w1[ua].push_back(0.5 * h * gl.weights[q]);
            }
        }
        interp_.push_back(cubic_interp_operator(resolution, grid_.box.lo[ua], h, nodes[ua]));
        dinterp_.push_back(cubic_derivative_operator(resolution, grid_.box.lo[ua], h, nodes[ua]));
        qshape_.push_back(static_cast<int>(nodes[ua].size()));
    }
    const auto& lower = basis(dim_, ell_ - 1);
    for (const auto& big : basis(dim_, ell_)) {
        std::vector<Term> ts;
        for (std::size_t c = 0; c < lower.size(); ++c)
            for (int j = 0; j < dim_; ++j) {
                const auto m = MultiIndex::merge(MultiIndex::from_sorted({j}), lower[c]);
                if (m && m->first == big) ts.push_back({c, j, static_cast<double>(m->second)});
            }
        terms_.push_back(std::move(ts));
    }
    std::size_t total = 1;
    for (int s : qshape_) total *= static_cast<std::size_t>(s);
    weights_.resize(total);
    const bool constant_metric = p.chart.metric.kind() == MetricField::Kind::kEuclidean;
    if (constant_metric) metric_.push_back(p.chart.metric.eval(std::vector<double>(static_cast<std::size_t>(dim_), 0.0)));
    else metric_.resize(total);
    const MetricField& g = p.chart.metric;
    parallel_for(total, [&](std::size_t q) {
        std::vector<double> x(static_cast<std::size_t>(dim_));
        std::size_t rem = q;
        double w = 1.0;
        for (std::size_t a = static_cast<std::size_t>(dim_); a-- > 0;) {
            const std::size_t i = rem % static_cast<std::size_t>(qshape_[a]);
            rem /= static_cast<std::size_t>(qshape_[a]);
            x[a] = nodes[a][i];
            w *= w1[a][i];
        }
        if (constant_metric) {
            weights_[q] = w * g.sqrt_det(x);
        } else {
            metric_[q] = g.eval(x);
            weights_[q] = w * std::sqrt(metric_[q].determinant());
        }
    });
}

void DiscreteObjective::check(const DiscreteField& xi) const {
    if (!(xi.grid() == grid_) || xi.degree() != ell_ - 1) throw DimensionError("field resolution or degree mismatch");
}

std::vector<double> DiscreteObjective::chain(std::span<const double> v, int axis) const {
    std::vector<double> cur(v.begin(), v.end());
    std::vector<int> shape(grid_.shape);
    for (int a = 0; a < dim_; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        cur = apply_axis(a == axis ? dinterp_[ua] : interp_[ua], cur, shape, a);
        shape[ua] = qshape_[ua];
    }
    return cur;
}

void DiscreteObjective::chain_transpose(std::span<const double> adj, int axis, std::span<double> out) const {
    std::vector<double> cur(adj.begin(), adj.end());
    std::vector<int> shape(qshape_);
    for (int a = dim_; a-- > 0;) {
        const auto ua = static_cast<std::size_t>(a);
        std::vector<int> in_shape = shape;
        in_shape[ua] = grid_.shape[ua];
        std::size_t in_size = 1;
        for (int s : in_shape) in_size *= static_cast<std::size_t>(s);
        std::vector<double> prev(in_size, 0.0);
        apply_axis_transpose(a == axis ? dinterp_[ua] : interp_[ua], cur, in_shape, a, prev);
        cur = std::move(prev);
        shape = std::move(in_shape);
    }
    simd::axpy(1.0, cur, out);
}

std::vector<std::vector<double>> DiscreteObjective::interpolated_dxi(const DiscreteField& xi) const {
    const auto ncomp = xi.components().size();
    // derivative of the interpolant of v_c along j, computed once per (c, j)
    std::vector<std::vector<std::vector<double>>> dv(ncomp, std::vector<std::vector<double>>(static_cast<std::size_t>(dim_)));
    for (const auto& ts : terms_)
        for (const Term& t : ts) {
            auto& slot = dv[t.comp][static_cast<std::size_t>(t.axis)];
            if (slot.empty()) slot = chain(xi.values()[t.comp], t.axis);
        }
    std::vector<std::vector<double>> out;
    for (const auto& ts : terms_) {
        std::vector<double> acc(weights_.size(), 0.0);
        for (const Term& t : ts) simd::axpy(t.sign, dv[t.comp][static_cast<std::size_t>(t.axis)], acc);
        out.push_back(std::move(acc));
    }
    return out;
}

double DiscreteObjective::value(const DiscreteField& xi) const {
    check(xi);
    const auto dxi = interpolated_dxi(xi);
    std::vector<double> vals(weights_.size());
    parallel_for(weights_.size(), [&](std::size_t q) {
        FormValue w(dim_, ell_);
        for (std::size_t j = 0; j < dxi.size(); ++j) w.c[j] = dxi[j][q];
        const double c = cost_(w, metric_.size() == 1 ? metric_[0] : metric_[q]);
        if (std::isnan(c)) throw DomainError("cost returned NaN");
        vals[q] = c;
    });
    for (double v : vals)
        if (v == kInf) return kInf;
    return simd::dot(weights_, vals);
}

double DiscreteObjective::value_and_gradient(const DiscreteField& xi, Eigen::VectorXd& grad) const {
    check(xi);
    if (!cost_.differentiable()) throw DomainError("cost is not differentiable");
    const auto dxi = interpolated_dxi(xi);
    const std::size_t nq = weights_.size(), nj = dxi.size();
    std::vector<double> vals(nq);
    std::vector<std::vector<double>> adj(nj, std::vector<double>(nq));
    parallel_for(nq, [&](std::size_t q) {
        FormValue w(dim_, ell_);
        for (std::size_t j = 0; j < nj; ++j) w.c[j] = dxi[j][q];
        const Eigen::MatrixXd& g = metric_.size() == 1 ? metric_[0] : metric_[q];
        const double c = cost_(w, g);
        if (std::isnan(c)) throw DomainError("cost returned NaN");
        vals[q] = c;
        if (c == kInf) return;
        const FormValue dc = cost_.gradient(w, g);
        for (std::size_t j = 0; j < nj; ++j) adj[j][q] = weights_[q] * dc.c[j];
    });
    for (double v : vals)
        if (v == kInf) {
            grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(xi.dofs()));
            return kInf;
        }
    const double value = simd::dot(weights_, vals);

    const auto ncomp = xi.components().size();
    std::vector<std::vector<double>> adj_v(ncomp, std::vector<double>(grid_.size(), 0.0));
    for (std::size_t j = 0; j < nj; ++j)
        for (const Term& t : terms_[j]) {
            std::vector<double> scaled(adj[j].size());
            for (std::size_t q = 0; q < scaled.size(); ++q) scaled[q] = t.sign * adj[j][q];
            chain_transpose(scaled, t.axis, adj_v[t.comp]);
        }
    grad.resize(static_cast<Eigen::Index>(xi.dofs()));
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < ncomp; ++c)
        for (std::size_t i : xi.interior()) grad(k++) = adj_v[c][i];
    return value;
}

Eigen::VectorXd DiscreteObjective::fd_gradient(const DiscreteField& xi, double step) const {
    check(xi);
    const Eigen::VectorXd x = xi.get_dofs();
    Eigen::VectorXd g(x.size());
    DiscreteField probe = xi;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = step * (1.0 + std::abs(x(i)));
        Eigen::VectorXd y = x;
        y(i) = x(i) + h;
        probe.set_dofs(y);
        const double up = value(probe);
        y(i) = x(i) - h;
        probe.set_dofs(y);
        const double dn = value(probe);
        g(i) = (up - dn) / (2.0 * h);
    }
    return g;
}

double objective(const GaugedProblem& p, const DiscreteField& xi) {
    if (xi.grid().box.lo != p.domain.box.lo || xi.grid().box.hi != p.domain.box.hi)
        throw DimensionError("field grid does not cover the problem domain");
    return DiscreteObjective(p, xi.resolution(), p.disc.quadrature_order).value(xi);
}

}  // namespace fibreforms
