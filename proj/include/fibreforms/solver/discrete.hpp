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

#include <Eigen/Dense>
#include <vector>

#include "fibreforms/grid.hpp"
#include "fibreforms/relaxation/problem.hpp"

namespace fibreforms {

/// Nodal (l-1)-form on a regular grid over the problem domain. Boundary
/// nodes hold the gauge; only interior nodes are free.
class DiscreteField {
public:
    DiscreteField() = default;
    /// Every node set to the gauge. Throws DomainError below resolution 4,
    /// where the cubic extension has no free node to act on.
    static DiscreteField from_gauge(const GaugedProblem& p, int resolution);

    const Grid& grid() const noexcept { return grid_; }
    int resolution() const noexcept { return grid_.shape.empty() ? 0 : grid_.shape[0]; }
    int degree() const noexcept { return degree_; }
    const std::vector<MultiIndex>& components() const noexcept { return comps_; }
    /// values()[c][node], c indexing components().
    const std::vector<std::vector<double>>& values() const noexcept { return values_; }
    const std::vector<std::size_t>& interior() const noexcept { return interior_; }
    std::size_t dofs() const noexcept { return interior_.size() * comps_.size(); }

    /// Interior values, component-major.
    Eigen::VectorXd get_dofs() const;
    void set_dofs(const Eigen::VectorXd& v);

    /// Sampled-coefficient form on the grid.
    Form to_form() const;
    /// True when every boundary value equals `other`'s bit for bit.
    bool same_boundary(const DiscreteField& other) const;
    /// Multilinear prolongation of the offset from the gauge onto a finer
    /// grid; boundary nodes take the gauge exactly.
    DiscreteField prolongate(const GaugedProblem& p, int resolution) const;

private:
    Grid grid_;
    int degree_ = 0;
    std::vector<MultiIndex> comps_;
    std::vector<std::vector<double>> values_;
    std::vector<std::vector<double>> gauge_;
    std::vector<std::size_t> interior_;
};

/// Discrete gauged objective. The nodal field is extended by tensor cubic
/// interpolation (continuous, piecewise polynomial); d of that extension is
/// evaluated at composite Gauss-Legendre nodes on every cell, and the
/// weighted sum of (c o pr_H) sqrt(det g) is reduced in node order.
class DiscreteObjective {
public:
    DiscreteObjective(const GaugedProblem& p, int resolution, int quadrature_order);

    int resolution() const noexcept { return res_; }
    std::size_t quadrature_nodes() const noexcept { return weights_.size(); }
    bool differentiable() const noexcept { return cost_.differentiable(); }

    /// +inf when any node is +inf.
    double value(const DiscreteField& xi) const;
    /// Value and gradient with respect to get_dofs(), by the adjoint of the
    /// linear chain. Requires a differentiable cost.
    double value_and_gradient(const DiscreteField& xi, Eigen::VectorXd& grad) const;
    /// Central differences over every interior dof.
    Eigen::VectorXd fd_gradient(const DiscreteField& xi, double step = 1e-6) const;

private:
    struct Term {
        std::size_t comp;
        int axis;
        double sign;
    };
    void check(const DiscreteField& xi) const;
    std::vector<std::vector<double>> interpolated_dxi(const DiscreteField& xi) const;
    // interpolation along every axis, differentiated along `axis`
    std::vector<double> chain(std::span<const double> v, int axis) const;
    void chain_transpose(std::span<const double> adj, int axis, std::span<double> out) const;

    int dim_ = 0, ell_ = 1, res_ = 0;
    GaugedCost cost_;
    Grid grid_;
    std::vector<AxisOperator> interp_, dinterp_;
    std::vector<std::vector<Term>> terms_;  // per l-index of basis(N, l)
    std::vector<double> weights_;           // quadrature weight * sqrt(det g)
    std::vector<Eigen::MatrixXd> metric_;   // per node (a single entry when constant)
    std::vector<int> qshape_;
};

/// Convenience wrapper: objective of xi at its own resolution.
double objective(const GaugedProblem& p, const DiscreteField& xi);

}  // namespace fibreforms
