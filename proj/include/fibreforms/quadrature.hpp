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
#include <functional>
#include <span>
#include <vector>

#include "fibreforms/coefficient_field.hpp"
#include "fibreforms/grid.hpp"

namespace fibreforms {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2*order-1.
struct GaussLegendre {
    std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int order);

/// Image of the unit cube under u -> origin + edges * u (columns are edges).
struct Parallelepiped {
    Eigen::VectorXd origin;
    Eigen::MatrixXd edges;

    int dim() const noexcept { return static_cast<int>(origin.size()); }
    double volume() const { return std::abs(edges.determinant()); }
    Eigen::VectorXd map(std::span<const double> u) const;
    static Parallelepiped from_box(const Box& b);
};

/// Flattened tensor-product rule: point q occupies points[q*dim .. q*dim+dim).
struct QuadRule {
    int dim = 0;
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const double> point(std::size_t q) const {
        return {points.data() + q * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

QuadRule tensor_rule(const Box& box, int order);
QuadRule tensor_rule(const Parallelepiped& p, int order);

/// Sum of weight * f over the rule. Nodes are evaluated in parallel and
/// reduced in index order.
double apply_rule(const QuadRule& rule, const std::function<double(std::span<const double>)>& f);

/// Integral of f * density over the box by a tensor Gauss-Legendre rule.
/// Throws DomainError when the density is not positive at some node.
double integrate(const CoefficientField& f, const Box& box, const CoefficientField& density, int order = 8);
double integrate(const std::function<double(std::span<const double>)>& f, const Box& box,
                 const std::function<double(std::span<const double>)>& density, int order = 8);

}  // namespace fibreforms
