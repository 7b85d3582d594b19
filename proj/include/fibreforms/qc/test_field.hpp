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
#include <span>
#include <string>
#include <vector>

#include "fibreforms/quadrature.hpp"
#include "fibreforms/rng.hpp"

namespace fibreforms {

enum class FieldFamily { kBubble, kHat };
const char* to_string(FieldFamily f);

/// Scalar Lipschitz function on the unit cube vanishing on its boundary,
/// written in the normalized coordinates u of a subdomain.
///
/// Bubble: A * prod_a (1 - s_a^2) * P(s), s = 2u - 1, P of degree <= 2.
/// Hat: piecewise linear on the Kuhn triangulation of an m^N cell grid,
/// with per-axis reflections choosing the diagonal in each direction;
/// nodal values live on interior nodes only.
class TestField {
public:
    static TestField bubble(int dim, double amplitude, std::vector<double> poly);
    static TestField hat(int dim, int cells, std::vector<int> flips, std::vector<double> nodal);
    static TestField zero(int dim);
    /// Random member of a family (amplitudes spread over several decades).
    static TestField random(FieldFamily family, int dim, CounterRng& rng);

    FieldFamily family() const noexcept { return family_; }
    int dim() const noexcept { return dim_; }
    int cells() const noexcept { return cells_; }
    const std::vector<int>& flips() const noexcept { return flips_; }

    double value(std::span<const double> u) const;
    Eigen::VectorXd grad(std::span<const double> u) const;

    /// Free parameters (amplitude and P coefficients, or nodal values).
    std::vector<double> params() const;
    void set_params(std::span<const double> p);

    /// Quadrature nodes on the unit cube adapted to the field: a tensor rule
    /// for bubbles, a collapsed-coordinate rule on every simplex for hats
    /// (so each node sees a single linear piece).
    QuadRule rule(int order) const;
    /// max |grad_u zeta| over the nodes of rule(order) (exact for hats).
    double lipschitz_u(int order = 6) const;

    std::string describe() const;

private:
    FieldFamily family_ = FieldFamily::kBubble;
    int dim_ = 0;
    double amplitude_ = 0.0;
    std::vector<double> poly_;  // 1, s_a, s_a s_b (a <= b)
    int cells_ = 0;
    std::vector<int> flips_;
    std::vector<double> nodal_;  // (cells-1)^N interior nodes, row-major

    double node_value(std::span<const int> idx) const;
};

/// Number of P coefficients for a bubble in dim variables.
int bubble_poly_size(int dim);

}  // namespace fibreforms
