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
#include <cstdint>
#include <span>
#include <vector>

#include "fibreforms/form.hpp"
#include "fibreforms/metric.hpp"

namespace fibreforms {

struct ComassOptions {
    int restarts = 32;
    int max_sweeps = 200;
    std::uint64_t seed = 0x636f6d617373ULL;
    /// Closed forms for degrees 0, 1, N-1 and N (every such covector is simple).
    bool exact_shortcuts = true;
    /// Also report the maximizing vectors when a shortcut gives the value.
    bool want_maximizer = true;
};

struct ComassResult {
    double value = 0.0;
    /// v_1..v_l with g(v_1^...^v_l, v_1^...^v_l) = 1 and psi(v_1..v_l) = value
    /// (up to the ascent tolerance). Empty for degree 0.
    std::vector<Eigen::VectorXd> maximizer;
    /// d value / d psi_I over basis(N, l): the minors of the maximizer.
    Eigen::VectorXd gradient;
};

/// Comass of the l-covector psi under the metric g at one point: the
/// supremum of psi(v_1, ..., v_l) over g-orthonormal frames. Degrees 2..N-2
/// use multi-start block-coordinate ascent on a product of unit spheres.
ComassResult comass(const FormValue& psi, const Eigen::MatrixXd& g, const ComassOptions& opt = {});
ComassResult comass(const Form& a, const MetricField& g, std::span<const double> x, const ComassOptions& opt = {});

/// psi(v_1, ..., v_l) = sum_I psi_I det(V[I, :]).
double evaluate_on_vectors(const FormValue& psi, std::span<const Eigen::VectorXd> v);

}  // namespace fibreforms
