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
#include <optional>
#include <span>
#include <vector>

#include "fibreforms/diffeomorphism.hpp"
#include "fibreforms/grid.hpp"
#include "fibreforms/metric.hpp"

namespace fibreforms {

/// Trivializing chart of a bundle: coordinates 0..n-1 are horizontal (base),
/// n..n+k-1 vertical (fibre).
struct BundleChart {
    int n = 1;
    int k = 1;
    MetricField metric;
    Box box;
    /// Optional map from a Euclidean reference box onto this chart.
    std::optional<Diffeomorphism> phi;

    BundleChart() = default;
    BundleChart(int n, int k, MetricField metric, Box box, std::optional<Diffeomorphism> phi = std::nullopt);

    int dim() const noexcept { return n + k; }
    bool horizontal(int axis) const noexcept { return axis < n; }
};

/// Box domain, star-shaped about `center`.
struct StarDomain {
    Box box;
    std::vector<double> center;

    StarDomain() = default;
    StarDomain(Box box, std::vector<double> center);
    static StarDomain centered(Box box);

    int dim() const noexcept { return box.dim(); }
    /// Faces are numbered 2*axis (lower) and 2*axis+1 (upper).
    int face_count() const noexcept { return 2 * dim(); }
    /// Outward Euclidean unit covector of a face: +-dx^axis.
    Eigen::VectorXd face_normal(int face) const;
    /// Tensor lattice of `per_axis`^(N-1) points on a face (corners included).
    std::vector<std::vector<double>> face_lattice(int face, int per_axis) const;
};

}  // namespace fibreforms
