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

#include "fibreforms/bundle/chart.hpp"

#include "fibreforms/error.hpp"

namespace fibreforms {

BundleChart::BundleChart(int n_, int k_, MetricField metric_, Box box_, std::optional<Diffeomorphism> phi_)
    : n(n_), k(k_), metric(std::move(metric_)), box(std::move(box_)), phi(std::move(phi_)) {
    if (n < 1 || k < 1) throw DimensionError("bundle chart needs n >= 1 and k >= 1");
    if (n + k > kMaxDim) throw DimensionError("chart dimension exceeds the supported maximum");
    if (metric.dim() != n + k) throw DimensionError("metric dimension differs from n + k");
    if (box.dim() != n + k) throw DimensionError("chart box dimension differs from n + k");
    if (phi && phi->dim() != n + k) throw DimensionError("chart map dimension differs from n + k");
}

StarDomain::StarDomain(Box box_, std::vector<double> center_) : box(std::move(box_)), center(std::move(center_)) {
    if (center.size() != box.lo.size()) throw DimensionError("star center dimension differs from the box");
    for (std::size_t a = 0; a < center.size(); ++a)
        if (!(box.lo[a] < center[a] && center[a] < box.hi[a])) throw DomainError("star center must lie inside the box");
}

StarDomain StarDomain::centered(Box box) {
    std::vector<double> c(box.lo.size());
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = 0.5 * (box.lo[a] + box.hi[a]);
    return StarDomain(std::move(box), std::move(c));
}

Eigen::VectorXd StarDomain::face_normal(int face) const {
    Eigen::VectorXd nu = Eigen::VectorXd::Zero(dim());
    nu(face / 2) = (face % 2) ? 1.0 : -1.0;
    return nu;
}

std::vector<std::vector<double>> StarDomain::face_lattice(int face, int per_axis) const {
    const int d = dim();
    const int axis = face / 2;
    const double fixed = (face % 2) ? box.hi[static_cast<std::size_t>(axis)] : box.lo[static_cast<std::size_t>(axis)];
    std::size_t total = 1;
    for (int a = 0; a < d - 1; ++a) total *= static_cast<std::size_t>(per_axis);
    std::vector<std::vector<double>> pts;
    pts.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<double> x(static_cast<std::size_t>(d));
        std::size_t rem = t;
        for (int a = d; a-- > 0;) {
            const auto ua = static_cast<std::size_t>(a);
            if (a == axis) {
                x[ua] = fixed;
                continue;
            }
            const auto i = static_cast<int>(rem % static_cast<std::size_t>(per_axis));
            rem /= static_cast<std::size_t>(per_axis);
            const double u = per_axis == 1 ? 0.5 : static_cast<double>(i) / (per_axis - 1);
            x[ua] = box.lo[ua] + u * (box.hi[ua] - box.lo[ua]);
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

}  // namespace fibreforms
