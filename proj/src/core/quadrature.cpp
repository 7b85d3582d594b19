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

#include "fibreforms/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fibreforms/error.hpp"
#include "fibreforms/parallel.hpp"

namespace fibreforms {

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1 || order > 256) throw DomainError("quadrature order out of range");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(order); it != cache.end()) return it->second;

    GaussLegendre r;
    const int n = order;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[static_cast<std::size_t>(i)] = -x;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        r.weights[static_cast<std::size_t>(i)] = r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return cache.emplace(order, std::move(r)).first->second;
}

Eigen::VectorXd Parallelepiped::map(std::span<const double> u) const {
    return origin + edges * Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
}

Parallelepiped Parallelepiped::from_box(const Box& b) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    Parallelepiped p{Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index a = 0; a < n; ++a) {
        p.origin(a) = b.lo[static_cast<std::size_t>(a)];
        p.edges(a, a) = b.hi[static_cast<std::size_t>(a)] - b.lo[static_cast<std::size_t>(a)];
    }
    return p;
}

namespace {

// Tensor rule on [0,1]^dim.
QuadRule unit_rule(int dim, int order) {
    const auto& gl = gauss_legendre(order);
    QuadRule r;
    r.dim = dim;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(order);
    r.points.resize(total * static_cast<std::size_t>(dim));
    r.weights.resize(total);
    for (std::size_t q = 0; q < total; ++q) {
        std::size_t rem = q;
        double w = 1.0;
        for (int a = dim; a-- > 0;) {
            const std::size_t k = rem % static_cast<std::size_t>(order);
            rem /= static_cast<std::size_t>(order);
            r.points[q * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] = 0.5 * (gl.nodes[k] + 1.0);
            w *= 0.5 * gl.weights[k];
        }
        r.weights[q] = w;
    }
    return r;
}

}  // namespace

QuadRule tensor_rule(const Box& box, int order) {
    QuadRule r = unit_rule(box.dim(), order);
    const double vol = box.volume();
    const auto d = static_cast<std::size_t>(box.dim());
    for (std::size_t q = 0; q < r.size(); ++q) {
        for (std::size_t a = 0; a < d; ++a) {
            double& x = r.points[q * d + a];
            x = box.lo[a] + (box.hi[a] - box.lo[a]) * x;
        }
        r.weights[q] *= vol;
    }
    return r;
}

QuadRule tensor_rule(const Parallelepiped& p, int order) {
    QuadRule r = unit_rule(p.dim(), order);
    const double vol = p.volume();
    const auto d = static_cast<std::size_t>(p.dim());
    for (std::size_t q = 0; q < r.size(); ++q) {
        const Eigen::VectorXd x = p.map(r.point(q));
        for (std::size_t a = 0; a < d; ++a) r.points[q * d + a] = x(static_cast<Eigen::Index>(a));
        r.weights[q] *= vol;
    }
    return r;
}

double apply_rule(const QuadRule& rule, const std::function<double(std::span<const double>)>& f) {
    std::vector<double> vals(rule.size());
    parallel_for(rule.size(), [&](std::size_t q) { vals[q] = f(rule.point(q)); });
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) acc += rule.weights[q] * vals[q];
    return acc;
}

double integrate(const std::function<double(std::span<const double>)>& f, const Box& box,
                 const std::function<double(std::span<const double>)>& density, int order) {
    const QuadRule rule = tensor_rule(box, order);
    return apply_rule(rule, [&](std::span<const double> x) {
        const double rho = density(x);
        if (!(rho > 0.0)) throw DomainError("nonpositive density at a quadrature node");
        return f(x) * rho;
    });
}

double integrate(const CoefficientField& f, const Box& box, const CoefficientField& density, int order) {
    if (f.dim() != box.dim() || density.dim() != box.dim()) throw DimensionError("integrand and box dimensions differ");
    return integrate([&](std::span<const double> x) { return f.eval(x); }, box,
                     [&](std::span<const double> x) { return density.eval(x); }, order);
}

}  // namespace fibreforms
