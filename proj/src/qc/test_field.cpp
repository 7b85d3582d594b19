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

#include "fibreforms/qc/test_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fibreforms/error.hpp"

namespace fibreforms {

const char* to_string(FieldFamily f) { return f == FieldFamily::kBubble ? "bubble" : "hat"; }

int bubble_poly_size(int dim) { return 1 + dim + dim * (dim + 1) / 2; }

TestField TestField::bubble(int dim, double amplitude, std::vector<double> poly) {
    if (static_cast<int>(poly.size()) != bubble_poly_size(dim)) throw DimensionError("bubble polynomial size mismatch");
    TestField t;
    t.family_ = FieldFamily::kBubble;
    t.dim_ = dim;
    t.amplitude_ = amplitude;
    t.poly_ = std::move(poly);
    return t;
}

TestField TestField::hat(int dim, int cells, std::vector<int> flips, std::vector<double> nodal) {
    if (cells < 2) throw DomainError("hat fields need at least 2 cells per axis");
    std::size_t interior = 1;
    for (int a = 0; a < dim; ++a) interior *= static_cast<std::size_t>(cells - 1);
    if (nodal.size() != interior || flips.size() != static_cast<std::size_t>(dim))
        throw DimensionError("hat field parameter size mismatch");
    TestField t;
    t.family_ = FieldFamily::kHat;
    t.dim_ = dim;
    t.cells_ = cells;
    t.flips_ = std::move(flips);
    t.nodal_ = std::move(nodal);
    return t;
}

TestField TestField::zero(int dim) {
    return bubble(dim, 0.0, std::vector<double>(static_cast<std::size_t>(bubble_poly_size(dim)), 0.0));
}

TestField TestField::random(FieldFamily family, int dim, CounterRng& rng) {
    const double scale = std::exp(rng.uniform(std::log(1e-2), std::log(2.0)));
    if (family == FieldFamily::kBubble) {
        std::vector<double> poly(static_cast<std::size_t>(bubble_poly_size(dim)));
        for (double& c : poly) c = rng.normal();
        return bubble(dim, scale, std::move(poly));
    }
    const int cells = rng.uniform_int(2, 4);
    std::vector<int> flips(static_cast<std::size_t>(dim));
    for (int& f : flips) f = rng.uniform_int(0, 1);
    std::size_t interior = 1;
    for (int a = 0; a < dim; ++a) interior *= static_cast<std::size_t>(cells - 1);
    std::vector<double> nodal(interior);
    for (double& v : nodal) v = scale * rng.normal() / cells;
    return hat(dim, cells, std::move(flips), std::move(nodal));
}

double TestField::node_value(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        const int i = idx[static_cast<std::size_t>(a)];
        if (i <= 0 || i >= cells_) return 0.0;
        flat = flat * static_cast<std::size_t>(cells_ - 1) + static_cast<std::size_t>(i - 1);
    }
    return nodal_[flat];
}

namespace {

// Kuhn simplex containing local coordinates t (after reflection): the
// order of axes by decreasing t.
std::vector<int> kuhn_order(std::span<const double> t) {
    std::vector<int> order(t.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t[static_cast<std::size_t>(a)] > t[static_cast<std::size_t>(b)]; });
    return order;
}

}  // namespace

double TestField::value(std::span<const double> u) const {
    const auto n = static_cast<std::size_t>(dim_);
    if (family_ == FieldFamily::kBubble) {
        std::vector<double> s(n);
        double b = 1.0;
        for (std::size_t a = 0; a < n; ++a) {
            s[a] = 2.0 * u[a] - 1.0;
            b *= 1.0 - s[a] * s[a];
        }
        double p = poly_[0];
        std::size_t k = 1;
        for (std::size_t a = 0; a < n; ++a) p += poly_[k++] * s[a];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = a; c < n; ++c) p += poly_[k++] * s[a] * s[c];
        return amplitude_ * b * p;
    }
    std::vector<int> cell(n), vtx(n);
    std::vector<double> t(n);
    for (std::size_t a = 0; a < n; ++a) {
        const double x = u[a] * cells_;
        cell[a] = std::clamp(static_cast<int>(std::floor(x)), 0, cells_ - 1);
        t[a] = x - cell[a];
        if (flips_[a]) t[a] = 1.0 - t[a];
    }
    const std::vector<int> order = kuhn_order(t);
    // vertex 0 is the (reflected) cell origin; vertex i adds axis order[i-1]
    for (std::size_t a = 0; a < n; ++a) vtx[a] = cell[a] + (flips_[a] ? 1 : 0);
    double prev = 1.0, acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double next = i < n ? t[static_cast<std::size_t>(order[i])] : 0.0;
        acc += (prev - next) * node_value(vtx);
        if (i < n) {
            const auto a = static_cast<std::size_t>(order[i]);
            vtx[a] += flips_[a] ? -1 : 1;
        }
        prev = next;
    }
    return acc;
}

Eigen::VectorXd TestField::grad(std::span<const double> u) const {
    const auto n = static_cast<std::size_t>(dim_);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
    if (family_ == FieldFamily::kBubble) {
        std::vector<double> s(n), q(n);
        double b = 1.0;
        for (std::size_t a = 0; a < n; ++a) {
            s[a] = 2.0 * u[a] - 1.0;
            q[a] = 1.0 - s[a] * s[a];
            b *= q[a];
        }
        double p = poly_[0];
        Eigen::VectorXd dp = Eigen::VectorXd::Zero(dim_);
        std::size_t k = 1;
        for (std::size_t a = 0; a < n; ++a) {
            p += poly_[k] * s[a];
            dp(static_cast<Eigen::Index>(a)) += poly_[k++];
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = a; c < n; ++c) {
                p += poly_[k] * s[a] * s[c];
                dp(static_cast<Eigen::Index>(a)) += poly_[k] * s[c];
                dp(static_cast<Eigen::Index>(c)) += poly_[k] * s[a];
                ++k;
            }
        for (std::size_t a = 0; a < n; ++a) {
            double others = 1.0;
            for (std::size_t c = 0; c < n; ++c)
                if (c != a) others *= q[c];
            const double db = -2.0 * s[a] * others;
            // d/du = 2 d/ds
            g(static_cast<Eigen::Index>(a)) = 2.0 * amplitude_ * (db * p + b * dp(static_cast<Eigen::Index>(a)));
        }
        return g;
    }
    std::vector<int> cell(n), vtx(n);
    std::vector<double> t(n);
    for (std::size_t a = 0; a < n; ++a) {
        const double x = u[a] * cells_;
        cell[a] = std::clamp(static_cast<int>(std::floor(x)), 0, cells_ - 1);
        t[a] = x - cell[a];
        if (flips_[a]) t[a] = 1.0 - t[a];
    }
    const std::vector<int> order = kuhn_order(t);
    for (std::size_t a = 0; a < n; ++a) vtx[a] = cell[a] + (flips_[a] ? 1 : 0);
    double prev_val = node_value(vtx);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(order[i]);
        vtx[a] += flips_[a] ? -1 : 1;
        const double v = node_value(vtx);
        g(static_cast<Eigen::Index>(a)) = (v - prev_val) * cells_ * (flips_[a] ? -1.0 : 1.0);
        prev_val = v;
    }
    return g;
}

std::vector<double> TestField::params() const {
    if (family_ == FieldFamily::kBubble) {
        std::vector<double> p{amplitude_};
        p.insert(p.end(), poly_.begin(), poly_.end());
        return p;
    }
    return nodal_;
}

void TestField::set_params(std::span<const double> p) {
    if (family_ == FieldFamily::kBubble) {
        if (p.size() != poly_.size() + 1) throw DimensionError("bubble parameter size mismatch");
        amplitude_ = p[0];
        std::copy(p.begin() + 1, p.end(), poly_.begin());
        return;
    }
    if (p.size() != nodal_.size()) throw DimensionError("hat parameter size mismatch");
    std::copy(p.begin(), p.end(), nodal_.begin());
}

QuadRule TestField::rule(int order) const {
    const auto n = static_cast<std::size_t>(dim_);
    const QuadRule cube = tensor_rule(Box::unit(dim_), order);
    if (family_ == FieldFamily::kBubble) return cube;

    // collapsed coordinates: t_{o1} = w1, t_{o2} = w1 w2, ..., Jacobian prod w_i^{N-i}
    std::vector<std::vector<double>> simplex_pts;
    std::vector<double> simplex_w;
    for (std::size_t q = 0; q < cube.size(); ++q) {
        const auto w = cube.point(q);
        std::vector<double> y(n);
        double jac = 1.0, run = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            run *= w[i];
            y[i] = run;
            for (std::size_t e = i + 1; e < n; ++e) jac *= w[i];
        }
        simplex_pts.push_back(std::move(y));
        simplex_w.push_back(cube.weights[q] * jac);
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::size_t ncell = 1;
    for (std::size_t a = 0; a < n; ++a) ncell *= static_cast<std::size_t>(cells_);
    QuadRule r;
    r.dim = dim_;
    const double cell_vol = std::pow(1.0 / cells_, dim_);
    for (std::size_t c = 0; c < ncell; ++c) {
        std::vector<int> cell(n);
        std::size_t rem = c;
        for (std::size_t a = n; a-- > 0;) {
            cell[a] = static_cast<int>(rem % static_cast<std::size_t>(cells_));
            rem /= static_cast<std::size_t>(cells_);
        }
        for (const auto& pm : perms) {
            for (std::size_t q = 0; q < simplex_pts.size(); ++q) {
                for (std::size_t a = 0; a < n; ++a) {
                    // local coordinate of axis pm[i] is the i-th collapsed coordinate
                    double t = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        if (static_cast<std::size_t>(pm[i]) == a) t = simplex_pts[q][i];
                    if (flips_[a]) t = 1.0 - t;
                    r.points.push_back((cell[a] + t) / cells_);
                }
                r.weights.push_back(simplex_w[q] * cell_vol);
            }
        }
    }
    return r;
}

double TestField::lipschitz_u(int order) const {
    const QuadRule r = rule(order);
    double m = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) m = std::max(m, grad(r.point(q)).norm());
    return m;
}

std::string TestField::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (family_ == FieldFamily::kBubble) {
        os << "bubble amplitude=" << amplitude_ << " poly=[";
        for (std::size_t i = 0; i < poly_.size(); ++i) os << (i ? "," : "") << poly_[i];
        os << "]";
    } else {
        os << "hat cells=" << cells_ << " flips=[";
        for (std::size_t i = 0; i < flips_.size(); ++i) os << (i ? "," : "") << flips_[i];
        os << "] nodal=[";
        for (std::size_t i = 0; i < nodal_.size(); ++i) os << (i ? "," : "") << nodal_[i];
        os << "]";
    }
    return os.str();
}

}  // namespace fibreforms
