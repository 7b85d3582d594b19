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

#include "fibreforms/comass.hpp"

#include <cmath>

#include "fibreforms/error.hpp"
#include "fibreforms/rng.hpp"

namespace fibreforms {

namespace {

double minor_det(const Eigen::MatrixXd& w, const MultiIndex& rows) {
    const int l = rows.valency();
    Eigen::MatrixXd sub(l, l);
    for (int p = 0; p < l; ++p) sub.row(p) = w.row(rows[p]);
    return sub.determinant();
}

// value of the multilinear form psi~ on the columns of w
double value_of(const std::vector<MultiIndex>& b, const Eigen::VectorXd& coef, const Eigen::MatrixXd& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (coef(static_cast<Eigen::Index>(i)) != 0.0) acc += coef(static_cast<Eigen::Index>(i)) * minor_det(w, b[i]);
    return acc;
}

// partial gradient with respect to column a (the form is linear in it)
Eigen::VectorXd column_gradient(const std::vector<MultiIndex>& b, const Eigen::VectorXd& coef, const Eigen::MatrixXd& w, int a) {
    const auto n = w.rows();
    const int l = static_cast<int>(w.cols());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd sub(l - 1, l - 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double c = coef(static_cast<Eigen::Index>(i));
        if (c == 0.0) continue;
        const MultiIndex& rows = b[i];
        for (int p = 0; p < l; ++p) {
            for (int r = 0, rr = 0; r < l; ++r) {
                if (r == p) continue;
                for (int q = 0, cc = 0; q < l; ++q) {
                    if (q == a) continue;
                    sub(rr, cc++) = w(rows[r], q);
                }
                ++rr;
            }
            const double m = l == 1 ? 1.0 : sub.determinant();
            g(rows[p]) += (((p + a) % 2) ? -1.0 : 1.0) * c * m;
        }
    }
    return g;
}

Eigen::VectorXd minors_of(const std::vector<MultiIndex>& b, const Eigen::MatrixXd& v) {
    Eigen::VectorXd m(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) m(static_cast<Eigen::Index>(i)) = minor_det(v, b[i]);
    return m;
}

}  // namespace

double evaluate_on_vectors(const FormValue& psi, std::span<const Eigen::VectorXd> v) {
    if (static_cast<int>(v.size()) != psi.degree) throw DimensionError("need one vector per form slot");
    if (psi.degree == 0) return psi.c[0];
    Eigen::MatrixXd w(psi.dim, psi.degree);
    for (int a = 0; a < psi.degree; ++a) w.col(a) = v[static_cast<std::size_t>(a)];
    const auto& b = basis(psi.dim, psi.degree);
    return value_of(b, Eigen::Map<const Eigen::VectorXd>(psi.c.data(), static_cast<Eigen::Index>(psi.c.size())), w);
}

ComassResult comass(const FormValue& psi, const Eigen::MatrixXd& g, const ComassOptions& opt) {
    const int n = psi.dim;
    const int l = psi.degree;
    if (g.rows() != n || g.cols() != n) throw DimensionError("metric and form dimensions differ");
    require_spd(g);
    ComassResult res;
    const auto& b = basis(n, l);
    const Eigen::Map<const Eigen::VectorXd> coef(psi.c.data(), static_cast<Eigen::Index>(psi.c.size()));
    res.gradient = Eigen::VectorXd::Zero(coef.size());

    if (l == 0) {
        res.value = std::abs(psi.c[0]);
        res.gradient(0) = psi.c[0] >= 0 ? 1.0 : -1.0;
        return res;
    }
    if (l > n) return res;

    const Eigen::LLT<Eigen::MatrixXd> llt(g);
    const Eigen::MatrixXd lower = llt.matrixL();
    // v = T w maps Euclidean-orthonormal w to g-orthonormal v
    const Eigen::MatrixXd t = lower.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));

    if (opt.exact_shortcuts && (l == 1 || l == n || l == n - 1)) {
        const Eigen::MatrixXd gram = covector_gram(g.inverse(), l);
        const double q = coef.dot(gram * coef);
        res.value = std::sqrt(std::max(q, 0.0));
        if (res.value > 0.0) res.gradient = gram * coef / res.value;
        if (!opt.want_maximizer) return res;
        if (l == 1) {
            if (res.value > 0.0) res.maximizer.push_back(g.ldlt().solve(Eigen::VectorXd(coef)) / res.value);
            else res.maximizer.push_back(t.col(0));
            return res;
        }
    }

    // transformed coefficients psi~_J = sum_I psi_I det(T[I, J]) (Cauchy-Binet)
    Eigen::VectorXd tc = Eigen::VectorXd::Zero(coef.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        Eigen::MatrixXd cols(n, l);
        for (int p = 0; p < l; ++p) cols.col(p) = t.col(b[j][p]);
        tc(static_cast<Eigen::Index>(j)) = value_of(b, coef, cols);
    }

    double best = -1.0;
    Eigen::MatrixXd best_w;
    for (int r = 0; r < opt.restarts; ++r) {
        Eigen::MatrixXd w(n, l);
        if (r == 0) {
            // start on the coordinate plane of the largest transformed coefficient
            Eigen::Index arg = 0;
            tc.cwiseAbs().maxCoeff(&arg);
            w.setZero();
            for (int p = 0; p < l; ++p) w(b[static_cast<std::size_t>(arg)][p], p) = 1.0;
        } else {
            CounterRng rng(opt.seed, CounterRng::key(static_cast<std::uint64_t>(r)));
            for (int p = 0; p < l; ++p) {
                for (int i = 0; i < n; ++i) w(i, p) = rng.normal();
                w.col(p).normalize();
            }
        }
        double val = value_of(b, tc, w);
        for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
            const double before = val;
            for (int a = 0; a < l; ++a) {
                const Eigen::VectorXd grad = column_gradient(b, tc, w, a);
                const double norm = grad.norm();
                if (norm == 0.0) continue;
                // exact maximizer over the sphere of a linear function
                w.col(a) = grad / norm;
            }
            val = value_of(b, tc, w);
            if (val - before < 1e-15 * (1.0 + std::abs(val))) break;
        }
        if (val > best) {
            best = val;
            best_w = w;
        }
    }

    const Eigen::MatrixXd v = t * best_w;
    const bool have_value = opt.exact_shortcuts && (l == 1 || l == n || l == n - 1);
    if (!have_value) {
        res.value = std::max(best, 0.0);
        res.gradient = minors_of(b, v);
    }
    for (int p = 0; p < l; ++p) res.maximizer.emplace_back(v.col(p));
    return res;
}

ComassResult comass(const Form& a, const MetricField& g, std::span<const double> x, const ComassOptions& opt) {
    if (a.dim() != g.dim()) throw DimensionError("metric and form dimensions differ");
    return comass(a.eval(x), g.eval(x), opt);
}

}  // namespace fibreforms
