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
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <fibreforms/quadrature.hpp>
#include <fibreforms/solver/discrete.hpp>

namespace fibreforms::testing {

// 1D cubic Lagrange value and derivative rows at composite Gauss-Legendre
// nodes, built from a Vandermonde solve on the 4-node stencil.
struct Axis1D {
    Eigen::SparseMatrix<double> interp, deriv;
    std::vector<double> weights;
};

inline Axis1D axis_oracle(int r, double lo, double hi, int order) {
    const double h = (hi - lo) / (r - 1);
    const GaussLegendre& gl = gauss_legendre(order);
    std::vector<Eigen::Triplet<double>> ti, td;
    Axis1D ax;
    int row = 0;
    for (int cell = 0; cell + 1 < r; ++cell) {
        const int start = std::clamp(cell - 1, 0, r - 4);
        Eigen::Matrix4d v;
        for (int k = 0; k < 4; ++k)
            for (int e = 0; e < 4; ++e) v(e, k) = std::pow(lo + (start + k) * h, e);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q, ++row) {
            const double x = lo + cell * h + 0.5 * h * (gl.nodes[q] + 1.0);
            Eigen::Vector4d mono, dmono;
            for (int e = 0; e < 4; ++e) {
                mono(e) = std::pow(x, e);
                dmono(e) = e == 0 ? 0.0 : e * std::pow(x, e - 1);
            }
            // weights w with sum_k w_k p(x_k) = p(x) for every cubic p: V w = mono
            const Eigen::Vector4d wi = v.fullPivLu().solve(mono), wd = v.fullPivLu().solve(dmono);
            for (int k = 0; k < 4; ++k) {
                ti.emplace_back(row, start + k, wi(k));
                td.emplace_back(row, start + k, wd(k));
            }
            ax.weights.push_back(0.5 * h * gl.weights[q]);
        }
    }
    ax.interp.resize(row, r);
    ax.deriv.resize(row, r);
    ax.interp.setFromTriplets(ti.begin(), ti.end());
    ax.deriv.setFromTriplets(td.begin(), td.end());
    return ax;
}

inline Eigen::SparseMatrix<double> kron(const Eigen::SparseMatrix<double>& a, const Eigen::SparseMatrix<double>& b) {
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < a.outerSize(); ++i)
        for (Eigen::SparseMatrix<double>::InnerIterator ia(a, i); ia; ++ia)
            for (int j = 0; j < b.outerSize(); ++j)
                for (Eigen::SparseMatrix<double>::InnerIterator ib(b, j); ib; ++ib)
                    t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
    Eigen::SparseMatrix<double> m(a.rows() * b.rows(), a.cols() * b.cols());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// Minimum of sum_q W_q |d xi_h|^2 over interior values for a scalar
// potential on a 2D grid, by a sparse LDL^T solve of the normal equations.
inline double quadratic_oracle(const GaugedProblem& p, int r, int order) {
    const Box& b = p.domain.box;
    const Axis1D a0 = axis_oracle(r, b.lo[0], b.hi[0], order), a1 = axis_oracle(r, b.lo[1], b.hi[1], order);
    const Eigen::SparseMatrix<double> b0 = kron(a0.deriv, a1.interp), b1 = kron(a0.interp, a1.deriv);
    Eigen::VectorXd w(static_cast<Eigen::Index>(a0.weights.size() * a1.weights.size()));
    for (std::size_t i = 0; i < a0.weights.size(); ++i)
        for (std::size_t j = 0; j < a1.weights.size(); ++j)
            w(static_cast<Eigen::Index>(i * a1.weights.size() + j)) = a0.weights[i] * a1.weights[j];
    // sqrt(det g) at the quadrature nodes
    const GaussLegendre& gl = gauss_legendre(order);
    const double h0 = (b.hi[0] - b.lo[0]) / (r - 1), h1 = (b.hi[1] - b.lo[1]) / (r - 1);
    for (Eigen::Index q = 0; q < w.size(); ++q) {
        const auto i = static_cast<std::size_t>(q) / a1.weights.size(), j = static_cast<std::size_t>(q) % a1.weights.size();
        const auto no = gl.nodes.size();
        const std::vector<double> x{b.lo[0] + static_cast<double>(i / no) * h0 + 0.5 * h0 * (gl.nodes[i % no] + 1.0),
                                    b.lo[1] + static_cast<double>(j / no) * h1 + 0.5 * h1 * (gl.nodes[j % no] + 1.0)};
        w(q) *= p.chart.metric.sqrt_det(x);
    }
    const Eigen::SparseMatrix<double> h = Eigen::SparseMatrix<double>(b0.transpose() * w.asDiagonal() * b0) +
                                          Eigen::SparseMatrix<double>(b1.transpose() * w.asDiagonal() * b1);

    const DiscreteField g = DiscreteField::from_gauge(p, r);
    const std::vector<double>& v0 = g.values()[0];
    std::vector<int> free_index(v0.size(), -1);
    int nfree = 0;
    for (std::size_t i : g.interior()) free_index[i] = nfree++;
    std::vector<Eigen::Triplet<double>> tii;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nfree);
    for (int c = 0; c < h.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(h, c); it; ++it) {
            const int fi = free_index[static_cast<std::size_t>(it.row())], fj = free_index[static_cast<std::size_t>(it.col())];
            if (fi < 0) continue;
            if (fj >= 0) tii.emplace_back(fi, fj, it.value());
            else rhs(fi) -= it.value() * v0[static_cast<std::size_t>(it.col())];
        }
    Eigen::SparseMatrix<double> hii(nfree, nfree);
    hii.setFromTriplets(tii.begin(), tii.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(hii);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("oracle factorization failed");
    const Eigen::VectorXd xi = ldlt.solve(rhs);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(v0.data(), static_cast<Eigen::Index>(v0.size()));
    for (std::size_t i : g.interior()) v(static_cast<Eigen::Index>(i)) = xi(free_index[i]);
    return v.dot(h * v);
}

}  // namespace fibreforms::testing
