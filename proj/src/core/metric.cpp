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

#include "fibreforms/metric.hpp"

#include <cmath>

#include "fibreforms/error.hpp"
#include "fibreforms/multi_index.hpp"

namespace fibreforms {

MetricField MetricField::euclidean(int dim) {
    MetricField g;
    g.dim_ = dim;
    g.kind_ = Kind::kEuclidean;
    return g;
}

MetricField MetricField::diagonal(std::vector<Polynomial> entries) {
    MetricField g;
    g.dim_ = static_cast<int>(entries.size());
    for (const auto& e : entries)
        if (e.nvars() != g.dim_) throw DimensionError("metric entries must use N variables");
    g.kind_ = Kind::kDiagonal;
    g.entries_ = std::move(entries);
    return g;
}

MetricField MetricField::dense(int dim, std::vector<Polynomial> entries) {
    if (entries.size() != static_cast<std::size_t>(dim * dim)) throw DimensionError("dense metric needs N*N entries");
    for (const auto& e : entries)
        if (e.nvars() != dim) throw DimensionError("metric entries must use N variables");
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (!(entries[static_cast<std::size_t>(i * dim + j)] == entries[static_cast<std::size_t>(j * dim + i)]))
                throw DomainError("dense metric is not symmetric");
    MetricField g;
    g.dim_ = dim;
    g.kind_ = Kind::kDense;
    g.entries_ = std::move(entries);
    return g;
}

MetricField MetricField::callable(int dim, std::function<Eigen::MatrixXd(std::span<const double>)> fn) {
    MetricField g;
    g.dim_ = dim;
    g.kind_ = Kind::kCallable;
    g.fn_ = std::move(fn);
    return g;
}

Polynomial MetricField::entry(int i, int j) const {
    Polynomial e(dim_);
    switch (kind_) {
        case Kind::kEuclidean: e = Polynomial::constant(dim_, i == j ? 1 : 0); break;
        case Kind::kDiagonal: e = i == j ? entries_[static_cast<std::size_t>(i)] : Polynomial(dim_); break;
        case Kind::kDense: e = entries_[static_cast<std::size_t>(i * dim_ + j)]; break;
        case Kind::kCallable: throw DomainError("callable metrics have no polynomial entries");
    }
    return scale2_ == 1.0 ? e : e * rational_from_double(scale2_);
}

void require_spd(const Eigen::MatrixXd& g) {
    const double scale = g.cwiseAbs().maxCoeff();
    if (!std::isfinite(scale)) throw DomainError("metric has non-finite entries");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("metric is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
}

Eigen::MatrixXd MetricField::eval(std::span<const double> x) const {
    Eigen::MatrixXd g;
    switch (kind_) {
        case Kind::kEuclidean:
            g = Eigen::MatrixXd::Identity(dim_, dim_);
            break;
        case Kind::kDiagonal:
            g = Eigen::MatrixXd::Zero(dim_, dim_);
            for (int i = 0; i < dim_; ++i) g(i, i) = entries_[static_cast<std::size_t>(i)].eval(x);
            break;
        case Kind::kDense:
            g.resize(dim_, dim_);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j) g(i, j) = entries_[static_cast<std::size_t>(i * dim_ + j)].eval(x);
            break;
        case Kind::kCallable:
            g = fn_(x);
            if (g.rows() != dim_ || g.cols() != dim_) throw DimensionError("metric callable returned wrong shape");
            break;
    }
    if (scale2_ != 1.0) g *= scale2_;
    if (kind_ != Kind::kEuclidean) require_spd(g);
    return g;
}

double MetricField::sqrt_det(std::span<const double> x) const {
    if (kind_ == Kind::kEuclidean && scale2_ == 1.0) return 1.0;
    return std::sqrt(eval(x).determinant());
}

MetricField MetricField::scaled(double c) const {
    MetricField g = *this;
    if (g.kind_ == Kind::kEuclidean) g.kind_ = Kind::kDiagonal, g.entries_.assign(static_cast<std::size_t>(dim_), Polynomial::constant(dim_, 1));
    g.scale2_ *= c * c;
    return g;
}

Eigen::MatrixXd covector_gram(const Eigen::MatrixXd& ginv, int ell) {
    const int n = static_cast<int>(ginv.rows());
    const auto& b = basis(n, ell);
    const auto m = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = r; c < m; ++c) {
            Eigen::MatrixXd sub(ell, ell);
            for (int i = 0; i < ell; ++i)
                for (int j = 0; j < ell; ++j) sub(i, j) = ginv(b[static_cast<std::size_t>(r)][i], b[static_cast<std::size_t>(c)][j]);
            gram(r, c) = gram(c, r) = ell == 0 ? 1.0 : sub.determinant();
        }
    }
    return gram;
}

}  // namespace fibreforms
