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
#include <string>
#include <vector>

#include "fibreforms/polynomial.hpp"

namespace fibreforms {

/// Riemannian metric on an N-dimensional chart. Construction is cheap; each
/// evaluation checks symmetry and positive-definiteness.
class MetricField {
public:
    enum class Kind { kEuclidean, kDiagonal, kDense, kCallable };

    MetricField() = default;
    static MetricField euclidean(int dim);
    static MetricField diagonal(std::vector<Polynomial> entries);
    /// Row-major N*N entries; must be symmetric as polynomials.
    static MetricField dense(int dim, std::vector<Polynomial> entries);
    static MetricField callable(int dim, std::function<Eigen::MatrixXd(std::span<const double>)> fn);

    int dim() const noexcept { return dim_; }
    Kind kind() const noexcept { return kind_; }
    const std::vector<Polynomial>& entries() const noexcept { return entries_; }

    /// Entry g_ij as a polynomial (scaling included). Throws DomainError for
    /// callable metrics.
    Polynomial entry(int i, int j) const;

    /// g(x). Throws DomainError when the matrix is not SPD.
    Eigen::MatrixXd eval(std::span<const double> x) const;
    double sqrt_det(std::span<const double> x) const;
    /// Multiplies the metric by the constant c^2.
    MetricField scaled(double c) const;

private:
    int dim_ = 0;
    Kind kind_ = Kind::kEuclidean;
    std::vector<Polynomial> entries_;
    std::function<Eigen::MatrixXd(std::span<const double>)> fn_;
    double scale2_ = 1.0;
};

/// Throws DomainError unless g is symmetric (to 1e-12 relative) and Cholesky succeeds.
void require_spd(const Eigen::MatrixXd& g);

/// Induced inner product on l-covectors, Gram matrix over basis(N, l):
/// entry (I, J) = det(g^{-1}[I, J]).
Eigen::MatrixXd covector_gram(const Eigen::MatrixXd& ginv, int ell);

}  // namespace fibreforms
