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
#include <vector>

#include "fibreforms/form.hpp"
#include "fibreforms/metric.hpp"

namespace fibreforms {

/// Polynomial map y = phi(x) between N-dimensional charts. Invertibility is
/// the caller's promise; only the Jacobian is checked where it is inverted.
class Diffeomorphism {
public:
    Diffeomorphism() = default;
    explicit Diffeomorphism(std::vector<Polynomial> components);

    static Diffeomorphism identity(int dim);
    /// y = A x + b.
    static Diffeomorphism affine(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

    int dim() const noexcept { return static_cast<int>(comp_.size()); }
    const std::vector<Polynomial>& components() const noexcept { return comp_; }

    std::vector<double> apply(std::span<const double> x) const;
    /// J_ij = d phi^i / d x^j.
    Eigen::MatrixXd jacobian(std::span<const double> x) const;

    /// Pulls a covector at phi(x) back to x: J^T p.
    Eigen::VectorXd pullback_covector(std::span<const double> x, const Eigen::VectorXd& p) const;
    /// Pushes a covector at x forward to phi(x): J^{-T} p. Throws DomainError
    /// when J(x) is singular.
    Eigen::VectorXd pushforward_covector(std::span<const double> x, const Eigen::VectorXd& p) const;

private:
    std::vector<Polynomial> comp_;
    std::vector<std::vector<Polynomial>> jac_;  // jac_[i][j] = d phi^i / d x^j
};

/// phi^# a. Exact for polynomial coefficients; other kinds become callables
/// composed with phi.
Form pullback(const Diffeomorphism& phi, const Form& a);

/// phi^* g = J^T (g o phi) J. Polynomial for polynomial metrics, a callable
/// otherwise.
MetricField pullback(const Diffeomorphism& phi, const MetricField& g);

}  // namespace fibreforms
