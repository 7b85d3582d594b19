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

#include "fibreforms/diffeomorphism.hpp"
#include "fibreforms/form.hpp"
#include "fibreforms/metric.hpp"
#include "fibreforms/relaxation/cost.hpp"

namespace fibreforms {

/// F(x, p) with p the coefficients of a covector at x. Values may be +inf.
struct Integrand {
    int dim = 0;
    std::string name;
    std::function<double(std::span<const double>, const Eigen::VectorXd&)> eval;

    double operator()(std::span<const double> x, const Eigen::VectorXd& p) const { return eval(x, p); }
};

/// F(x, P) on l-covectors (P in basis order).
struct FormIntegrand {
    int dim = 0;
    int ell = 1;
    std::string name;
    std::function<double(std::span<const double>, const FormValue&)> eval;
};

/// sign * g^{-1}(x)(p, p).
Integrand metric_quadratic_integrand(const MetricField& g, double sign = 1.0);
/// p^T A p + b.p + c, independent of x.
Integrand quadratic_integrand(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double c);
/// Euclidean |p|.
Integrand norm_integrand(int dim);
/// min(|p - e1|^2, |p + e1|^2).
Integrand double_well_integrand(int dim);
/// alpha F + beta.
Integrand affine_rescaled(const Integrand& f, double alpha, double beta);
/// (c o pr_H)(p) with the metric of the chart, for 1-form costs.
Integrand cost_integrand(const GaugedCost& cost, const MetricField& g);
FormIntegrand cost_form_integrand(const GaugedCost& cost, const MetricField& g);

/// F_hat(xh, ph) = sqrt(det g(phi(xh))) F(phi(xh), J^{-T} ph).
/// Throws DomainError (at evaluation) where the Jacobian is singular.
Integrand change_of_variables_reduction(const Integrand& f, const Diffeomorphism& phi, const MetricField& g);

/// Largest |F(x', p') - F(x, p)| over the 2(N + N) axis probes at distance h.
/// A cheap continuity spot check.
double continuity_probe(const Integrand& f, std::span<const double> x, const Eigen::VectorXd& p, double h);

}  // namespace fibreforms
