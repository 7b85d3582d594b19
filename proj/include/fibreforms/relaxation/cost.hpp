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
#include <optional>
#include <string>
#include <vector>

#include "fibreforms/form.hpp"

namespace fibreforms {

/// Pointwise value of a tuple (f; g_1, ..., g_I).
struct ShadowValue {
    FormValue f;
    std::vector<FormValue> g;
};

/// Pointwise pr_H of an l-covector: f takes the purely horizontal
/// components; every other component J (in basis order) becomes its own
/// g entry of degree equal to the number of horizontal indices of J.
ShadowValue project_value(const FormValue& w, int n);

/// comass(f) + sum_i comass(g_i) under the metric matrix.
double tuple_norm(const ShadowValue& t, const Eigen::MatrixXd& metric);

/// a1 + b1 |t|^s <= c(t) <= a2 + b2 |t|^s.
struct CostGrowth {
    double a1 = 0, a2 = 0, b1 = 1, b2 = 1, s = 2;
};

/// Cost on tuples, with values in (-inf, +inf]. The metric matrix at the
/// evaluation point is passed along for metric-dependent costs.
struct CostFunction {
    int ell = 1;
    std::string name;
    std::function<double(const ShadowValue&, const Eigen::MatrixXd&)> eval;
    /// Gradient with the shape of the tuple; absent for non-differentiable costs.
    std::function<ShadowValue(const ShadowValue&, const Eigen::MatrixXd&)> gradient;
    std::optional<CostGrowth> growth;

    double operator()(const ShadowValue& t, const Eigen::MatrixXd& g) const;
};

/// Sum of squared coefficients of f and every g_i.
CostFunction quadratic_cost(int ell);
/// (comass(f) + sum comass(g_i))^s, declared growth (0, 0, 1, 1, s).
CostFunction comass_power_cost(int ell, double s);
CostFunction constant_cost(int ell, double a);
/// Registered costs: "zero", "negated_quadratic", "double_well"
/// (min(|v - e|^2, |v + e|^2) with e the first coefficient of f), and
/// "metric_quadratic" (squared induced norms of f and every g_i).
CostFunction named_cost(const std::string& id, int ell);
std::vector<std::string> named_cost_ids();

/// c o pr_H on l-covectors.
struct GaugedCost {
    CostFunction cost;
    int n = 1;

    double operator()(const FormValue& w, const Eigen::MatrixXd& g) const;
    /// d(c o pr_H)/dw; requires cost.gradient.
    FormValue gradient(const FormValue& w, const Eigen::MatrixXd& g) const;
    bool differentiable() const noexcept { return static_cast<bool>(cost.gradient); }
};

GaugedCost gauged_cost(CostFunction cost, int n);

}  // namespace fibreforms
