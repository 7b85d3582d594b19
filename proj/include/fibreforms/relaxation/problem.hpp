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

#include <cstdint>
#include <vector>

#include "fibreforms/bundle/chart.hpp"
#include "fibreforms/bundle/shadow.hpp"
#include "fibreforms/relaxation/cost.hpp"

namespace fibreforms {

struct Discretization {
    int resolution = 17;
    int quadrature_order = 4;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
};

/// Gauged problem: minimize int_O (c o pr_H)(d xi) dVol over xi agreeing
/// with the gauge on the boundary. The gauge has the degree of the
/// potential, l - 1.
struct GaugedProblem {
    BundleChart chart;
    StarDomain domain;
    CostFunction cost;
    Form gauge;
    double s = 2.0;
    Discretization disc;

    int ell() const noexcept { return cost.ell; }
    GaugedCost gauged() const { return gauged_cost(cost, chart.n); }
};

/// Packages the data after checking that degrees and dimensions agree.
GaugedProblem relax(const BundleChart& chart, const StarDomain& domain, CostFunction cost, Form gauge, double s,
                    Discretization disc = {});

/// int_O (c o pr_H)(d xi) sqrt(det g) dx by tensor Gauss-Legendre quadrature
/// of order disc.quadrature_order (or `order` when positive). +inf when
/// any node is +inf.
double gauged_objective(const GaugedProblem& p, const Form& xi, int order = 0);

/// The ungauged objective at a tuple: int_O c(pr_H(f + sum g ^ theta)) dVol,
/// with the tuple components taken from the symbolic projection.
double tuple_objective(const GaugedProblem& p, const ShadowData& sd, int order = 0);

struct AdmissibilityReport {
    bool admissible = false;
    bool closed = false;
    double closedness_residual = 0.0;
    double max_normal_pairing = 0.0;
};

/// Checks closedness of f + sum g_i ^ theta_i and the tangency condition
/// g(nu, f + sum g_i ^ theta_i + d gauge) = 0 on per-face boundary lattices
/// (`per_axis` points along each face direction). The pairing is the
/// induced norm of the contraction of nu^sharp into the form, with nu the
/// g-unit outward conormal.
AdmissibilityReport check_admissible(const Form& f, const std::vector<Form>& gs, const std::vector<Form>& thetas,
                                     const Form& gauge, const StarDomain& dom, const BundleChart& chart,
                                     double tolerance = 1e-9, int per_axis = 7);

struct PotentialReport {
    Form xi;
    /// Largest coefficient of xi + gauge over the boundary lattices.
    double trace_defect = 0.0;
};

/// A potential xi with d xi = f + sum g ^ theta:
/// xi = K(h + d gauge) - gauge, K the homotopy operator about the star center.
/// Then xi + gauge = K(h + d gauge), whose boundary trace is reported.
PotentialReport potential_from_tuple(const GaugedProblem& p, const ShadowData& sd, int per_axis = 5);

struct CoercivitySample {
    ShadowValue tuple;
    std::vector<double> x;
};

struct CoercivityReport {
    bool holds = false;
    CostGrowth fitted;
    /// Indices of samples violating the (declared or fitted) envelope.
    std::vector<std::size_t> violations;
    bool declared = false;
};

/// Tests a1 + b1 |t|^s <= c(t) <= a2 + b2 |t|^s. With declared constants,
/// checks them on every sample. Otherwise fits slopes and offsets on the
/// lower half of the samples (ordered by norm) and validates the fit on all
/// of them, so growth that is not of order s shows up as violations.
CoercivityReport coercivity_check(const CostFunction& cost, const std::vector<CoercivitySample>& samples,
                                  const MetricField& g, double s, double rel_tol = 1e-9);

}  // namespace fibreforms
