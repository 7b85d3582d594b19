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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibreforms/grid.hpp"
#include "fibreforms/metric.hpp"
#include "fibreforms/qc/integrand.hpp"
#include "fibreforms/qc/test_field.hpp"
#include "fibreforms/quadrature.hpp"

namespace fibreforms {

/// V(x0, D) two ways: `value` = sqrt(det g(x0)) * vol(D), `quadrature` =
/// the integral of sqrt(det g(x0)) / sqrt(det g(x)) against dVol.
struct VolumeGrowth {
    double value = 0.0;
    double quadrature = 0.0;
};

VolumeGrowth volume_growth_factor(std::span<const double> x0, const Parallelepiped& d, const MetricField& g,
                                  int order = 8);
VolumeGrowth volume_growth_factor(std::span<const double> x0, const Box& d, const MetricField& g, int order = 8);

struct QcOptions {
    int trials = 1000;
    std::uint64_t seed = 1;
    int order = 6;
    double rel_tol = 1e-7;
    /// Absolute threshold; overrides rel_tol * (1 + |F(x0, p)|) when set.
    std::optional<double> tolerance;
    int descent_steps = 60;
    std::vector<FieldFamily> families{FieldFamily::kBubble, FieldFamily::kHat};
    bool keep_records = true;
};

struct QcTrial {
    std::size_t index = 0;
    FieldFamily family = FieldFamily::kBubble;
    double gap = 0.0;
    bool aborted = false;
};

/// Outcome of a falsification run. No violation is evidence, not proof.
struct QcReport {
    bool violation_found = false;
    double worst_gap = 0.0;          // before descent
    double sharpened_gap = 0.0;      // after descent on the worst trial
    double certified_gap = 0.0;      // sharpened witness at doubled order
    bool certified = false;
    std::optional<std::size_t> witness_trial;
    std::vector<TestField> witness;  // one field per component of the test form
    double witness_lipschitz = 0.0;  // physical coordinates
    double f0 = 0.0;
    double tolerance = 0.0;
    std::size_t aborted_trials = 0;
    std::vector<QcTrial> records;
};

/// Gap of the test field zeta on D:
/// (1/V) int_D F(x, p + d zeta) dVol - F(x0, p).
double qc_gap(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p, const Parallelepiped& d,
              const MetricField& g, const TestField& zeta, int order);
/// The same with Lebesgue measure, computed without a metric.
double euclidean_qc_gap(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p,
                        const Parallelepiped& d, const TestField& zeta, int order);

QcReport riemannian_qc_test(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p,
                            const Parallelepiped& d, const MetricField& g, const QcOptions& opt = {});
QcReport riemannian_qc_test(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p, const Box& d,
                            const MetricField& g, const QcOptions& opt = {});
QcReport euclidean_qc_test(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p,
                           const Parallelepiped& d, const QcOptions& opt = {});
QcReport euclidean_qc_test(const Integrand& f, std::span<const double> x0, const Eigen::VectorXd& p, const Box& d,
                           const QcOptions& opt = {});

/// Extrapolated test with an l-form slot: the test object is an (l-1)-form
/// whose coefficients are drawn from the scalar families (sharing one
/// triangulation for hats), and the gradient is replaced by d zeta.
QcReport form_qc_test(const FormIntegrand& f, std::span<const double> x0, const FormValue& p, const Parallelepiped& d,
                      const MetricField& g, const QcOptions& opt = {});

/// D_hat = phi^{-1}(D) for an affine phi. Throws DomainError otherwise.
Parallelepiped affine_preimage(const Diffeomorphism& phi, const Parallelepiped& d);

/// One sampled configuration of a sweep.
struct QcSweepRecord {
    std::size_t config = 0;
    std::uint64_t seed = 0;
    Parallelepiped subdomain;
    Eigen::VectorXd x0;
    Eigen::VectorXd p;
    QcReport report;
};

/// Samples subboxes of `domain` (side fractions in [0.2, 0.8]), base points
/// inside them, and covectors (uniform in p_box for even configurations,
/// Gaussian draws scaled to the box for odd ones), then runs the Riemannian
/// test on each (the Euclidean test when `euclidean` is set; g is then unused).
std::vector<QcSweepRecord> qc_sweep(const Integrand& f, const Box& domain, const Box& p_box, const MetricField& g,
                                    int configs, const QcOptions& opt, bool euclidean = false);

}  // namespace fibreforms
