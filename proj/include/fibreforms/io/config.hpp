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
#include <optional>
#include <string>
#include <vector>

#include "fibreforms/comass.hpp"
#include "fibreforms/io/json_io.hpp"
#include "fibreforms/qc/qc_test.hpp"
#include "fibreforms/relaxation/problem.hpp"
#include "fibreforms/solver/minimize.hpp"

namespace fibreforms {

inline constexpr int kSchemaVersion = 1;

struct QcConfig {
    /// "cost" (c o pr_H of the problem cost, l = 1), "metric_quadratic",
    /// "negated_metric_quadratic", "norm", "double_well", or "quadratic"
    /// with an explicit matrix.
    std::string integrand = "cost";
    std::optional<Eigen::MatrixXd> matrix;
    /// "riemannian" or "euclidean" (the chart metric is replaced by the identity).
    std::string mode = "riemannian";
    std::optional<Box> p_box;
    int configs = 4;
    QcOptions options;
};

struct SolverConfig {
    SolveOptions options;
    /// Ascending resolutions of an optional refinement study.
    std::vector<int> refinement;
};

struct ComassConfig {
    std::vector<std::vector<double>> points;
    ComassOptions options;
};

/// A parsed problem file. `source` keeps the document for the run manifest.
struct ProblemConfig {
    Json source;
    BundleChart chart;
    StarDomain domain;
    std::optional<CostFunction> cost;
    std::string cost_spec;
    int ell = 1;
    std::optional<Form> gauge;
    /// The potential handed to decompose and relax.
    std::optional<Form> xi;
    /// The form handed to comass.
    std::optional<Form> form;
    double s = 2.0;
    Discretization disc;
    QcConfig qc;
    SolverConfig solver;
    ComassConfig comass;

    /// The packaged gauged problem; needs a cost (the gauge defaults to zero).
    GaugedProblem problem() const;
};

/// Builds a cost from its specification: "quadratic", "comass_power <s>",
/// "constant <a>" or "named:<id>".
CostFunction cost_from_spec(const std::string& spec, int ell, const std::string& where);

/// Validates the document strictly: schema_version must equal
/// kSchemaVersion and unknown keys raise ParseError at their location.
ProblemConfig parse_problem(const Json& doc);
ProblemConfig load_problem(const std::filesystem::path& path);

}  // namespace fibreforms
