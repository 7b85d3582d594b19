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

#include "fibreforms/solver/discrete.hpp"

namespace fibreforms {

enum class GradientMode { kAuto, kAdjoint, kFiniteDifference };
enum class Termination { kConverged, kMaxIterations, kLineSearchFailure, kSmallDecrease };

const char* to_string(GradientMode m);
const char* to_string(Termination t);
GradientMode gradient_mode_from_string(const std::string& s);

struct SolveOptions {
    int max_iterations = 2000;
    int memory = 10;
    /// Stop when |grad|_inf <= gtol * (1 + |f|).
    double gtol = 1e-10;
    /// Stop when the last accepted step lowered f by <= ftol * (1 + |f|).
    double ftol = 1e-15;
    int max_backtracks = 40;
    GradientMode mode = GradientMode::kAuto;
    double fd_step = 1e-6;
    /// Standard deviation of a seeded perturbation of the initial interior
    /// values (0 keeps the initial field).
    double init_noise = 0.0;
    std::uint64_t seed = 1;
};

struct SolveReport {
    double objective = 0.0;
    std::vector<double> history;  // objective after every accepted step, starting at the initial value
    double grad_norm = 0.0;       // infinity norm at the returned iterate
    Termination termination = Termination::kConverged;
    int iterations = 0;
    int evaluations = 0;
    double wall_seconds = 0.0;
    int resolution = 0;
    int quadrature_order = 0;
    std::size_t dofs = 0;
    GradientMode mode = GradientMode::kAdjoint;
};

struct SolveResult {
    DiscreteField field;
    SolveReport report;
};

/// Limited-memory BFGS with Armijo backtracking over the interior values.
/// Starts from `init` (or the gauge). Throws DomainError when the initial
/// objective is +inf. On line-search failure returns the best iterate with
/// Termination::kLineSearchFailure.
SolveResult minimize(const GaugedProblem& p, std::optional<DiscreteField> init = std::nullopt,
                     const SolveOptions& opt = {});

/// Largest relative discrepancy between the adjoint directional derivative
/// and a central difference along `directions` random unit directions.
/// Throws DomainError for a non-differentiable cost.
double gradient_check(const GaugedProblem& p, const DiscreteField& xi, int directions, std::uint64_t seed,
                      double step = 1e-5);

struct RefinementRow {
    int resolution = 0;
    double h = 0.0;
    double objective = 0.0;
    int iterations = 0;
    Termination termination = Termination::kConverged;
};

struct RefinementStudy {
    std::vector<RefinementRow> rows;
    /// Objectives nonincreasing within 1e-6 relative.
    bool nonincreasing = true;
    /// Objectives keep dropping without the contraction expected of a
    /// converging discretization.
    bool relaxation_gap_suspected = false;
};

/// minimize at each resolution (ascending), warm-starting by prolongation.
RefinementStudy refinement_study(const GaugedProblem& p, const std::vector<int>& resolutions,
                                 const SolveOptions& opt = {});

}  // namespace fibreforms
