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

// Data-parallel inner loops used by the grid code (finite-difference stencils,
// tensor-product interpolation and their adjoints, weighted reductions).
//
// Every kernel has a scalar reference implementation and vector variants
// chosen once at runtime from the CPU features. The variants evaluate the
// same operations in the same order without fused multiply-add, so results
// are bitwise identical to the scalar reference; the equivalence tests rely
// on this.

#include <span>
#include <string_view>

namespace fibreforms::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detected_isa();
/// Instruction set currently used by the dispatching entry points. Defaults
/// to detected_isa(); the environment variable FIBREFORMS_ISA=scalar forces
/// the reference path.
Isa active_isa();
/// Overrides dispatch (tests and benchmarking). Throws if `isa` is not
/// available on this machine.
void set_active_isa(Isa isa);

inline constexpr int kMaxTerms = 8;

/// out[i] = ((c0*in0[i] + c1*in1[i]) + c2*in2[i]) + ..., left to right.
/// ins.size() == coeffs.size() <= kMaxTerms; every input has out.size()
/// elements. Inputs may alias each other but not `out`.
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs);

/// y[i] = y[i] + a*x[i].
void axpy(double a, std::span<const double> x, std::span<double> y);

/// sum_i w[i]*v[i], accumulated in four interleaved partial sums that are
/// combined as (s0+s1)+(s2+s3) before the tail is added in order.
double dot(std::span<const double> w, std::span<const double> v);

// Direct access to each implementation for equivalence testing.
namespace scalar {
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> w, std::span<const double> v);
}  // namespace scalar

namespace avx2 {
bool available();
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> w, std::span<const double> v);
}  // namespace avx2

namespace neon {
bool available();
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs);
void axpy(double a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> w, std::span<const double> v);
}  // namespace neon

}  // namespace fibreforms::simd
