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

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "fibreforms/grid.hpp"
#include "fibreforms/polynomial.hpp"

namespace fibreforms {

/// Values on a regular grid. Off-grid evaluation uses tensor-product cubic
/// Lagrange interpolation; derivatives use the fourth-order stencil.
struct SampledField {
    Grid grid;
    std::vector<double> values;  // row-major, grid.size() entries

    double eval(std::span<const double> x) const;
};

/// Black-box scalar function of the chart coordinates.
struct CallableField {
    int dim = 0;
    std::function<double(std::span<const double>)> fn;
};

enum class FieldKind { kPolynomial = 0, kSampled = 1, kCallable = 2 };

const char* to_string(FieldKind k);

/// Coefficient of a differential form: exact polynomial, grid samples, or a
/// callable. Binary operations promote to the richer kind
/// (Polynomial < Sampled < Callable); Sampled operands must share a grid.
class CoefficientField {
public:
    CoefficientField() : rep_(Polynomial(0)) {}
    CoefficientField(Polynomial p) : rep_(std::move(p)) {}
    CoefficientField(SampledField s) : rep_(std::make_shared<const SampledField>(std::move(s))) {}
    CoefficientField(CallableField c) : rep_(std::make_shared<const CallableField>(std::move(c))) {}

    static CoefficientField constant(int dim, double c, FieldKind kind = FieldKind::kPolynomial);

    FieldKind kind() const noexcept { return static_cast<FieldKind>(rep_.index()); }
    int dim() const;

    const Polynomial& polynomial() const;
    const SampledField& sampled() const;
    const CallableField& callable() const;

    /// Exact for Polynomial; for Sampled, true iff every sample is 0.
    /// Callable fields are never reported zero.
    bool is_zero() const;

    double eval(std::span<const double> x) const;
    CoefficientField partial(int axis) const;

    /// Re-represents this field as `kind`. Promotion to Sampled needs `grid`.
    CoefficientField promote(FieldKind kind, const Grid* grid = nullptr) const;

    friend CoefficientField operator+(const CoefficientField& a, const CoefficientField& b);
    friend CoefficientField operator*(const CoefficientField& a, const CoefficientField& b);
    CoefficientField scaled(double c) const;
    CoefficientField scaled(const Rational& c) const;
    CoefficientField operator-() const;

private:
    using Rep = std::variant<Polynomial, std::shared_ptr<const SampledField>, std::shared_ptr<const CallableField>>;
    Rep rep_;
};

/// Step of the fourth-order central difference used to differentiate
/// callable coefficients.
inline constexpr double kCallableStep = 0x1.0p-10;

/// Samples any field onto `grid`.
SampledField sample(const CoefficientField& f, const Grid& grid);

}  // namespace fibreforms
