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

#include <map>
#include <span>
#include <vector>

#include "fibreforms/coefficient_field.hpp"
#include "fibreforms/multi_index.hpp"

namespace fibreforms {

/// Pointwise value of an l-form: one real per multi-index of basis(dim, degree).
struct FormValue {
    int dim = 0;
    int degree = 0;
    std::vector<double> c;

    FormValue() = default;
    FormValue(int d, int deg);

    double& operator[](const MultiIndex& m) { return c[static_cast<std::size_t>(basis_rank(dim, m))]; }
    double operator[](const MultiIndex& m) const { return c[static_cast<std::size_t>(basis_rank(dim, m))]; }
    std::size_t size() const noexcept { return c.size(); }
};

FormValue wedge(const FormValue& a, const FormValue& b);
/// Contraction of a vector into the first slot.
FormValue interior(std::span<const double> v, const FormValue& a);

/// A differential form of fixed degree on an N-dimensional chart, stored as a
/// sparse map from multi-index to coefficient field. Absent keys are zero; a
/// form of degree > N has no terms. All coefficients share one representation
/// kind (mixed inputs are promoted).
class Form {
public:
    Form() = default;
    Form(int dim, int degree);

    static Form zero(int dim, int degree) { return Form(dim, degree); }
    /// coefficient * dx^{idx}, idx given 0-based and already ascending.
    static Form monomial(int dim, const MultiIndex& idx, CoefficientField coefficient);
    /// The basis 1-form dx^{axis}.
    static Form dx(int dim, int axis);
    /// A 0-form.
    static Form scalar(CoefficientField f);

    int dim() const noexcept { return dim_; }
    int degree() const noexcept { return degree_; }
    const std::map<MultiIndex, CoefficientField>& terms() const noexcept { return terms_; }
    FieldKind kind() const noexcept { return kind_; }

    /// Adds `f` to the coefficient of `idx`; drops terms that become exactly zero.
    void add_term(const MultiIndex& idx, const CoefficientField& f);
    /// Coefficient of idx (zero polynomial if absent).
    CoefficientField coefficient(const MultiIndex& idx) const;

    /// Exactly zero: every coefficient is_zero().
    bool is_zero() const;
    FormValue eval(std::span<const double> x) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    Form operator-() const;
    Form scaled(const Rational& c) const;
    Form scaled(double c) const;
    /// Multiplies every coefficient by a scalar field.
    Form times(const CoefficientField& f) const;

    /// Re-represents all coefficients as `kind`.
    Form promoted(FieldKind kind, const Grid* grid = nullptr) const;

    /// Exact equality of Polynomial forms (throws for other kinds).
    friend bool operator==(const Form& a, const Form& b);

private:
    void absorb_kind(const CoefficientField& f);

    int dim_ = 0;
    int degree_ = 0;
    FieldKind kind_ = FieldKind::kPolynomial;
    std::map<MultiIndex, CoefficientField> terms_;
};

/// a ^ b by the shuffle sign rule. Degree a+b; the zero form if that exceeds N.
Form wedge(const Form& a, const Form& b);

/// d a. Exact on polynomial coefficients; fourth-order stencil on sampled
/// ones; fourth-order central difference on callables.
Form exterior_derivative(const Form& a);

/// Maximum absolute coefficient of `a` over the given points.
double max_abs(const Form& a, std::span<const std::vector<double>> points);

}  // namespace fibreforms
