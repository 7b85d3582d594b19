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

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibreforms/multi_index.hpp"

namespace fibreforms {

using Rational = mpq_class;

/// Exact conversion of a finite double to a rational.
Rational rational_from_double(double x);
/// Parses "3", "-3/4", "0.125", "1e-3" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

using Exponents = std::array<std::uint8_t, kMaxDim>;

/// Multivariate polynomial with rational coefficients in `nvars` variables.
/// Arithmetic is exact; zero coefficients are never stored.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int i);
    static Polynomial monomial(int nvars, const Exponents& e, const Rational& c);

    int nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    int total_degree() const noexcept;
    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned e) const;
    Polynomial partial(int i) const;

    /// Substitutes subs[i] for variable i. All subs share one variable count,
    /// which becomes the variable count of the result.
    Polynomial compose(std::span<const Polynomial> subs) const;
    /// p(x + shift).
    Polynomial translate(std::span<const Rational> shift) const;
    /// y^b -> y^b / (ell + |b|): the t-integral of t^(ell-1) p(t y) over [0,1].
    Polynomial radial_integral(int ell) const;

    double eval(std::span<const double> x) const;
    Rational eval_exact(std::span<const Rational> x) const;

    /// Human-readable form using x1..xN (1-based).
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    int nvars_ = 0;
    std::map<Exponents, Rational> terms_;
};

/// Parses a polynomial expression over x1..x{nvars}: numbers (integer,
/// decimal, a/b), variables, + - * ^ and parentheses. Throws ParseError with
/// the character offset on failure.
Polynomial parse_polynomial(std::string_view text, int nvars);

}  // namespace fibreforms
