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

#include "fibreforms/coefficient_field.hpp"

#include <array>

#include "fibreforms/error.hpp"

namespace fibreforms {

double SampledField::eval(std::span<const double> x) const {
    const int dim = grid.dim();
    std::array<int, kMaxDim> start{};
    std::array<std::array<double, 5>, kMaxDim> w{};
    for (int a = 0; a < dim; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        start[ua] = cubic_weights(grid.shape[ua], grid.box.lo[ua], grid.spacing(a), x[ua], w[ua]);
    }
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= 4;
    double acc = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t rem = t, flat = 0;
        double weight = 1.0;
        for (int a = 0; a < dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            const std::size_t k = rem % 4;
            rem /= 4;
            weight *= w[ua][k];
            flat += (static_cast<std::size_t>(start[ua]) + k) * grid.stride(a);
        }
        acc += weight * values[flat];
    }
    return acc;
}

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::kPolynomial: return "polynomial";
        case FieldKind::kSampled: return "sampled";
        case FieldKind::kCallable: return "callable";
    }
    return "unknown";
}

CoefficientField CoefficientField::constant(int dim, double c, FieldKind kind) {
    if (kind == FieldKind::kPolynomial) return Polynomial::constant(dim, rational_from_double(c));
    if (kind == FieldKind::kCallable) return CallableField{dim, [c](std::span<const double>) { return c; }};
    throw DomainError("constant sampled fields need a grid; use promote()");
}

int CoefficientField::dim() const {
    switch (kind()) {
        case FieldKind::kPolynomial: return polynomial().nvars();
        case FieldKind::kSampled: return sampled().grid.dim();
        case FieldKind::kCallable: return callable().dim;
    }
    return 0;
}

const Polynomial& CoefficientField::polynomial() const {
    if (auto* p = std::get_if<Polynomial>(&rep_)) return *p;
    throw DomainError("coefficient is not a polynomial");
}

const SampledField& CoefficientField::sampled() const {
    if (auto* p = std::get_if<std::shared_ptr<const SampledField>>(&rep_)) return **p;
    throw DomainError("coefficient is not sampled");
}

const CallableField& CoefficientField::callable() const {
    if (auto* p = std::get_if<std::shared_ptr<const CallableField>>(&rep_)) return **p;
    throw DomainError("coefficient is not a callable");
}

bool CoefficientField::is_zero() const {
    switch (kind()) {
        case FieldKind::kPolynomial: return polynomial().is_zero();
        case FieldKind::kSampled:
            for (double v : sampled().values)
                if (v != 0.0) return false;
            return true;
        case FieldKind::kCallable: return false;
    }
    return false;
}

double CoefficientField::eval(std::span<const double> x) const {
    switch (kind()) {
        case FieldKind::kPolynomial: return polynomial().eval(x);
        case FieldKind::kSampled: return sampled().eval(x);
        case FieldKind::kCallable: return callable().fn(x);
    }
    return 0.0;
}

CoefficientField CoefficientField::partial(int axis) const {
    if (axis < 0 || axis >= dim()) throw DimensionError("derivative axis out of range");
    switch (kind()) {
        case FieldKind::kPolynomial: return polynomial().partial(axis);
        case FieldKind::kSampled: {
            const auto& s = sampled();
            SampledField d{s.grid, {}};
            d.values = apply_axis(fd_derivative_operator(s.grid.shape[static_cast<std::size_t>(axis)], s.grid.spacing(axis)),
                                  s.values, s.grid.shape, axis);
            return d;
        }
        case FieldKind::kCallable: {
            auto f = std::get<std::shared_ptr<const CallableField>>(rep_);
            const auto ax = static_cast<std::size_t>(axis);
            return CallableField{f->dim, [f, ax](std::span<const double> x) {
                                     std::array<double, kMaxDim> y{};
                                     std::copy(x.begin(), x.end(), y.begin());
                                     const std::span<const double> yv(y.data(), x.size());
                                     const double h = kCallableStep;
                                     auto at = [&](double off) {
                                         y[ax] = x[ax] + off;
                                         return f->fn(yv);
                                     };
                                     const double v = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
                                     return v;
                                 }};
        }
    }
    return *this;
}

SampledField sample(const CoefficientField& f, const Grid& grid) {
    if (f.dim() != grid.dim()) throw DimensionError("field and grid dimensions differ");
    SampledField s{grid, std::vector<double>(grid.size())};
    std::vector<double> x(static_cast<std::size_t>(grid.dim()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, x);
        s.values[i] = f.eval(x);
    }
    return s;
}

CoefficientField CoefficientField::promote(FieldKind target, const Grid* grid) const {
    if (target == kind()) return *this;
    if (static_cast<int>(target) < static_cast<int>(kind())) throw DomainError("cannot demote a coefficient field");
    if (target == FieldKind::kSampled) {
        if (!grid) throw DomainError("promotion to sampled needs a grid");
        return sample(*this, *grid);
    }
    CoefficientField self = *this;
    return CallableField{dim(), [self](std::span<const double> x) { return self.eval(x); }};
}

namespace {

// Brings both operands to a common representation.
std::pair<CoefficientField, CoefficientField> unify(const CoefficientField& a, const CoefficientField& b) {
    if (a.dim() != b.dim()) throw DimensionError("coefficient fields live on charts of different dimension");
    const FieldKind k = static_cast<FieldKind>(std::max(static_cast<int>(a.kind()), static_cast<int>(b.kind())));
    const Grid* grid = nullptr;
    if (k == FieldKind::kSampled) {
        if (a.kind() == FieldKind::kSampled) grid = &a.sampled().grid;
        if (b.kind() == FieldKind::kSampled) {
            if (grid && !(*grid == b.sampled().grid)) throw DimensionError("sampled fields on different grids");
            grid = &b.sampled().grid;
        }
    }
    return {a.promote(k, grid), b.promote(k, grid)};
}

}  // namespace

CoefficientField operator+(const CoefficientField& a0, const CoefficientField& b0) {
    auto [a, b] = unify(a0, b0);
    switch (a.kind()) {
        case FieldKind::kPolynomial: return a.polynomial() + b.polynomial();
        case FieldKind::kSampled: {
            SampledField s = a.sampled();
            const auto& bv = b.sampled().values;
            for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] += bv[i];
            return s;
        }
        case FieldKind::kCallable: {
            auto fa = a.callable().fn, fb = b.callable().fn;
            return CallableField{a.dim(), [fa, fb](std::span<const double> x) { return fa(x) + fb(x); }};
        }
    }
    return a;
}

CoefficientField operator*(const CoefficientField& a0, const CoefficientField& b0) {
    auto [a, b] = unify(a0, b0);
    switch (a.kind()) {
        case FieldKind::kPolynomial: return a.polynomial() * b.polynomial();
        case FieldKind::kSampled: {
            SampledField s = a.sampled();
            const auto& bv = b.sampled().values;
            for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= bv[i];
            return s;
        }
        case FieldKind::kCallable: {
            auto fa = a.callable().fn, fb = b.callable().fn;
            return CallableField{a.dim(), [fa, fb](std::span<const double> x) { return fa(x) * fb(x); }};
        }
    }
    return a;
}

CoefficientField CoefficientField::scaled(const Rational& c) const {
    if (kind() == FieldKind::kPolynomial) return polynomial() * c;
    return scaled(c.get_d());
}

CoefficientField CoefficientField::scaled(double c) const {
    switch (kind()) {
        case FieldKind::kPolynomial: return polynomial() * rational_from_double(c);
        case FieldKind::kSampled: {
            SampledField s = sampled();
            for (double& v : s.values) v *= c;
            return s;
        }
        case FieldKind::kCallable: {
            auto f = callable().fn;
            return CallableField{dim(), [f, c](std::span<const double> x) { return c * f(x); }};
        }
    }
    return *this;
}

CoefficientField CoefficientField::operator-() const {
    if (kind() == FieldKind::kPolynomial) return -polynomial();
    return scaled(-1.0);
}

}  // namespace fibreforms
