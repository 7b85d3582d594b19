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

#include "fibreforms/form.hpp"

#include <algorithm>
#include <cmath>

#include "fibreforms/error.hpp"

namespace fibreforms {

FormValue::FormValue(int d, int deg) : dim(d), degree(deg), c(basis(d, deg).size(), 0.0) {}

FormValue wedge(const FormValue& a, const FormValue& b) {
    if (a.dim != b.dim) throw DimensionError("wedge: chart dimension mismatch");
    FormValue r(a.dim, a.degree + b.degree);
    if (a.degree + b.degree > a.dim) return r;
    const auto& ba = basis(a.dim, a.degree);
    const auto& bb = basis(b.dim, b.degree);
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (a.c[i] == 0.0) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            if (b.c[j] == 0.0) continue;
            if (auto m = MultiIndex::merge(ba[i], bb[j])) r[m->first] += m->second * a.c[i] * b.c[j];
        }
    }
    return r;
}

FormValue interior(std::span<const double> v, const FormValue& a) {
    if (a.degree == 0) throw DimensionError("interior product of a 0-form");
    FormValue r(a.dim, a.degree - 1);
    const auto& ba = basis(a.dim, a.degree);
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (a.c[i] == 0.0) continue;
        const MultiIndex& m = ba[i];
        for (int p = 0; p < m.valency(); ++p) {
            // dx^{i_p} moved to the front picks up (-1)^p
            const double s = (p % 2) ? -1.0 : 1.0;
            r[m.erase_at(p)] += s * v[static_cast<std::size_t>(m[p])] * a.c[i];
        }
    }
    return r;
}

Form::Form(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) throw DimensionError("chart dimension out of range");
    if (degree < 0) throw DimensionError("negative form degree");
}

Form Form::monomial(int dim, const MultiIndex& idx, CoefficientField coefficient) {
    Form f(dim, idx.valency());
    f.add_term(idx, coefficient);
    return f;
}

Form Form::dx(int dim, int axis) {
    return monomial(dim, MultiIndex::from_sorted({axis}), Polynomial::constant(dim, 1));
}

Form Form::scalar(CoefficientField f) {
    const int d = f.dim();
    return monomial(d, MultiIndex{}, std::move(f));
}

void Form::absorb_kind(const CoefficientField& f) {
    if (f.kind() == kind_ || terms_.empty()) {
        kind_ = f.kind();
        return;
    }
    if (static_cast<int>(f.kind()) > static_cast<int>(kind_)) {
        const Grid* grid = f.kind() == FieldKind::kSampled ? &f.sampled().grid : nullptr;
        for (auto& [m, c] : terms_) c = c.promote(f.kind(), grid);
        kind_ = f.kind();
    }
}

void Form::add_term(const MultiIndex& idx, const CoefficientField& f) {
    if (idx.valency() != degree_) throw DimensionError("term valency differs from form degree");
    if (degree_ > dim_) return;
    if (f.dim() != dim_) throw DimensionError("coefficient lives on a chart of different dimension");
    if (idx.valency() > 0 && idx[idx.valency() - 1] >= dim_) throw DimensionError("multi-index exceeds chart dimension");
    absorb_kind(f);
    const Grid* grid = kind_ == FieldKind::kSampled && !terms_.empty() ? &terms_.begin()->second.sampled().grid : nullptr;
    if (kind_ == FieldKind::kSampled && !grid && f.kind() == FieldKind::kSampled) grid = &f.sampled().grid;
    CoefficientField g = f.promote(kind_, grid);
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
        if (!g.is_zero()) terms_.emplace(idx, std::move(g));
        return;
    }
    it->second = it->second + g;
    if (it->second.is_zero()) terms_.erase(it);
}

CoefficientField Form::coefficient(const MultiIndex& idx) const {
    auto it = terms_.find(idx);
    if (it != terms_.end()) return it->second;
    return Polynomial(dim_);
}

bool Form::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_zero(); });
}

FormValue Form::eval(std::span<const double> x) const {
    FormValue v(dim_, degree_);
    if (degree_ > dim_) return v;
    for (const auto& [m, c] : terms_) v[m] = c.eval(x);
    return v;
}

Form& Form::operator+=(const Form& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionError("adding forms of different shape");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionError("subtracting forms of different shape");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Form Form::operator-() const { return scaled(Rational(-1)); }

Form Form::scaled(const Rational& c) const {
    Form r(dim_, degree_);
    for (const auto& [m, f] : terms_) r.add_term(m, f.scaled(c));
    return r;
}

Form Form::scaled(double c) const {
    Form r(dim_, degree_);
    for (const auto& [m, f] : terms_) r.add_term(m, f.scaled(c));
    return r;
}

Form Form::times(const CoefficientField& g) const {
    Form r(dim_, degree_);
    for (const auto& [m, f] : terms_) r.add_term(m, f * g);
    return r;
}

Form Form::promoted(FieldKind k, const Grid* grid) const {
    Form r(dim_, degree_);
    for (const auto& [m, f] : terms_) r.add_term(m, f.promote(k, grid));
    return r;
}

bool operator==(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_) return false;
    if (a.kind_ != FieldKind::kPolynomial || b.kind_ != FieldKind::kPolynomial)
        throw DomainError("exact comparison needs polynomial coefficients");
    return (a - b).terms_.empty();
}

Form wedge(const Form& a, const Form& b) {
    if (a.dim() != b.dim()) throw DimensionError("wedge: chart dimension mismatch");
    Form r(a.dim(), a.degree() + b.degree());
    if (r.degree() > r.dim()) return r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            auto merged = MultiIndex::merge(ma, mb);
            if (!merged) continue;
            CoefficientField prod = ca * cb;
            r.add_term(merged->first, merged->second > 0 ? prod : -prod);
        }
    }
    return r;
}

Form exterior_derivative(const Form& a) {
    Form r(a.dim(), a.degree() + 1);
    if (r.degree() > r.dim()) return r;
    for (const auto& [m, c] : a.terms()) {
        for (int j = 0; j < a.dim(); ++j) {
            if (m.contains(j)) continue;
            auto merged = MultiIndex::merge(MultiIndex::from_sorted({j}), m);
            CoefficientField dj = c.partial(j);
            if (dj.is_zero()) continue;
            r.add_term(merged->first, merged->second > 0 ? dj : -dj);
        }
    }
    return r;
}

double max_abs(const Form& a, std::span<const std::vector<double>> points) {
    double m = 0.0;
    for (const auto& x : points)
        for (const auto& [idx, c] : a.terms()) m = std::max(m, std::abs(c.eval(x)));
    return m;
}

}  // namespace fibreforms
