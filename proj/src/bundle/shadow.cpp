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

#include "fibreforms/bundle/shadow.hpp"

#include <cmath>

#include "fibreforms/error.hpp"

namespace fibreforms {

namespace {

Form unit_form(int dim, const MultiIndex& m, int sign = 1) {
    return Form::monomial(dim, m, Polynomial::constant(dim, sign));
}

}  // namespace

ProjectedTuple horizontal_projection(const Form& w, int n) {
    const int dim = w.dim();
    const int ell = w.degree();
    ProjectedTuple out{Form(dim, ell), {}};
    for (const auto& [m, c] : w.terms()) {
        const int star = m.count_below(n);
        if (star == ell) {
            out.f.add_term(m, c);
            continue;
        }
        out.entries.push_back({Form::monomial(dim, m.slice(0, star), c), m, star});
    }
    return out;
}

ShadowData shadow_decompose(const Form& xi, int n, int k) {
    const int dim = n + k;
    if (xi.dim() != dim) throw DimensionError("potential lives on a chart of different dimension");
    const int ell = xi.degree() + 1;
    if (ell > dim) throw DimensionError("target degree exceeds the chart dimension");

    ShadowData sd;
    sd.n = n;
    sd.k = k;
    sd.ell = ell;
    sd.f = Form(dim, ell);
    bool any_horizontal_index = false;
    for (const auto& [m, c] : xi.terms())
        if (m.count_below(n) > 0 || m.valency() == 0) any_horizontal_index = true;
    sd.purely_vertical = !xi.terms().empty() && !any_horizontal_index;
    if (sd.purely_vertical)
        sd.warnings.emplace_back("potential is purely vertical; every entry has a 0-form or dx^j shadow");

    for (const auto& [m, c] : xi.terms()) {
        const int star = m.count_below(n);
        const MultiIndex head = m.slice(0, star);
        const MultiIndex tail = m.slice(star, m.valency());
        for (int j = 0; j < dim; ++j) {
            if (m.contains(j)) continue;
            const CoefficientField dj = c.partial(j);
            if (dj.is_zero()) continue;
            const MultiIndex mj = MultiIndex::from_sorted({j});
            if (j < n && star == ell - 1) {
                auto merged = MultiIndex::merge(mj, m);
                sd.f.add_term(merged->first, merged->second > 0 ? dj : -dj);
            } else if (j < n) {
                auto gm = MultiIndex::merge(mj, head);
                ShadowEntry e;
                e.g = Form::monomial(dim, gm->first, gm->second > 0 ? dj : -dj);
                e.theta = unit_form(dim, tail);
                e.source = m;
                e.star = star;
                e.j = j;
                sd.entries.push_back(std::move(e));
            } else {
                auto tm = MultiIndex::merge(mj, tail);
                const int sign = ((star % 2) ? -1 : 1) * tm->second;
                ShadowEntry e;
                e.g = Form::monomial(dim, head, dj);
                e.theta = unit_form(dim, tm->first, sign);
                e.source = m;
                e.star = star;
                e.j = j;
                sd.entries.push_back(std::move(e));
            }
        }
    }
    return sd;
}

Form shadow_reconstruct(const ShadowData& sd) {
    Form w = sd.f;
    for (const auto& e : sd.entries) {
        if (e.g.degree() + e.theta.degree() != sd.ell) throw DimensionError("entry degrees do not add up to l");
        w += wedge(e.g, e.theta);
    }
    return w;
}

ClosednessReport check_closedness(const Form& w, double tolerance, const Box* probe) {
    ClosednessReport r;
    r.residual = exterior_derivative(w);
    switch (r.residual.kind()) {
        case FieldKind::kPolynomial:
            r.closed = r.residual.is_zero();
            for (const auto& [m, c] : r.residual.terms())
                for (const auto& [e, q] : c.polynomial().terms()) r.max_residual = std::max(r.max_residual, std::abs(q.get_d()));
            return r;
        case FieldKind::kSampled:
            for (const auto& [m, c] : r.residual.terms())
                for (double v : c.sampled().values) r.max_residual = std::max(r.max_residual, std::abs(v));
            break;
        case FieldKind::kCallable: {
            const Box box = probe ? *probe : Box::unit(w.dim());
            std::vector<int> shape(static_cast<std::size_t>(w.dim()), 5);
            const Grid grid{box, shape};
            std::vector<double> x(static_cast<std::size_t>(w.dim()));
            for (std::size_t i = 0; i < grid.size(); ++i) {
                grid.node(i, x);
                for (const auto& [m, c] : r.residual.terms()) r.max_residual = std::max(r.max_residual, std::abs(c.eval(x)));
            }
            break;
        }
    }
    r.closed = r.max_residual < tolerance;
    return r;
}

ClosednessReport check_closedness(const ShadowData& sd, double tolerance, const Box* probe) {
    return check_closedness(shadow_reconstruct(sd), tolerance, probe);
}

std::uint64_t stated_entry_bound(int n, int k, int ell) {
    std::uint64_t s = 0;
    for (int star = 1; star <= ell - 2; ++star) s += binomial(n, star) * binomial(k, ell - star);
    return static_cast<std::uint64_t>(n + k) * s;
}

std::uint64_t construction_entry_bound(int n, int k, int ell) {
    const int dim = n + k;
    if (ell < 1 || ell > dim) return 0;
    return binomial(dim, ell - 1) * static_cast<std::uint64_t>(dim - ell + 1) -
           binomial(n, ell - 1) * static_cast<std::uint64_t>(std::max(n - ell + 1, 0));
}

}  // namespace fibreforms
