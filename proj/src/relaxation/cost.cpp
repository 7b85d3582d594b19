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

#include "fibreforms/relaxation/cost.hpp"

#include <cmath>
#include <limits>

#include "fibreforms/comass.hpp"
#include "fibreforms/error.hpp"

namespace fibreforms {

ShadowValue project_value(const FormValue& w, int n) {
    ShadowValue t{FormValue(w.dim, w.degree), {}};
    const auto& b = basis(w.dim, w.degree);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const int star = b[i].count_below(n);
        if (star == w.degree) {
            t.f.c[i] = w.c[i];
            continue;
        }
        FormValue g(w.dim, star);
        g[b[i].slice(0, star)] = w.c[i];
        t.g.push_back(std::move(g));
    }
    return t;
}

namespace {

ComassOptions fast_comass() {
    ComassOptions o;
    o.want_maximizer = false;
    return o;
}

double sum_squares(const ShadowValue& t) {
    double s = 0.0;
    for (double v : t.f.c) s += v * v;
    for (const auto& g : t.g)
        for (double v : g.c) s += v * v;
    return s;
}

ShadowValue scaled_copy(const ShadowValue& t, double a) {
    ShadowValue r = t;
    for (double& v : r.f.c) v *= a;
    for (auto& g : r.g)
        for (double& v : g.c) v *= a;
    return r;
}

ShadowValue zero_like(const ShadowValue& t) { return scaled_copy(t, 0.0); }

}  // namespace

double tuple_norm(const ShadowValue& t, const Eigen::MatrixXd& metric) {
    const ComassOptions opt = fast_comass();
    double r = comass(t.f, metric, opt).value;
    for (const auto& g : t.g) r += comass(g, metric, opt).value;
    return r;
}

double CostFunction::operator()(const ShadowValue& t, const Eigen::MatrixXd& g) const {
    const double v = eval(t, g);
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
        throw DomainError("cost '" + name + "' returned an invalid value");
    return v;
}

CostFunction quadratic_cost(int ell) {
    CostFunction c;
    c.ell = ell;
    c.name = "quadratic";
    c.eval = [](const ShadowValue& t, const Eigen::MatrixXd&) { return sum_squares(t); };
    c.gradient = [](const ShadowValue& t, const Eigen::MatrixXd&) { return scaled_copy(t, 2.0); };
    return c;
}

CostFunction comass_power_cost(int ell, double s) {
    if (!(s > 1.0)) throw DomainError("growth exponent s must exceed 1");
    CostFunction c;
    c.ell = ell;
    c.name = "comass_power";
    c.eval = [s](const ShadowValue& t, const Eigen::MatrixXd& g) { return std::pow(tuple_norm(t, g), s); };
    c.gradient = [s](const ShadowValue& t, const Eigen::MatrixXd& g) {
        const ComassOptions opt = fast_comass();
        ShadowValue grad = zero_like(t);
        std::vector<ComassResult> parts;
        parts.push_back(comass(t.f, g, opt));
        for (const auto& gi : t.g) parts.push_back(comass(gi, g, opt));
        double norm = 0.0;
        for (const auto& p : parts) norm += p.value;
        const double outer = s * std::pow(norm, s - 1.0);
        for (std::size_t i = 0; i < grad.f.c.size(); ++i) grad.f.c[i] = outer * parts[0].gradient(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < grad.g.size(); ++j)
            for (std::size_t i = 0; i < grad.g[j].c.size(); ++i)
                grad.g[j].c[i] = outer * parts[j + 1].gradient(static_cast<Eigen::Index>(i));
        return grad;
    };
    c.growth = CostGrowth{0.0, 0.0, 1.0, 1.0, s};
    return c;
}

CostFunction constant_cost(int ell, double a) {
    CostFunction c;
    c.ell = ell;
    c.name = "constant";
    c.eval = [a](const ShadowValue&, const Eigen::MatrixXd&) { return a; };
    c.gradient = [](const ShadowValue& t, const Eigen::MatrixXd&) { return zero_like(t); };
    return c;
}

std::vector<std::string> named_cost_ids() { return {"zero", "negated_quadratic", "double_well", "metric_quadratic"}; }

CostFunction named_cost(const std::string& id, int ell) {
    CostFunction c;
    c.ell = ell;
    c.name = "named:" + id;
    if (id == "zero") {
        c = constant_cost(ell, 0.0);
        c.name = "named:zero";
    } else if (id == "negated_quadratic") {
        c.eval = [](const ShadowValue& t, const Eigen::MatrixXd&) { return -sum_squares(t); };
        c.gradient = [](const ShadowValue& t, const Eigen::MatrixXd&) { return scaled_copy(t, -2.0); };
    } else if (id == "double_well") {
        // |v -+ e|^2 = |v|^2 -+ 2 v_e + 1, with v_e the first coefficient of f
        c.eval = [](const ShadowValue& t, const Eigen::MatrixXd&) {
            const double e = t.f.c.empty() ? 0.0 : t.f.c[0];
            return sum_squares(t) - 2.0 * std::abs(e) + 1.0;
        };
        c.gradient = [](const ShadowValue& t, const Eigen::MatrixXd&) {
            ShadowValue g = scaled_copy(t, 2.0);
            if (!g.f.c.empty()) g.f.c[0] -= t.f.c[0] >= 0 ? 2.0 : -2.0;
            return g;
        };
    } else if (id == "metric_quadratic") {
        auto part = [](const FormValue& v, const Eigen::MatrixXd& ginv) {
            const Eigen::MatrixXd gram = covector_gram(ginv, v.degree);
            const Eigen::Map<const Eigen::VectorXd> x(v.c.data(), static_cast<Eigen::Index>(v.c.size()));
            return Eigen::VectorXd(gram * x);
        };
        c.eval = [part](const ShadowValue& t, const Eigen::MatrixXd& g) {
            const Eigen::MatrixXd ginv = g.inverse();
            auto q = [&](const FormValue& v) {
                const Eigen::Map<const Eigen::VectorXd> x(v.c.data(), static_cast<Eigen::Index>(v.c.size()));
                return x.dot(part(v, ginv));
            };
            double s = q(t.f);
            for (const auto& gi : t.g) s += q(gi);
            return s;
        };
        c.gradient = [part](const ShadowValue& t, const Eigen::MatrixXd& g) {
            const Eigen::MatrixXd ginv = g.inverse();
            ShadowValue r = t;
            auto fill = [&](const FormValue& v, FormValue& out) {
                const Eigen::VectorXd p = part(v, ginv);
                for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = 2.0 * p(static_cast<Eigen::Index>(i));
            };
            fill(t.f, r.f);
            for (std::size_t j = 0; j < t.g.size(); ++j) fill(t.g[j], r.g[j]);
            return r;
        };
    } else {
        throw DomainError("unknown named cost '" + id + "'");
    }
    return c;
}

double GaugedCost::operator()(const FormValue& w, const Eigen::MatrixXd& g) const {
    return cost(project_value(w, n), g);
}

FormValue GaugedCost::gradient(const FormValue& w, const Eigen::MatrixXd& g) const {
    if (!cost.gradient) throw DomainError("cost '" + cost.name + "' has no derivative");
    const ShadowValue t = project_value(w, n);
    const ShadowValue gt = cost.gradient(t, g);
    // pr_H only relabels components, so each w_J feeds exactly one slot
    FormValue out(w.dim, w.degree);
    const auto& b = basis(w.dim, w.degree);
    std::size_t entry = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const int star = b[i].count_below(n);
        if (star == w.degree) {
            out.c[i] = gt.f.c[i];
        } else {
            out.c[i] = gt.g[entry][b[i].slice(0, star)];
            ++entry;
        }
    }
    return out;
}

GaugedCost gauged_cost(CostFunction cost, int n) { return GaugedCost{std::move(cost), n}; }

}  // namespace fibreforms
