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

#include <doctest.h>

#include <Eigen/Sparse>
#include <cmath>
#include <limits>

#include <fibreforms/diffeomorphism.hpp>
#include <fibreforms/error.hpp>
#include <fibreforms/parallel.hpp>
#include <fibreforms/quadrature.hpp>
#include <fibreforms/solver/minimize.hpp>

#include "minimizer_oracle.hpp"

using namespace fibreforms;
using fibreforms::testing::quadratic_oracle;

namespace {

Polynomial P(const char* s, int n = 2) { return parse_polynomial(s, n); }

const Box kUnit2{{0, 0}, {1, 1}};

GaugedProblem problem(const MetricField& g, CostFunction cost, Form gauge, int res, const Box& box = kUnit2) {
    Discretization d;
    d.resolution = res;
    return relax(BundleChart(1, 1, g, box), StarDomain::centered(box), std::move(cost), std::move(gauge), 2.0, d);
}

Form scalar(const char* s) { return Form::scalar(P(s)); }

bool nonincreasing(const std::vector<double>& h) {
    for (std::size_t i = 1; i < h.size(); ++i)
        if (h[i] > h[i - 1] + 1e-12 * (1 + std::abs(h[i - 1]))) return false;
    return true;
}

const char* kGauge = "x1^2*x2 - x2^3/3 + x1*x2^2 + x1";

}  // namespace

TEST_CASE("objective examples") {
    SUBCASE("zero cost") {
        const GaugedProblem p = problem(MetricField::euclidean(2), named_cost("zero", 1), scalar(kGauge), 9);
        DiscreteField f = DiscreteField::from_gauge(p, 9);
        CHECK(objective(p, f) == 0.0);
    }
    SUBCASE("quadratic cost at the zero gauge") {
        const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar("0"), 9);
        CHECK(objective(p, DiscreteField::from_gauge(p, 9)) == 0.0);
    }
    SUBCASE("sampled polynomial matches the symbolic integral at fourth order") {
        const char* xi = "x1^5*x2 - x2^4*x1^2 + x1^3";
        const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar(xi), 9);
        const double exact = gauged_objective(p, scalar(xi), 12);
        std::vector<double> err;
        for (int r : {33, 65, 129}) err.push_back(std::abs(objective(p, DiscreteField::from_gauge(p, r)) - exact));
        CHECK(err[0] < 1e-5 * exact);
        CHECK(std::log2(err[0] / err[1]) > 3.5);
        CHECK(std::log2(err[1] / err[2]) > 3.75);
    }
    SUBCASE("resolution errors") {
        const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar("0"), 9);
        CHECK_THROWS_WITH_AS(DiscreteField::from_gauge(p, 3), "no interior degrees of freedom", DomainError);
        const DiscreteObjective obj(p, 9, 4);
        CHECK_THROWS_AS(obj.value(DiscreteField::from_gauge(p, 11)), DimensionError);
    }
}

TEST_CASE("adjoint gradient agrees with finite differences") {
    SUBCASE("quadratic cost") {
        const GaugedProblem p = problem(MetricField::diagonal({P("1"), P("(1+x1)^2")}), quadratic_cost(1), scalar(kGauge), 9);
        DiscreteField f = DiscreteField::from_gauge(p, 9);
        Eigen::VectorXd x = f.get_dofs();
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += 0.1 * std::sin(3.0 * static_cast<double>(i));
        f.set_dofs(x);
        CHECK(gradient_check(p, f, 20, 7) <= 1e-6);
        // the full fallback gradient matches the adjoint one too
        const DiscreteObjective obj(p, 9, 4);
        Eigen::VectorXd g;
        obj.value_and_gradient(f, g);
        CHECK((obj.fd_gradient(f) - g).lpNorm<Eigen::Infinity>() <= 1e-6 * (1 + g.lpNorm<Eigen::Infinity>()));
    }
    SUBCASE("zero cost") {
        const GaugedProblem p = problem(MetricField::euclidean(2), named_cost("zero", 1), scalar(kGauge), 7);
        CHECK(gradient_check(p, DiscreteField::from_gauge(p, 7), 20, 7) == 0.0);
    }
    SUBCASE("comass power cost away from the origin") {
        const GaugedProblem p = problem(MetricField::euclidean(2), comass_power_cost(1, 2.0), scalar(kGauge), 9);
        CHECK(gradient_check(p, DiscreteField::from_gauge(p, 9), 20, 8) <= 1e-4);
    }
    SUBCASE("two-form costs in three dimensions") {
        const int d = 3;
        Form gauge(d, 1);
        gauge.add_term(MultiIndex::from_sorted({0}), P("x2*x3 + x1^2", d));
        gauge.add_term(MultiIndex::from_sorted({2}), P("x1*x2^2", d));
        Discretization disc;
        const Box box = Box::unit(d);
        const GaugedProblem p = relax(BundleChart(2, 1, MetricField::diagonal({P("1", d), P("1+x1^2", d), P("1", d)}), box),
                                      StarDomain::centered(box), comass_power_cost(2, 2.0), gauge, 2.0, disc);
        CHECK(gradient_check(p, DiscreteField::from_gauge(p, 6), 10, 9) <= 1e-4);
    }
    SUBCASE("non-differentiable cost is flagged") {
        CostFunction c = quadratic_cost(1);
        c.gradient = nullptr;
        const GaugedProblem p = problem(MetricField::euclidean(2), c, scalar(kGauge), 7);
        CHECK_THROWS_AS(gradient_check(p, DiscreteField::from_gauge(p, 7), 3, 1), DomainError);
    }
}

TEST_CASE("quadratic minimization matches the sparse linear-solve oracle") {
    for (const MetricField& g : {MetricField::euclidean(2), MetricField::diagonal({P("1"), P("(1+x1)^2")})}) {
        for (int r : {9, 17}) {
            const GaugedProblem p = problem(g, quadratic_cost(1), scalar(kGauge), r);
            const SolveResult s = minimize(p);
            const double oracle = quadratic_oracle(p, r, p.disc.quadrature_order);
            CHECK(std::abs(s.report.objective - oracle) <= 1e-6 * oracle);
            CHECK(nonincreasing(s.report.history));
            CHECK(s.field.same_boundary(DiscreteField::from_gauge(p, r)));
            CHECK(s.report.termination != Termination::kLineSearchFailure);
        }
    }
}

TEST_CASE("harmonic gauge is already optimal") {
    const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar("x1^3 - 3*x1*x2^2"), 9);
    const SolveResult s = minimize(p);
    CHECK(s.report.objective == doctest::Approx(5.6).epsilon(1e-12));
}

TEST_CASE("constant cost with zero gauge returns the gauge") {
    const GaugedProblem p = problem(MetricField::euclidean(2), constant_cost(1, 2.5), scalar("0"), 9);
    const SolveResult s = minimize(p);
    CHECK(s.field.get_dofs().isZero(0.0));
    CHECK(s.report.objective == doctest::Approx(2.5).epsilon(1e-13));
    const RefinementStudy st = refinement_study(p, {5, 9, 17});
    for (const auto& row : st.rows) CHECK(row.objective == doctest::Approx(2.5).epsilon(1e-13));
    CHECK_FALSE(st.relaxation_gap_suspected);
}

TEST_CASE("+inf at the initial field is an error") {
    CostFunction c = quadratic_cost(1);
    c.eval = [](const ShadowValue& t, const Eigen::MatrixXd&) {
        return std::abs(t.f.c[0]) > 0.5 ? std::numeric_limits<double>::infinity() : t.f.c[0] * t.f.c[0];
    };
    const GaugedProblem p = problem(MetricField::euclidean(2), c, scalar("x1"), 7);
    CHECK_THROWS_AS(minimize(p), DomainError);
}

TEST_CASE("refinement studies") {
    SUBCASE("quadratic cost: oracle agreement and contraction towards the continuum value") {
        const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar(kGauge), 9);
        const RefinementStudy st = refinement_study(p, {9, 17, 33});
        REQUIRE(st.rows.size() == 3);
        CHECK(st.nonincreasing);
        CHECK_FALSE(st.relaxation_gap_suspected);
        std::vector<double> oracle;
        for (const auto& row : st.rows) {
            oracle.push_back(quadratic_oracle(p, row.resolution, p.disc.quadrature_order));
            CHECK(std::abs(row.objective - oracle.back()) <= 1e-6 * oracle.back());
        }
        // Richardson estimate of the continuum value, then an h^2 envelope
        const double cont = oracle[2] - (oracle[1] - oracle[2]) / 15.0;
        for (const auto& row : st.rows) CHECK(std::abs(row.objective - cont) <= row.h * row.h);
    }
    SUBCASE("double well keeps dropping and is flagged") {
        const GaugedProblem p = problem(MetricField::euclidean(2), named_cost("double_well", 1), scalar("0"), 9);
        SolveOptions o;
        o.init_noise = 0.05;
        const RefinementStudy st = refinement_study(p, {9, 17, 33});
        const RefinementStudy noisy = refinement_study(p, {9, 17, 33}, o);
        CHECK(noisy.relaxation_gap_suspected);
        CHECK(noisy.rows.back().objective < noisy.rows.front().objective);
        // started exactly at the symmetric gauge the subgradient vanishes
        CHECK(st.rows.front().objective == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("resolutions must ascend") {
        const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar("0"), 9);
        CHECK_THROWS_AS(refinement_study(p, {17, 9}), DomainError);
    }
}

TEST_CASE("prolongation keeps the gauge on the boundary bit for bit") {
    const GaugedProblem p = problem(MetricField::euclidean(2), quadratic_cost(1), scalar(kGauge), 9);
    const SolveResult s = minimize(p);
    const DiscreteField fine = s.field.prolongate(p, 17);
    CHECK(fine.same_boundary(DiscreteField::from_gauge(p, 17)));
    // multilinear prolongation reproduces the coarse values at shared nodes
    const auto& cv = s.field.values()[0];
    const auto& fv = fine.values()[0];
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            CHECK(fv[static_cast<std::size_t>(2 * i * 17 + 2 * j)] == doctest::Approx(cv[static_cast<std::size_t>(i * 9 + j)]).epsilon(1e-13));
}

TEST_CASE("frame consistency under a horizontal affine reparametrization") {
    const MetricField g = MetricField::diagonal({P("(1+x2)^2"), P("1+x1^2")});
    const Form gauge = scalar(kGauge);
    const GaugedProblem p = problem(g, named_cost("metric_quadratic", 1), gauge, 13);
    // phi(xh) = (xh1 / 2, xh2) maps [0,2] x [0,1] onto the unit square
    const Diffeomorphism phi({P("x1/2"), P("x2")});
    const Box ref{{0, 0}, {2, 1}};
    const GaugedProblem q = problem(pullback(phi, g), named_cost("metric_quadratic", 1), pullback(phi, gauge), 13, ref);
    const double a = minimize(p).report.objective, b = minimize(q).report.objective;
    CHECK(b == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("solves do not depend on the thread count") {
    const GaugedProblem p = problem(MetricField::diagonal({P("1"), P("(1+x1)^2")}), quadratic_cost(1), scalar(kGauge), 13);
    set_thread_count(1);
    const SolveReport a = minimize(p).report;
    set_thread_count(4);
    const SolveReport b = minimize(p).report;
    set_thread_count(1);
    CHECK(a.history == b.history);
    CHECK(a.iterations == b.iterations);
}
