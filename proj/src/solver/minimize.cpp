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

#include "fibreforms/solver/minimize.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

#include "fibreforms/error.hpp"
#include "fibreforms/rng.hpp"

namespace fibreforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluator {
    const DiscreteObjective& obj;
    bool adjoint;
    double fd_step;
    int evaluations = 0;

    double value(const DiscreteField& xi) {
        ++evaluations;
        return obj.value(xi);
    }
    double value_and_gradient(const DiscreteField& xi, Eigen::VectorXd& g) {
        ++evaluations;
        if (adjoint) return obj.value_and_gradient(xi, g);
        const double v = obj.value(xi);
        g = obj.fd_gradient(xi, fd_step);
        return v;
    }
};

}  // namespace

const char* to_string(GradientMode m) {
    switch (m) {
        case GradientMode::kAuto: return "auto";
        case GradientMode::kAdjoint: return "adjoint";
        case GradientMode::kFiniteDifference: return "finite_difference";
    }
    return "auto";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::kConverged: return "converged";
        case Termination::kMaxIterations: return "max_iterations";
        case Termination::kLineSearchFailure: return "line_search_failure";
        case Termination::kSmallDecrease: return "small_decrease";
    }
    return "converged";
}

GradientMode gradient_mode_from_string(const std::string& s) {
    if (s == "auto") return GradientMode::kAuto;
    if (s == "adjoint") return GradientMode::kAdjoint;
    if (s == "finite_difference" || s == "fd") return GradientMode::kFiniteDifference;
    throw ParseError("gradient mode", "unknown gradient mode '" + s + "'");
}

SolveResult minimize(const GaugedProblem& p, std::optional<DiscreteField> init, const SolveOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const int res = init ? init->resolution() : p.disc.resolution;
    DiscreteField xi = init ? std::move(*init) : DiscreteField::from_gauge(p, res);
    const DiscreteObjective obj(p, res, p.disc.quadrature_order);
    if (xi.dofs() == 0) throw DomainError("no interior degrees of freedom");

    GradientMode mode = opt.mode;
    if (mode == GradientMode::kAuto) mode = obj.differentiable() ? GradientMode::kAdjoint : GradientMode::kFiniteDifference;
    if (mode == GradientMode::kAdjoint && !obj.differentiable()) throw DomainError("cost is not differentiable");
    Evaluator ev{obj, mode == GradientMode::kAdjoint, opt.fd_step};

    Eigen::VectorXd x = xi.get_dofs();
    if (opt.init_noise > 0.0) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            CounterRng rng(opt.seed, CounterRng::key(static_cast<std::uint64_t>(i), 0x1417));
            x(i) += opt.init_noise * rng.normal();
        }
        xi.set_dofs(x);
    }

    SolveReport rep;
    rep.resolution = res;
    rep.quadrature_order = p.disc.quadrature_order;
    rep.dofs = xi.dofs();
    rep.mode = mode;

    Eigen::VectorXd g;
    double f = ev.value_and_gradient(xi, g);
    if (f == kInf) throw DomainError("objective is +inf at the initial field");
    rep.history.push_back(f);

    std::deque<Eigen::VectorXd> S, Y;
    std::deque<double> rho;
    DiscreteField trial = xi;
    rep.termination = Termination::kMaxIterations;
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (g.lpNorm<Eigen::Infinity>() <= opt.gtol * (1.0 + std::abs(f))) {
            rep.termination = Termination::kConverged;
            break;
        }
        // two-loop recursion
        Eigen::VectorXd q = g;
        std::vector<double> alpha(S.size());
        for (std::size_t i = S.size(); i-- > 0;) {
            alpha[i] = rho[i] * S[i].dot(q);
            q -= alpha[i] * Y[i];
        }
        if (!S.empty()) q *= S.back().dot(Y.back()) / Y.back().squaredNorm();
        else q *= 1.0 / std::max(1.0, g.norm());
        for (std::size_t i = 0; i < S.size(); ++i) {
            const double beta = rho[i] * Y[i].dot(q);
            q += (alpha[i] - beta) * S[i];
        }
        Eigen::VectorXd d = -q;
        double slope = g.dot(d);
        if (!(slope < 0.0)) {
            S.clear(), Y.clear(), rho.clear();
            d = -g / std::max(1.0, g.norm());
            slope = g.dot(d);
        }

        // Armijo backtracking
        double t = 1.0, fn = kInf;
        Eigen::VectorXd gn, xn;
        bool accepted = false;
        for (int b = 0; b <= opt.max_backtracks; ++b) {
            xn = x + t * d;
            trial.set_dofs(xn);
            fn = ev.value_and_gradient(trial, gn);
            if (fn <= f + 1e-4 * t * slope && fn <= f) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            rep.termination = Termination::kLineSearchFailure;
            break;
        }
        const Eigen::VectorXd s = xn - x, y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            S.push_back(s), Y.push_back(y), rho.push_back(1.0 / sy);
            if (static_cast<int>(S.size()) > opt.memory) S.pop_front(), Y.pop_front(), rho.pop_front();
        }
        const double drop = f - fn;
        x = xn, g = gn, f = fn;
        xi.set_dofs(x);
        rep.history.push_back(f);
        rep.iterations = it + 1;
        if (drop <= opt.ftol * (1.0 + std::abs(f))) {
            rep.termination = g.lpNorm<Eigen::Infinity>() <= opt.gtol * (1.0 + std::abs(f)) ? Termination::kConverged
                                                                                               : Termination::kSmallDecrease;
            break;
        }
    }
    if (rep.termination == Termination::kMaxIterations && g.lpNorm<Eigen::Infinity>() <= opt.gtol * (1.0 + std::abs(f)))
        rep.termination = Termination::kConverged;
    rep.objective = f;
    rep.grad_norm = g.lpNorm<Eigen::Infinity>();
    rep.evaluations = ev.evaluations;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(xi), std::move(rep)};
}

double gradient_check(const GaugedProblem& p, const DiscreteField& xi, int directions, std::uint64_t seed, double step) {
    const DiscreteObjective obj(p, xi.resolution(), p.disc.quadrature_order);
    if (!obj.differentiable()) throw DomainError("cost is not differentiable");
    Eigen::VectorXd g;
    obj.value_and_gradient(xi, g);
    const Eigen::VectorXd x = xi.get_dofs();
    DiscreteField probe = xi;
    double worst = 0.0;
    for (int k = 0; k < directions; ++k) {
        CounterRng rng(seed, CounterRng::key(static_cast<std::uint64_t>(k), 0x9c));
        Eigen::VectorXd v(x.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
        v.normalize();
        probe.set_dofs(x + step * v);
        const double up = obj.value(probe);
        probe.set_dofs(x - step * v);
        const double dn = obj.value(probe);
        const double fd = (up - dn) / (2.0 * step);
        const double an = g.dot(v);
        const double scale = std::max(std::abs(fd), std::abs(an));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(fd - an) / scale);
    }
    return worst;
}

RefinementStudy refinement_study(const GaugedProblem& p, const std::vector<int>& resolutions, const SolveOptions& opt) {
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (resolutions[i] <= resolutions[i - 1]) throw DomainError("resolutions must be ascending");
    RefinementStudy st;
    std::optional<DiscreteField> warm;
    SolveOptions o = opt;
    for (int r : resolutions) {
        DiscreteField init = warm ? warm->prolongate(p, r) : DiscreteField::from_gauge(p, r);
        if (warm) o.init_noise = 0.0;
        SolveResult s = minimize(p, std::move(init), o);
        const double h = (p.domain.box.hi[0] - p.domain.box.lo[0]) / (r - 1);
        st.rows.push_back({r, h, s.report.objective, s.report.iterations, s.report.termination});
        warm = std::move(s.field);
    }
    const auto& rows = st.rows;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].objective > rows[i - 1].objective + 1e-6 * (1.0 + std::abs(rows[i - 1].objective))) st.nonincreasing = false;
    if (rows.size() >= 3) {
        // a converging discretization shrinks successive drops geometrically
        bool dropping = true, contracting = false;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double drop = rows[i - 1].objective - rows[i].objective;
            if (!(drop > 1e-3 * (1.0 + std::abs(rows[i - 1].objective)))) dropping = false;
            if (i >= 2) {
                const double prev = rows[i - 2].objective - rows[i - 1].objective;
                if (drop < 0.5 * prev) contracting = true;
            }
        }
        st.relaxation_gap_suspected = dropping && !contracting;
    }
    return st;
}

}  // namespace fibreforms
