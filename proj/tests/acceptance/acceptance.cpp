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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <fibreforms/bundle/homotopy.hpp>
#include <fibreforms/bundle/shadow.hpp>
#include <fibreforms/cli/app.hpp>
#include <fibreforms/diffeomorphism.hpp>
#include <fibreforms/error.hpp>
#include <fibreforms/io/config.hpp>
#include <fibreforms/parallel.hpp>
#include <fibreforms/qc/qc_test.hpp>
#include <fibreforms/relaxation/problem.hpp>
#include <fibreforms/solver/minimize.hpp>

#include "minimizer_oracle.hpp"
#include "random_forms.hpp"

using namespace fibreforms;
using fibreforms::testing::random_form;
using fibreforms::testing::random_triangular_map;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(FIBREFORMS_SOURCE_DIR) / "data";

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few messages end up in the detail line.
struct Tally {
    int failures = 0;
    std::vector<std::string> notes;
    void check(bool ok, const std::string& what) {
        if (ok) return;
        ++failures;
        if (notes.size() < 3) notes.push_back(what);
    }
    Verdict verdict(const std::string& summary) const {
        std::string d = summary;
        for (const auto& n : notes) d += "; " + n;
        if (failures > static_cast<int>(notes.size())) d += "; ...";
        return {failures == 0, d};
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Eigen::VectorXd random_vec(int n, CounterRng& rng) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    return v;
}

Eigen::MatrixXd random_spd(int n, CounterRng& rng) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    return m * m.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

QcOptions qc_opts(int trials, std::uint64_t seed) {
    QcOptions o;
    o.trials = trials;
    o.seed = seed;
    return o;
}

Box random_box(int dim, CounterRng& rng, std::vector<double>& x0) {
    Box b{std::vector<double>(static_cast<std::size_t>(dim)), std::vector<double>(static_cast<std::size_t>(dim))};
    x0.assign(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
        b.lo[a] = rng.uniform(-2, 1);
        b.hi[a] = b.lo[a] + rng.uniform(0.1, 2);
        x0[a] = rng.uniform(b.lo[a], b.hi[a]);
    }
    return b;
}

// 1. Exact algebra on random polynomial forms.
Verdict exact_algebra() {
    Tally t;
    CounterRng rng(1, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 1 + trial % 6;
        const int la = rng.uniform_int(0, dim), lb = rng.uniform_int(0, dim);
        const Form a = random_form(dim, la, rng), b = random_form(dim, lb, rng);
        const std::string tag = " (trial " + std::to_string(trial) + ")";
        t.check(wedge(a, b) == wedge(b, a).scaled(Rational((la * lb) % 2 ? -1 : 1)), "graded antisymmetry" + tag);
        t.check(exterior_derivative(wedge(a, b)) ==
                    wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)).scaled(Rational(la % 2 ? -1 : 1)),
                "Leibniz" + tag);
        t.check(exterior_derivative(exterior_derivative(a)).is_zero(), "d d != 0" + tag);
        // pullback along a triangular polynomial diffeomorphism; sparser forms keep degrees small
        const Diffeomorphism phi(random_triangular_map(dim, rng));
        const Form pa = random_form(dim, rng.uniform_int(0, dim), rng, 2, 0.3);
        const Form pb = random_form(dim, rng.uniform_int(0, dim), rng, 1, 0.3);
        t.check(pullback(phi, exterior_derivative(pa)) == exterior_derivative(pullback(phi, pa)), "pullback of d" + tag);
        t.check(pullback(phi, wedge(pa, pb)) == wedge(pullback(phi, pa), pullback(phi, pb)), "pullback of wedge" + tag);
    }
    return t.verdict("500 forms, N <= 6, zero residual in every identity");
}

// 2. Shadow round trip.
Verdict shadow_round_trip() {
    Tally t;
    const int cases[3][3] = {{2, 1, 2}, {3, 2, 3}, {3, 1, 2}};
    CounterRng rng(2, 0);
    std::size_t max_entries[3] = {0, 0, 0};
    for (int trial = 0; trial < 100; ++trial) {
        const int c = trial % 3;
        const int n = cases[c][0], k = cases[c][1], ell = cases[c][2];
        const Form xi = random_form(n + k, ell - 1, rng);
        const ShadowData sd = shadow_decompose(xi, n, k);
        const std::string tag = " (trial " + std::to_string(trial) + ")";
        t.check(shadow_reconstruct(sd) == exterior_derivative(xi), "reconstruction" + tag);
        for (const auto& e : sd.entries) t.check(exterior_derivative(e.theta).is_zero(), "theta not closed" + tag);
        const ClosednessReport cr = check_closedness(sd);
        t.check(cr.closed && cr.residual.is_zero(), "closedness residual" + tag);
        t.check(sd.entries.size() <= construction_entry_bound(n, k, ell), "construction bound" + tag);
        max_entries[c] = std::max(max_entries[c], sd.entries.size());
    }
    // The stated card bound is checked literally and reported as is.
    std::string bounds;
    for (int c = 0; c < 3; ++c) {
        const int n = cases[c][0], k = cases[c][1], ell = cases[c][2];
        const std::size_t stated = stated_entry_bound(n, k, ell);
        t.check(max_entries[c] <= stated, "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(ell) +
                                              ") has " + std::to_string(max_entries[c]) + " entries > stated card bound " +
                                              std::to_string(stated));
        bounds += " (" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(ell) + "): max " +
                  std::to_string(max_entries[c]) + " / stated " + std::to_string(stated) + " / construction " +
                  std::to_string(construction_entry_bound(n, k, ell));
    }
    return t.verdict("100 potentials, exact reconstruction and closed thetas;" + bounds);
}

// 3. Homotopy operator identities.
Verdict homotopy() {
    Tally t;
    CounterRng rng(3, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(1, 5);
        const int l = rng.uniform_int(1, n);
        std::vector<double> c(static_cast<std::size_t>(n));
        for (double& v : c) v = rng.uniform_int(-4, 4) / 8.0;
        const Form a = random_form(n, l, rng);
        t.check(exterior_derivative(homotopy_operator(a, c)) + homotopy_operator(exterior_derivative(a), c) == a,
                "dK + Kd != id (trial " + std::to_string(trial) + ")");
    }
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(1, 5);
        const int l = rng.uniform_int(1, n);
        const Form h = exterior_derivative(random_form(n, l - 1, rng));
        std::vector<double> c(static_cast<std::size_t>(n));
        Box box{std::vector<double>(static_cast<std::size_t>(n), -1.0), std::vector<double>(static_cast<std::size_t>(n), 1.0)};
        for (double& v : c) v = rng.uniform_int(-4, 4) / 8.0;
        t.check(exterior_derivative(poincare_antiderivative(h, StarDomain(box, c))) == h,
                "d K h != h (trial " + std::to_string(trial) + ")");
    }
    return t.verdict("50 + 50 random forms, exact");
}

// 4. Identity metric reduces to the Euclidean test.
Verdict euclidean_reduction() {
    Tally t;
    CounterRng rng(4, 0);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x0;
        const Box b = random_box(1 + trial % 4, rng, x0);
        const VolumeGrowth v = volume_growth_factor(x0, b, MetricField::euclidean(b.dim()));
        worst = std::max({worst, std::abs(v.value - b.volume()) / b.volume(), std::abs(v.quadrature - b.volume()) / b.volume()});
    }
    t.check(worst <= 1e-10, "volume growth error " + fmt("%.3g", worst));
    int mismatches = 0;
    for (int run = 0; run < 100; ++run) {
        const int dim = 1 + run % 3;
        const Integrand f = quadratic_integrand(random_spd(dim, rng) * (run % 2 ? -1.0 : 1.0), random_vec(dim, rng), rng.normal());
        const Eigen::VectorXd p = random_vec(dim, rng);
        std::vector<double> x0;
        const Box b = random_box(dim, rng, x0);
        const QcOptions o = qc_opts(30, 1000 + static_cast<std::uint64_t>(run));
        const QcReport e = euclidean_qc_test(f, x0, p, b, o);
        const QcReport r = riemannian_qc_test(f, x0, p, b, MetricField::euclidean(dim), o);
        bool same = r.records.size() == e.records.size() && r.worst_gap == e.worst_gap &&
                    r.sharpened_gap == e.sharpened_gap && r.certified_gap == e.certified_gap &&
                    r.violation_found == e.violation_found;
        for (std::size_t i = 0; same && i < r.records.size(); ++i) same = r.records[i].gap == e.records[i].gap;
        if (!same) ++mismatches;
    }
    t.check(mismatches == 0, std::to_string(mismatches) + " paired runs differ");
    return t.verdict("20 boxes, max relative volume error " + fmt("%.2g", worst) + "; 100 paired runs bitwise equal");
}

// 5. Falsifier soundness on convex integrands and sensitivity on non-convex ones.
Verdict qc_falsifier() {
    Tally t;
    CounterRng rng(5, 0);
    const std::vector<double> x0{0.5, 0.5};
    const Box unit{{0, 0}, {1, 1}};
    int convex_violations = 0;
    for (int inst = 0; inst < 2; ++inst) {
        const Integrand f = quadratic_integrand(random_spd(2, rng), random_vec(2, rng), 0.0);
        const QcReport r = euclidean_qc_test(f, x0, random_vec(2, rng), unit, qc_opts(5000, 50 + static_cast<std::uint64_t>(inst)));
        convex_violations += r.violation_found ? 1 : 0;
    }
    t.check(convex_violations == 0, "convex quadratic flagged");
    const Integrand neg = metric_quadratic_integrand(MetricField::euclidean(2), -1.0);
    const QcReport n = euclidean_qc_test(neg, x0, Eigen::VectorXd::Zero(2), unit, qc_opts(1000, 52));
    t.check(n.violation_found && n.certified && n.certified_gap < -1e-7, "negated quadratic not certified");
    const QcReport w = euclidean_qc_test(double_well_integrand(2), x0, Eigen::VectorXd::Zero(2), unit, qc_opts(1000, 53));
    t.check(w.violation_found && w.certified && w.certified_gap < -1e-7, "double well not certified");
    return t.verdict("10^4 convex trials without violation; certified gaps " + fmt("%.3g", n.certified_gap) + " (negated), " +
                     fmt("%.3g", w.certified_gap) + " (double well) within 10^3 trials");
}

// 6. Affine change of variables scales every gap by sqrt(det g(x0)).
Verdict change_of_variables() {
    Tally t;
    const Box unit{{0, 0}, {1, 1}};
    double worst = 0;
    int disagreements = 0;
    for (int inst = 0; inst < 100; ++inst) {
        CounterRng rng(6, static_cast<std::uint64_t>(inst));
        Eigen::MatrixXd a(2, 2);
        a << rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2);
        const Eigen::VectorXd shift = random_vec(2, rng);
        const Diffeomorphism phi = Diffeomorphism::affine(a, shift);
        std::vector<Polynomial> diag;
        for (int c = 0; c < 2; ++c) {
            const Polynomial s = Polynomial::constant(2, 1) +
                                 Polynomial::variable(2, c) * rational_from_double(std::round(rng.uniform(0, 1) * 8) / 8);
            diag.push_back(s * s);
        }
        const MetricField g = MetricField::diagonal(diag);
        const Integrand f = quadratic_integrand(random_spd(2, rng) * (inst % 2 ? -1.0 : 1.0), random_vec(2, rng), 0.0);
        const Parallelepiped d = Parallelepiped::from_box(unit);
        const std::vector<double> x0{rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
        const Eigen::VectorXd p = random_vec(2, rng);
        const Parallelepiped dh = affine_preimage(phi, d);
        const Eigen::VectorXd xh = a.fullPivLu().solve(Eigen::VectorXd::Map(x0.data(), 2) - shift);
        const std::vector<double> xh0{xh(0), xh(1)};
        const Eigen::VectorXd ph = phi.pullback_covector(xh0, p);
        const QcOptions o = qc_opts(40, 600 + static_cast<std::uint64_t>(inst));
        const QcReport r = riemannian_qc_test(f, x0, p, d, g, o);
        const QcReport e = euclidean_qc_test(change_of_variables_reduction(f, phi, g), xh0, ph, dh, o);
        const double s0 = g.sqrt_det(x0);
        for (std::size_t i = 0; i < r.records.size() && i < e.records.size(); ++i) {
            const double expect = s0 * r.records[i].gap;
            worst = std::max(worst, std::abs(e.records[i].gap - expect) / std::max(std::abs(expect), 1e-300));
        }
        if (r.violation_found != e.violation_found || r.records.size() != e.records.size()) ++disagreements;
    }
    t.check(worst <= 1e-6, "gap ratio error " + fmt("%.3g", worst));
    t.check(disagreements == 0, std::to_string(disagreements) + " decisions differ");
    return t.verdict("100 instances, max relative ratio error " + fmt("%.2g", worst) + ", decisions agree in " +
                     std::to_string(100 - disagreements) + "/100");
}

// 7. Minimizer against the linear-solve oracle, and the curved refinement study.
Verdict minimizer() {
    Tally t;
    const Box unit{{0, 0}, {1, 1}};
    Discretization disc;
    disc.resolution = 33;
    const GaugedProblem p = relax(BundleChart(1, 1, MetricField::euclidean(2), unit), StarDomain::centered(unit),
                                  quadratic_cost(1), Form::scalar(parse_polynomial("x1^2*x2 - x2^3/3 + x1*x2^2 + x1", 2)),
                                  2.0, disc);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult s = minimize(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double oracle = fibreforms::testing::quadratic_oracle(p, 33, p.disc.quadrature_order);
    const double rel = std::abs(s.report.objective - oracle) / oracle;
    t.check(rel <= 1e-6, "oracle mismatch " + fmt("%.3g", rel));
    bool descent = true;
    for (std::size_t i = 1; i < s.report.history.size(); ++i) descent = descent && s.report.history[i] <= s.report.history[i - 1];
    t.check(descent, "objective increased at an accepted step");
    t.check(secs <= 60.0, "solve took " + fmt("%.1f s", secs));

    const ProblemConfig cfg = load_problem((kData / "curved_quadratic.json").string());
    const RefinementStudy st = refinement_study(cfg.problem(), {17, 33, 65}, cfg.solver.options);
    double worst_step = 0;
    for (std::size_t i = 1; i < st.rows.size(); ++i)
        worst_step = std::max(worst_step, std::abs(st.rows[i].objective - st.rows[i - 1].objective) / std::abs(st.rows[i - 1].objective));
    t.check(st.rows.size() == 3 && worst_step <= 0.02, "curved refinement step " + fmt("%.3g", worst_step));
    return t.verdict("33^2 relative error " + fmt("%.2g", rel) + " in " + fmt("%.1f s", secs) +
                     "; curved 17/33/65 max successive change " + fmt("%.2g", worst_step));
}

// 8. Objective of decomposed tuples equals the gauged objective of the potential.
Verdict relaxation_equivalence() {
    Tally t;
    CounterRng rng(8, 0);
    double worst_flat = 0, worst_curved = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(1, 2), k = rng.uniform_int(1, 2), dim = n + k;
        const int ell = rng.uniform_int(1, 2);
        const bool curved = trial % 2 == 1;
        std::vector<Polynomial> diag;
        for (int a = 0; a < dim; ++a)
            diag.push_back(curved && a == 1 ? parse_polynomial("(1+x1)^2", dim) : Polynomial::constant(dim, 1));
        const BundleChart chart(n, k, MetricField::diagonal(diag), Box::unit(dim));
        const CostFunction cost = trial % 3 == 0 ? comass_power_cost(ell, 2.0) : quadratic_cost(ell);
        const Form xi0 = random_form(dim, ell - 1, rng);
        const GaugedProblem p = relax(chart, StarDomain::centered(Box::unit(dim)), cost, Form(dim, ell - 1), 2.0);
        const double a = tuple_objective(p, shadow_decompose(xi0, n, k));
        const double b = gauged_objective(p, xi0);
        const double err = std::abs(a - b) / (1 + std::abs(b));
        (curved ? worst_curved : worst_flat) = std::max(curved ? worst_curved : worst_flat, err);
        t.check(err <= (curved ? p.disc.tolerance : 1e-8), "trial " + std::to_string(trial) + " differs by " + fmt("%.3g", err));
    }
    return t.verdict("50 potentials, max difference " + fmt("%.2g", worst_flat) + " flat, " + fmt("%.2g", worst_curved) +
                     " curved");
}

// 9. Coercivity: |t|^s meets the (0,1,0,1) envelope, |t|^(s/2) falls below it.
Verdict coercivity() {
    Tally t;
    const int dim = 3;
    const MetricField g = MetricField::euclidean(dim);
    CounterRng rng(9, 0);
    for (const double s : {2.5, 3.0, 4.0}) {
        const Eigen::VectorXd dir = random_vec(dim, rng).normalized();
        std::vector<CoercivitySample> samples;
        for (int i = 0; i < 10; ++i) {
            ShadowValue v{FormValue(dim, 1), {}};
            for (int a = 0; a < dim; ++a) v.f.c[static_cast<std::size_t>(a)] = std::ldexp(dir(a), i);
            samples.push_back({v, {0.5, 0.5, 0.5}});
        }
        const std::string tag = " (s = " + fmt("%g", s) + ")";
        CostFunction power = comass_power_cost(1, s);
        power.growth = CostGrowth{0.0, 0.0, 1.0, 1.0, s};
        t.check(coercivity_check(power, samples, g, s).holds, "power cost rejected" + tag);
        CostFunction half = comass_power_cost(1, s / 2);
        half.growth = CostGrowth{0.0, 0.0, 1.0, 1.0, s};
        const CoercivityReport declared = coercivity_check(half, samples, g, s);
        half.growth.reset();
        const CoercivityReport fitted = coercivity_check(half, samples, g, s);
        // flagged exactly where the cost drops below the lower envelope |t|^s
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
        std::vector<std::size_t> below_envelope;
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (half(samples[i].tuple, id) < std::pow(tuple_norm(samples[i].tuple, id), s)) below_envelope.push_back(i);
        const bool below = !below_envelope.empty() && below_envelope == declared.violations;
        t.check(!declared.holds && below, "half power passes the declared envelope" + tag);
        t.check(!fitted.holds, "half power passes the fitted envelope" + tag);
    }
    return t.verdict("s in {2.5, 3, 4}, 10 geometric samples each");
}

// 10. Manifest reruns reproduce every output with 1 and 8 threads.
struct Scratch {
    fs::path dir;
    Scratch() : dir(fs::temp_directory_path() / ("fibreforms_acceptance_" + std::to_string(::getpid()))) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

int invoke(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"fibreforms"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_tree(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> na, nb;
    for (const auto& e : fs::directory_iterator(a)) na.push_back(e.path().filename());
    for (const auto& e : fs::directory_iterator(b)) nb.push_back(e.path().filename());
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return false;
    for (const auto& n : na)
        if (slurp(a / n) != slurp(b / n)) return false;
    return true;
}

Verdict cli_reproducibility() {
    Tally t;
    Scratch s;
    const int saved_threads = thread_count();
    const auto data = [](const char* f) { return (kData / f).string(); };
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
        {"decompose", {"decompose", "--config", data("maxwell_lorenz.json")}},
        {"relax", {"relax", "--config", data("maxwell_lorenz.json")}},
        {"comass", {"comass", "--config", data("maxwell_lorenz.json")}},
        {"qc-convex", {"qc-test", "--config", data("quadratic_n1k1.json"), "--trials", "200"}},
        {"qc-negated", {"qc-test", "--config", data("negated_quadratic.json")}},
        {"minimize", {"minimize", "--config", data("quadratic_n1k1.json"), "--resolution", "17"}},
        {"minimize-refine", {"minimize", "--config", data("double_well.json")}},
    };
    int reruns = 0;
    for (const auto& [name, args] : runs) {
        std::vector<fs::path> dirs;
        for (const char* threads : {"1", "8"}) {
            const fs::path d = s.dir / (name + "_t" + threads);
            std::vector<std::string> a = {"--threads", threads, "--out", d.string()};
            a.insert(a.end(), args.begin(), args.end());
            const int code = invoke(a);
            t.check(code == 0 || code == 3, name + " exited " + std::to_string(code));
            dirs.push_back(d);
        }
        t.check(fs::exists(dirs[0] / "manifest.json") && same_tree(dirs[0], dirs[1]), name + " depends on the thread count");
        for (std::size_t i = 0; i < dirs.size(); ++i)
            for (const char* threads : {"1", "8"}) {
                const fs::path r = s.dir / (name + "_rerun" + std::to_string(i) + "_t" + threads);
                const int code = invoke({"--threads", threads, "--out", r.string(), "rerun", (dirs[i] / "manifest.json").string()});
                t.check(code == 0 && same_tree(dirs[i], r), name + " rerun with " + threads + " threads differs");
                ++reruns;
            }
    }
    // also the check-shadow run fed by a decompose output
    const fs::path shadow = s.dir / "decompose_t1" / "shadow.json";
    const fs::path c1 = s.dir / "check_t1", c8 = s.dir / "check_t8", cr = s.dir / "check_rerun";
    t.check(invoke({"--threads", "1", "--out", c1.string(), "check-shadow", "--shadow", shadow.string()}) == 0 &&
                invoke({"--threads", "8", "--out", c8.string(), "check-shadow", "--shadow", shadow.string()}) == 0 &&
                same_tree(c1, c8) &&
                invoke({"--threads", "8", "--out", cr.string(), "rerun", (c1 / "manifest.json").string()}) == 0 &&
                same_tree(c1, cr),
            "check-shadow not reproducible");
    set_thread_count(saved_threads);
    return t.verdict(std::to_string(runs.size() + 1) + " runs at 1 and 8 threads identical; " + std::to_string(reruns + 1) +
                     " manifest reruns byte-identical");
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"exact algebra", exact_algebra},
        {"shadow round trip", shadow_round_trip},
        {"homotopy operator", homotopy},
        {"euclidean reduction", euclidean_reduction},
        {"quasiconvexity falsifier", qc_falsifier},
        {"change of variables", change_of_variables},
        {"minimizer", minimizer},
        {"relaxation equivalence", relaxation_equivalence},
        {"coercivity", coercivity},
        {"cli reproducibility", cli_reproducibility},
    };
    const double limits[] = {60, 120, 60, 0, 300, 0, 0, 0, 0, 0};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limits[i] > 0 && secs > limits[i]) {
            v.pass = false;
            v.detail += "; over the " + fmt("%.0f s", limits[i]) + " budget";
        }
        if (!v.pass) ++failed;
        std::printf("%s %zu %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
