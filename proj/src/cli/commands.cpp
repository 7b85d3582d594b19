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

#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "fibreforms/bundle/shadow.hpp"
#include "fibreforms/comass.hpp"
#include "fibreforms/error.hpp"
#include "fibreforms/rng.hpp"

namespace fibreforms::cli {

namespace {

Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json mat_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
    return rows;
}

std::vector<std::vector<double>> lattice(const Box& box, int per_axis) {
    const int dim = box.dim();
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(per_axis);
    std::vector<std::vector<double>> pts;
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<double> x(static_cast<std::size_t>(dim));
        std::size_t rem = t;
        for (std::size_t a = static_cast<std::size_t>(dim); a-- > 0;) {
            const double s = static_cast<double>(rem % static_cast<std::size_t>(per_axis)) / (per_axis - 1);
            rem /= static_cast<std::size_t>(per_axis);
            x[a] = box.lo[a] + s * (box.hi[a] - box.lo[a]);
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

Form form_input(const RunSpec& spec, const char* role) {
    try {
        return form_from_json(spec.inputs.at(role), "");
    } catch (const ParseError& e) {
        throw relabel(spec, role, e);
    }
}

/// Exact comparison for polynomial forms, a lattice residual otherwise.
double form_difference(const Form& a, const Form& b, const Box& box) {
    if (a.kind() == FieldKind::kPolynomial && b.kind() == FieldKind::kPolynomial) return a == b ? 0.0 : INFINITY;
    const auto pts = lattice(box, 5);
    return max_abs(a - b, pts);
}

double overall_tolerance(const Context& ctx) {
    return ctx.overrides.contains("tolerance") ? ctx.overrides["tolerance"].get<double>() : ctx.cfg.disc.tolerance;
}

}  // namespace

ParseError relabel(const RunSpec& spec, const std::string& role, const ParseError& e) {
    auto it = spec.labels.find(role);
    const std::string label = it != spec.labels.end() ? it->second : role;
    return ParseError(label + "#" + e.where(), e.message());
}

Context make_context(const RunSpec& spec, bool config_required) {
    Context ctx;
    ctx.overrides = spec.overrides;
    if (!spec.inputs.contains("config")) {
        if (config_required) throw ParseError("--config", "this subcommand needs a problem file");
        return ctx;
    }
    try {
        ctx.cfg = parse_problem(spec.inputs["config"]);
    } catch (const ParseError& e) {
        throw relabel(spec, "config", e);
    }
    ctx.has_config = true;
    const Json& o = spec.overrides;
    if (o.contains("seed")) ctx.cfg.disc.seed = o["seed"].get<std::uint64_t>();
    if (o.contains("tolerance")) ctx.cfg.disc.tolerance = o["tolerance"].get<double>();
    if (o.contains("resolution")) ctx.cfg.disc.resolution = o["resolution"].get<int>();
    if (o.contains("quadrature_order")) ctx.cfg.disc.quadrature_order = o["quadrature_order"].get<int>();
    if (o.contains("trials")) ctx.cfg.qc.options.trials = o["trials"].get<int>();
    return ctx;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_decompose(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, true);
    const BundleChart& chart = ctx.cfg.chart;
    Form xi;
    if (spec.inputs.contains("form")) xi = form_input(spec, "form");
    else if (ctx.cfg.xi) xi = *ctx.cfg.xi;
    else throw relabel(spec, "config", ParseError("/xi", "no potential given: pass --form or add an xi block"));
    if (xi.dim() != chart.dim())
        throw relabel(spec, spec.inputs.contains("form") ? "form" : "config",
                      ParseError(spec.inputs.contains("form") ? "/chart_dim" : "/xi/chart_dim", "form dimension differs from n + k of the chart"));
    const double tol = overall_tolerance(ctx);
    const ShadowData sd = shadow_decompose(xi, chart.n, chart.k);
    const ClosednessReport closed = check_closedness(sd, tol, &chart.box);
    const double recon = form_difference(shadow_reconstruct(sd), exterior_derivative(xi), chart.box);
    const bool recon_ok = recon <= tol;
    const std::uint64_t bound = construction_entry_bound(chart.n, chart.k, sd.ell);

    out.write("shadow.json", dump_json(to_json(sd)));
    Json r;
    r["n"] = chart.n;
    r["k"] = chart.k;
    r["ell"] = sd.ell;
    r["entries"] = sd.entries.size();
    r["entry_bound"] = bound;
    r["within_bound"] = sd.entries.size() <= bound;
    r["purely_vertical"] = sd.purely_vertical;
    r["warnings"] = sd.warnings;
    r["closed"] = closed.closed;
    r["closedness_residual"] = closed.max_residual;
    r["reconstruction_residual"] = recon;
    r["reconstruction_matches"] = recon_ok;
    r["tolerance"] = tol;
    out.write("decompose_report.json", dump_json(r));
    log << "decompose: " << sd.entries.size() << " entries, closed=" << (closed.closed ? "yes" : "no")
        << ", reconstruction " << (recon_ok ? "matches" : "differs") << "\n";
    return closed.closed && recon_ok ? kExitOk : kExitCheckFailed;
}

int cmd_check_shadow(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, false);
    if (!spec.inputs.contains("shadow")) throw ParseError("--shadow", "check-shadow needs a ShadowData file");
    ShadowData sd;
    try {
        sd = shadow_from_json(spec.inputs["shadow"], "");
    } catch (const ParseError& e) {
        throw relabel(spec, "shadow", e);
    }
    const double tol = overall_tolerance(ctx);
    const Box probe = ctx.has_config ? ctx.cfg.chart.box : Box::unit(sd.n + sd.k);
    const ClosednessReport closed = check_closedness(sd, tol, &probe);
    Json r;
    r["n"] = sd.n;
    r["k"] = sd.k;
    r["ell"] = sd.ell;
    r["entries"] = sd.entries.size();
    r["closed"] = closed.closed;
    r["closedness_residual"] = closed.max_residual;
    std::size_t open_thetas = 0;
    for (const auto& e : sd.entries)
        if (!check_closedness(e.theta, tol, &probe).closed) ++open_thetas;
    r["open_thetas"] = open_thetas;
    r["tolerance"] = tol;
    bool ok = closed.closed && open_thetas == 0;
    if (ctx.has_config) {
        const BundleChart& chart = ctx.cfg.chart;
        if (chart.n != sd.n || chart.k != sd.k)
            throw relabel(spec, "shadow", ParseError("/n", "shadow data and problem chart disagree on (n, k)"));
        const Form gauge = ctx.cfg.gauge ? *ctx.cfg.gauge : Form(chart.dim(), sd.ell - 1);
        if (gauge.degree() != sd.ell - 1) throw relabel(spec, "config", ParseError("/gauge/degree", "gauge degree must be l - 1"));
        std::vector<Form> gs, thetas;
        for (const auto& e : sd.entries) gs.push_back(e.g), thetas.push_back(e.theta);
        const AdmissibilityReport a = check_admissible(sd.f, gs, thetas, gauge, ctx.cfg.domain, chart, tol);
        r["admissibility"] = Json{{"admissible", a.admissible},
                                  {"closed", a.closed},
                                  {"closedness_residual", a.closedness_residual},
                                  {"max_normal_pairing", a.max_normal_pairing}};
        ok = ok && a.admissible;
    }
    r["passed"] = ok;
    out.write("shadow_check.json", dump_json(r));
    log << "check-shadow: closed=" << (closed.closed ? "yes" : "no") << ", passed=" << (ok ? "yes" : "no") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_relax(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, true);
    const GaugedProblem p = ctx.cfg.problem();
    const int dim = p.chart.dim();
    const Form xi = ctx.cfg.xi ? *ctx.cfg.xi : p.gauge;
    const double gauged = gauged_objective(p, xi);
    const ShadowData sd = shadow_decompose(xi, p.chart.n, p.chart.k);
    const double ungauged = tuple_objective(p, sd);
    const double tol = std::max(1e-8, overall_tolerance(ctx));
    const bool equivalent = std::abs(gauged - ungauged) <= tol * (1 + std::abs(gauged)) ||
                            (std::isinf(gauged) && gauged == ungauged);

    // growth check on a geometric sequence of scalings of one random covector
    CounterRng rng(p.disc.seed, CounterRng::key(0x72656c6178ULL, 0, 0));
    FormValue w(dim, p.ell());
    for (double& c : w.c) c = rng.normal();
    std::vector<CoercivitySample> samples;
    for (int i = 0; i < 10; ++i) {
        FormValue wi = w;
        for (double& c : wi.c) c *= std::ldexp(1.0, i - 3);
        samples.push_back({project_value(wi, p.chart.n), p.domain.center});
    }
    const CoercivityReport co = coercivity_check(p.cost, samples, p.chart.metric, p.s);
    const PotentialReport pot = potential_from_tuple(p, sd);

    Json r;
    r["cost"] = ctx.cfg.cost_spec;
    r["ell"] = p.ell();
    r["s"] = p.s;
    r["quadrature_order"] = p.disc.quadrature_order;
    r["gauged_objective"] = gauged;
    r["tuple_objective"] = ungauged;
    r["difference"] = gauged - ungauged;
    r["equivalence_tolerance"] = tol;
    r["equivalent"] = equivalent;
    r["entries"] = sd.entries.size();
    r["potential_trace_defect"] = pot.trace_defect;
    Json viol = Json::array();
    for (std::size_t v : co.violations) viol.push_back(v);
    r["coercivity"] = Json{{"holds", co.holds},
                           {"declared", co.declared},
                           {"a1", co.fitted.a1},
                           {"a2", co.fitted.a2},
                           {"b1", co.fitted.b1},
                           {"b2", co.fitted.b2},
                           {"s", co.fitted.s},
                           {"violations", viol}};
    out.write("relax_report.json", dump_json(r));
    out.write("shadow.json", dump_json(to_json(sd)));
    log << "relax: gauged " << format_double(gauged) << ", tuple " << format_double(ungauged)
        << (equivalent ? " (equivalent)" : " (MISMATCH)") << "\n";
    return equivalent ? kExitOk : kExitCheckFailed;
}

namespace {

Integrand build_integrand(const ProblemConfig& cfg) {
    const QcConfig& q = cfg.qc;
    const int dim = cfg.chart.dim();
    const MetricField& g = cfg.chart.metric;
    if (q.integrand == "cost") {
        if (!cfg.cost) throw ParseError("/qc/integrand", "the cost integrand needs a cost block");
        if (cfg.ell != 1) throw ParseError("/qc/integrand", "the cost integrand needs a cost on 1-forms");
        return cost_integrand(gauged_cost(*cfg.cost, cfg.chart.n), g);
    }
    if (q.integrand == "metric_quadratic") return metric_quadratic_integrand(g, 1.0);
    if (q.integrand == "negated_metric_quadratic") return metric_quadratic_integrand(g, -1.0);
    if (q.integrand == "norm") return norm_integrand(dim);
    if (q.integrand == "double_well") return double_well_integrand(dim);
    return quadratic_integrand(*q.matrix, Eigen::VectorXd::Zero(dim), 0.0);
}

Json subdomain_json(const Parallelepiped& d) { return Json{{"origin", vec_json(d.origin)}, {"edges", mat_json(d.edges)}}; }

Json witness_json(const QcSweepRecord& rec) {
    const Parallelepiped& d = rec.subdomain;
    const int dim = d.dim();
    Json fields = Json::array();
    for (const TestField& z : rec.report.witness) {
        Json f{{"description", z.describe()}, {"params", z.params()}};
        if (z.cells() > 0) f["cells"] = z.cells(), f["flips"] = z.flips();
        fields.push_back(f);
    }
    // the witness sampled on the bounding box of the subdomain
    Box box{std::vector<double>(static_cast<std::size_t>(dim)), std::vector<double>(static_cast<std::size_t>(dim))};
    for (int a = 0; a < dim; ++a) {
        double lo = d.origin(a), hi = d.origin(a);
        for (int e = 0; e < dim; ++e) (d.edges(a, e) < 0 ? lo : hi) += d.edges(a, e);
        box.lo[static_cast<std::size_t>(a)] = lo;
        box.hi[static_cast<std::size_t>(a)] = hi;
    }
    const int m = dim <= 2 ? 33 : dim == 3 ? 17 : 9;
    const Grid grid{box, std::vector<int>(static_cast<std::size_t>(dim), m)};
    const Eigen::MatrixXd inv = d.edges.inverse();
    Json sampled = Json::array();
    for (const TestField& z : rec.report.witness) {
        SampledField s{grid, std::vector<double>(grid.size())};
        std::vector<double> x(static_cast<std::size_t>(dim)), u(static_cast<std::size_t>(dim));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid.node(i, x);
            Eigen::VectorXd rel(dim);
            for (int a = 0; a < dim; ++a) rel(a) = x[static_cast<std::size_t>(a)] - d.origin(a);
            const Eigen::VectorXd ue = inv * rel;
            bool inside = true;
            for (int a = 0; a < dim; ++a) {
                u[static_cast<std::size_t>(a)] = ue(a);
                inside = inside && ue(a) >= 0.0 && ue(a) <= 1.0;
            }
            s.values[i] = inside ? z.value(u) : 0.0;
        }
        sampled.push_back(to_json(Form::scalar(s)));
    }
    return Json{{"config", rec.config},
                {"seed", rec.seed},
                {"x0", vec_json(rec.x0)},
                {"p", vec_json(rec.p)},
                {"subdomain", subdomain_json(d)},
                {"certified_gap", rec.report.certified_gap},
                {"lipschitz", rec.report.witness_lipschitz},
                {"fields", fields},
                {"sampled", sampled}};
}

}  // namespace

int cmd_qc(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, true);
    const ProblemConfig& cfg = ctx.cfg;
    Integrand f;
    try {
        f = build_integrand(cfg);
    } catch (const ParseError& e) {
        throw relabel(spec, "config", e);
    }
    const int dim = cfg.chart.dim();
    QcOptions opt = cfg.qc.options;
    opt.seed = cfg.disc.seed;
    opt.keep_records = true;
    if (ctx.overrides.contains("quadrature_order")) opt.order = ctx.overrides["quadrature_order"].get<int>();
    if (ctx.overrides.contains("tolerance")) opt.tolerance = ctx.overrides["tolerance"].get<double>();
    const Box p_box = cfg.qc.p_box ? *cfg.qc.p_box
                                   : Box{std::vector<double>(static_cast<std::size_t>(dim), -1.0),
                                         std::vector<double>(static_cast<std::size_t>(dim), 1.0)};
    const bool euclidean = cfg.qc.mode == "euclidean";
    const std::vector<QcSweepRecord> recs = qc_sweep(f, cfg.domain.box, p_box, cfg.chart.metric, cfg.qc.configs, opt, euclidean);

    bool violation = false;
    Json configs = Json::array();
    std::ostringstream csv;
    csv << "config,trial,family,gap,aborted\n";
    const QcSweepRecord* witness = nullptr;
    for (const auto& rec : recs) {
        const QcReport& r = rec.report;
        violation = violation || r.violation_found;
        if (r.violation_found && !witness) witness = &rec;
        Json c{{"config", rec.config},
               {"seed", rec.seed},
               {"x0", vec_json(rec.x0)},
               {"p", vec_json(rec.p)},
               {"subdomain", subdomain_json(rec.subdomain)},
               {"f0", r.f0},
               {"tolerance", r.tolerance},
               {"worst_gap", r.worst_gap},
               {"sharpened_gap", r.sharpened_gap},
               {"certified_gap", r.certified_gap},
               {"violation_found", r.violation_found},
               {"certified", r.certified},
               {"aborted_trials", r.aborted_trials}};
        c["witness_trial"] = r.witness_trial ? Json(*r.witness_trial) : Json(nullptr);
        configs.push_back(c);
        for (const auto& t : r.records)
            csv << rec.config << ',' << t.index << ',' << to_string(t.family) << ',' << format_double(t.gap) << ','
                << (t.aborted ? 1 : 0) << '\n';
    }
    Json families = Json::array();
    for (FieldFamily fam : opt.families) families.push_back(to_string(fam));
    Json report{{"integrand", f.name},
                {"mode", cfg.qc.mode},
                {"trials", opt.trials},
                {"order", opt.order},
                {"families", families},
                {"seed", opt.seed},
                {"violation_found", violation},
                {"configs", configs}};
    out.write("qc_report.json", dump_json(report));
    out.write("qc_gaps.csv", csv.str());
    if (witness) out.write("witness.json", dump_json(witness_json(*witness)));
    log << "qc-test: " << recs.size() << " configurations, "
        << (violation ? "violation found (witness.json)" : "no violation found") << "\n";
    return violation ? kExitCheckFailed : kExitOk;
}

int cmd_minimize(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, true);
    const GaugedProblem p = ctx.cfg.problem();
    SolveOptions opt = ctx.cfg.solver.options;
    opt.seed = p.disc.seed;
    if (ctx.overrides.contains("tolerance")) opt.gtol = ctx.overrides["tolerance"].get<double>();
    const SolveResult res = minimize(p, std::nullopt, opt);
    const SolveReport& r = res.report;

    Json comps = Json::array();
    for (const auto& c : res.field.components()) comps.push_back(to_json(c));
    out.write("solution.json", dump_json(Json{{"resolution", res.field.resolution()}, {"components", comps},
                                              {"form", to_json(res.field.to_form())}}));
    std::ostringstream hist;
    hist << "step,objective\n";
    for (std::size_t i = 0; i < r.history.size(); ++i) hist << i << ',' << format_double(r.history[i]) << '\n';
    out.write("history.csv", hist.str());

    Json report{{"objective", r.objective},
                {"grad_norm", r.grad_norm},
                {"termination", to_string(r.termination)},
                {"iterations", r.iterations},
                {"evaluations", r.evaluations},
                {"resolution", r.resolution},
                {"quadrature_order", r.quadrature_order},
                {"dofs", r.dofs},
                {"gradient", to_string(r.mode)},
                {"cost", ctx.cfg.cost_spec}};
    if (!ctx.cfg.solver.refinement.empty()) {
        const RefinementStudy st = refinement_study(p, ctx.cfg.solver.refinement, opt);
        std::ostringstream csv;
        csv << "resolution,h,objective,iterations,termination\n";
        Json rows = Json::array();
        for (const auto& row : st.rows) {
            csv << row.resolution << ',' << format_double(row.h) << ',' << format_double(row.objective) << ','
                << row.iterations << ',' << to_string(row.termination) << '\n';
            rows.push_back(Json{{"resolution", row.resolution}, {"h", row.h}, {"objective", row.objective},
                                {"iterations", row.iterations}, {"termination", to_string(row.termination)}});
        }
        report["refinement"] = Json{{"rows", rows}, {"nonincreasing", st.nonincreasing},
                                    {"relaxation_gap_suspected", st.relaxation_gap_suspected}};
        out.write("refinement.csv", csv.str());
    }
    out.write("solve_report.json", dump_json(report));
    log << "minimize: objective " << format_double(r.objective) << " after " << r.iterations << " iterations ("
        << to_string(r.termination) << ")\n";
    return r.termination == Termination::kLineSearchFailure ? kExitStall : kExitOk;
}

int cmd_comass(const RunSpec& spec, OutputDir& out, std::ostream& log) {
    const Context ctx = make_context(spec, true);
    const ProblemConfig& cfg = ctx.cfg;
    if (!cfg.form) throw relabel(spec, "config", ParseError("/form", "comass needs a form block"));
    std::vector<std::vector<double>> points = cfg.comass.points;
    if (points.empty()) points.push_back(cfg.domain.center);
    ComassOptions opt = cfg.comass.options;
    opt.seed = mix64(cfg.disc.seed ^ opt.seed);
    std::ostringstream csv;
    csv << "point";
    for (int a = 0; a < cfg.chart.dim(); ++a) csv << ",x" << a + 1;
    csv << ",comass\n";
    Json rows = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const ComassResult r = comass(*cfg.form, cfg.chart.metric, points[i], opt);
        csv << i;
        for (double v : points[i]) csv << ',' << format_double(v);
        csv << ',' << format_double(r.value) << '\n';
        Json maxim = Json::array();
        for (const auto& v : r.maximizer) maxim.push_back(vec_json(v));
        rows.push_back(Json{{"point", points[i]}, {"comass", r.value}, {"maximizer", maxim}});
    }
    out.write("comass.csv", csv.str());
    out.write("comass.json", dump_json(Json{{"degree", cfg.form->degree()}, {"points", rows}}));
    log << "comass: " << points.size() << " points\n";
    return kExitOk;
}

}  // namespace fibreforms::cli
