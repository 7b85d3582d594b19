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

#include "fibreforms/io/config.hpp"

#include <sstream>

#include "fibreforms/error.hpp"

namespace fibreforms {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const Json* optional_member(const Json& obj, const char* key) { return obj.contains(key) ? &obj.at(key) : nullptr; }

const Json& required_member(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(at(where, key), "missing required key");
    return obj.at(key);
}

std::vector<int> int_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of integers");
    std::vector<int> v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw ParseError(where + "/" + std::to_string(i), "expected an integer");
        v.push_back(j[i].get<int>());
    }
    return v;
}

int positive_int(const Json& obj, const char* key, const std::string& where, int min_value = 1) {
    const int v = json_int(obj, key, where);
    if (v < min_value) throw ParseError(at(where, key), "must be at least " + std::to_string(min_value));
    return v;
}

std::uint64_t seed_value(const Json& obj, const char* key, const std::string& where) {
    const Json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ParseError(at(where, key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

void parse_chart(const Json& j, ProblemConfig& cfg) {
    const std::string w = "/chart";
    require_keys(j, w, {"n", "k", "box", "metric"});
    const int n = positive_int(j, "n", w);
    const int k = positive_int(j, "k", w, 0);
    if (n + k > kMaxDim) throw ParseError(w, "n + k exceeds the supported chart dimension " + std::to_string(kMaxDim));
    const int dim = n + k;
    Box box = j.contains("box") ? box_from_json(j["box"], at(w, "box")) : Box::unit(dim);
    if (box.dim() != dim) throw ParseError(at(w, "box"), "box dimension differs from n + k");
    MetricField g = j.contains("metric") ? metric_from_json(j["metric"], dim, at(w, "metric")) : MetricField::euclidean(dim);
    cfg.chart = BundleChart(n, k, std::move(g), std::move(box));
}

void parse_domain(const Json* j, ProblemConfig& cfg) {
    if (!j) {
        cfg.domain = StarDomain::centered(cfg.chart.box);
        return;
    }
    const std::string w = "/domain";
    require_keys(*j, w, {"box", "center"});
    Box box = j->contains("box") ? box_from_json((*j)["box"], at(w, "box")) : cfg.chart.box;
    if (box.dim() != cfg.chart.dim()) throw ParseError(at(w, "box"), "box dimension differs from n + k");
    if (!j->contains("center")) {
        cfg.domain = StarDomain::centered(box);
        return;
    }
    std::vector<double> c = json_doubles((*j)["center"], at(w, "center"));
    if (static_cast<int>(c.size()) != cfg.chart.dim() || !box.contains(c))
        throw ParseError(at(w, "center"), "center must be a point of the domain box");
    cfg.domain = StarDomain(std::move(box), std::move(c));
}

Form form_with_dim(const Json& j, const std::string& where, int dim, int degree) {
    Form f = form_from_json(j, where);
    if (f.dim() != dim) throw ParseError(at(where, "chart_dim"), "form lives on a chart of dimension " + std::to_string(f.dim()) + ", expected " + std::to_string(dim));
    if (degree >= 0 && f.degree() != degree)
        throw ParseError(at(where, "degree"), "expected a form of degree " + std::to_string(degree));
    return f;
}

void parse_discretization(const Json& j, Discretization& d) {
    const std::string w = "/discretization";
    require_keys(j, w, {"resolution", "quadrature_order", "tolerance", "seed"});
    if (j.contains("resolution")) d.resolution = positive_int(j, "resolution", w, 2);
    if (j.contains("quadrature_order")) d.quadrature_order = positive_int(j, "quadrature_order", w);
    if (j.contains("tolerance")) {
        d.tolerance = json_double(j, "tolerance", w);
        if (!(d.tolerance > 0)) throw ParseError(at(w, "tolerance"), "must be positive");
    }
    if (j.contains("seed")) d.seed = seed_value(j, "seed", w);
}

std::vector<FieldFamily> parse_families(const Json& j, const std::string& w) {
    if (!j.is_array() || j.empty()) throw ParseError(w, "expected a non-empty array");
    std::vector<FieldFamily> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string s = j[i].is_string() ? j[i].get<std::string>() : "";
        if (s == "bubble") out.push_back(FieldFamily::kBubble);
        else if (s == "hat") out.push_back(FieldFamily::kHat);
        else throw ParseError(w + "/" + std::to_string(i), "family must be bubble or hat");
    }
    return out;
}

void parse_qc(const Json& j, ProblemConfig& cfg) {
    const std::string w = "/qc";
    require_keys(j, w, {"integrand", "matrix", "mode", "p_box", "configs", "trials", "order", "rel_tol", "families",
                        "descent_steps"});
    QcConfig& q = cfg.qc;
    const int dim = cfg.chart.dim();
    if (j.contains("integrand")) q.integrand = json_string(j, "integrand", w);
    static const char* kIntegrands[] = {"cost", "metric_quadratic", "negated_metric_quadratic", "norm", "double_well",
                                        "quadratic"};
    bool known = false;
    for (const char* s : kIntegrands) known = known || q.integrand == s;
    if (!known) throw ParseError(at(w, "integrand"), "unknown integrand '" + q.integrand + "'");
    if (j.contains("matrix")) {
        const Json& m = j["matrix"];
        const std::string mw = at(w, "matrix");
        if (!m.is_array() || static_cast<int>(m.size()) != dim) throw ParseError(mw, "expected an N x N array");
        Eigen::MatrixXd a(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const std::vector<double> row = json_doubles(m[static_cast<std::size_t>(r)], mw + "/" + std::to_string(r));
            if (static_cast<int>(row.size()) != dim) throw ParseError(mw + "/" + std::to_string(r), "expected N entries");
            for (int c = 0; c < dim; ++c) a(r, c) = row[static_cast<std::size_t>(c)];
        }
        q.matrix = a;
    }
    if (q.integrand == "quadratic" && !q.matrix) throw ParseError(at(w, "matrix"), "the quadratic integrand needs a matrix");
    if (q.integrand != "quadratic" && q.matrix) throw ParseError(at(w, "matrix"), "only the quadratic integrand takes a matrix");
    if (j.contains("mode")) {
        q.mode = json_string(j, "mode", w);
        if (q.mode != "riemannian" && q.mode != "euclidean") throw ParseError(at(w, "mode"), "mode must be riemannian or euclidean");
    }
    if (j.contains("p_box")) {
        q.p_box = box_from_json(j["p_box"], at(w, "p_box"));
        if (q.p_box->dim() != dim) throw ParseError(at(w, "p_box"), "p_box dimension differs from n + k");
    }
    if (j.contains("configs")) q.configs = positive_int(j, "configs", w);
    if (j.contains("trials")) q.options.trials = positive_int(j, "trials", w);
    if (j.contains("order")) q.options.order = positive_int(j, "order", w);
    if (j.contains("rel_tol")) q.options.rel_tol = json_double(j, "rel_tol", w);
    if (j.contains("families")) q.options.families = parse_families(j["families"], at(w, "families"));
    if (j.contains("descent_steps")) q.options.descent_steps = positive_int(j, "descent_steps", w, 0);
}

void parse_solver(const Json& j, ProblemConfig& cfg) {
    const std::string w = "/solver";
    require_keys(j, w, {"max_iterations", "memory", "gtol", "ftol", "max_backtracks", "gradient", "fd_step", "init_noise",
                        "refinement"});
    SolveOptions& o = cfg.solver.options;
    if (j.contains("max_iterations")) o.max_iterations = positive_int(j, "max_iterations", w, 0);
    if (j.contains("memory")) o.memory = positive_int(j, "memory", w);
    if (j.contains("gtol")) o.gtol = json_double(j, "gtol", w);
    if (j.contains("ftol")) o.ftol = json_double(j, "ftol", w);
    if (j.contains("max_backtracks")) o.max_backtracks = positive_int(j, "max_backtracks", w);
    if (j.contains("gradient")) {
        try {
            o.mode = gradient_mode_from_string(json_string(j, "gradient", w));
        } catch (const Error& e) {
            throw ParseError(at(w, "gradient"), e.what());
        }
    }
    if (j.contains("fd_step")) o.fd_step = json_double(j, "fd_step", w);
    if (j.contains("init_noise")) {
        o.init_noise = json_double(j, "init_noise", w);
        if (!(o.init_noise >= 0)) throw ParseError(at(w, "init_noise"), "must be non-negative");
    }
    if (j.contains("refinement")) {
        cfg.solver.refinement = int_list(j["refinement"], at(w, "refinement"));
        for (std::size_t i = 0; i < cfg.solver.refinement.size(); ++i) {
            if (cfg.solver.refinement[i] < 4) throw ParseError(at(w, "refinement") + "/" + std::to_string(i), "resolutions must be at least 4");
            if (i > 0 && cfg.solver.refinement[i] <= cfg.solver.refinement[i - 1])
                throw ParseError(at(w, "refinement"), "resolutions must be strictly ascending");
        }
    }
}

void parse_comass(const Json& j, ProblemConfig& cfg) {
    const std::string w = "/comass";
    require_keys(j, w, {"points", "restarts", "max_sweeps"});
    if (j.contains("points")) {
        const Json& p = j["points"];
        if (!p.is_array()) throw ParseError(at(w, "points"), "expected an array of points");
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::string pw = at(w, "points") + "/" + std::to_string(i);
            std::vector<double> x = json_doubles(p[i], pw);
            if (static_cast<int>(x.size()) != cfg.chart.dim()) throw ParseError(pw, "point dimension differs from n + k");
            cfg.comass.points.push_back(std::move(x));
        }
    }
    if (j.contains("restarts")) cfg.comass.options.restarts = positive_int(j, "restarts", w);
    if (j.contains("max_sweeps")) cfg.comass.options.max_sweeps = positive_int(j, "max_sweeps", w);
}

}  // namespace

CostFunction cost_from_spec(const std::string& spec, int ell, const std::string& where) {
    std::istringstream in(spec);
    std::string head;
    in >> head;
    auto number = [&](const char* what) {
        double v = 0;
        if (!(in >> v)) throw ParseError(where, std::string("expected '") + head + " <" + what + ">'");
        std::string rest;
        if (in >> rest) throw ParseError(where, "trailing text after the cost parameter");
        return v;
    };
    if (head == "quadratic") {
        std::string rest;
        if (in >> rest) throw ParseError(where, "quadratic takes no parameter");
        return quadratic_cost(ell);
    }
    if (head == "comass_power") {
        const double s = number("s");
        if (!(s > 1)) throw ParseError(where, "comass_power exponent must exceed 1");
        return comass_power_cost(ell, s);
    }
    if (head == "constant") return constant_cost(ell, number("a"));
    if (head.rfind("named:", 0) == 0) {
        const std::string id = head.substr(6);
        try {
            return named_cost(id, ell);
        } catch (const Error& e) {
            throw ParseError(where, e.what());
        }
    }
    throw ParseError(where, "unknown cost '" + spec + "'");
}

GaugedProblem ProblemConfig::problem() const {
    if (!cost) throw DomainError("the problem file has no cost block");
    const Form g = gauge ? *gauge : Form(chart.dim(), ell - 1);
    return relax(chart, domain, *cost, g, s, disc);
}

ProblemConfig parse_problem(const Json& doc) {
    require_keys(doc, "", {"schema_version", "chart", "domain", "cost", "s", "gauge", "xi", "form", "discretization",
                           "qc", "solver", "comass"});
    if (!doc.contains("schema_version")) throw ParseError("/schema_version", "missing required key");
    const Json& sv = doc["schema_version"];
    if (!sv.is_number_integer() || sv.get<int>() != kSchemaVersion)
        throw ParseError("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    ProblemConfig cfg;
    cfg.source = doc;
    parse_chart(required_member(doc, "chart", ""), cfg);
    parse_domain(optional_member(doc, "domain"), cfg);
    const int dim = cfg.chart.dim();
    if (const Json* c = optional_member(doc, "cost")) {
        require_keys(*c, "/cost", {"ell", "spec"});
        cfg.ell = positive_int(*c, "ell", "/cost");
        if (cfg.ell > dim) throw ParseError("/cost/ell", "degree exceeds n + k");
        cfg.cost_spec = json_string(*c, "spec", "/cost");
        cfg.cost = cost_from_spec(cfg.cost_spec, cfg.ell, "/cost/spec");
    }
    if (doc.contains("s")) {
        cfg.s = json_double(doc, "s", "");
        if (!(cfg.s > 1)) throw ParseError("/s", "growth exponent must exceed 1");
    }
    if (doc.contains("gauge")) cfg.gauge = form_with_dim(doc["gauge"], "/gauge", dim, cfg.cost ? cfg.ell - 1 : -1);
    if (doc.contains("xi")) cfg.xi = form_with_dim(doc["xi"], "/xi", dim, cfg.cost ? cfg.ell - 1 : -1);
    if (doc.contains("form")) cfg.form = form_with_dim(doc["form"], "/form", dim, -1);
    if (doc.contains("discretization")) parse_discretization(doc["discretization"], cfg.disc);
    if (doc.contains("qc")) parse_qc(doc["qc"], cfg);
    if (doc.contains("solver")) parse_solver(doc["solver"], cfg);
    if (doc.contains("comass")) parse_comass(doc["comass"], cfg);
    return cfg;
}

ProblemConfig load_problem(const std::filesystem::path& path) {
    const Json doc = read_json_file(path);
    try {
        return parse_problem(doc);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + "#" + e.where(), e.message());
    }
}

}  // namespace fibreforms
