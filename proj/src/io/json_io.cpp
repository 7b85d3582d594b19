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

#include "fibreforms/io/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fibreforms/error.hpp"

namespace fibreforms {

namespace {

void emit(const Json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += std::string(",") + nl;
                first = false;
                out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
                emit(it.value(), indent, depth + 1, out);
            }
            out += nl + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool flat = true;
            for (const auto& v : j)
                if (v.is_structured()) flat = false;
            out += "[";
            if (!flat) out += nl;
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += flat ? ", " : std::string(",") + nl;
                first = false;
                if (!flat) out += pad;
                emit(v, indent, depth + 1, out);
            }
            if (!flat) out += nl + close_pad;
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isnan(v)) out += "\"nan\"";
            else if (std::isinf(v)) out += v > 0 ? "\"inf\"" : "\"-inf\"";
            else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out += buf;
            }
            return;
        }
        default: out += j.dump();
    }
}

// JSON pointer segments, with ~ and / escaped
std::string at(const std::string& where, const std::string& key) {
    std::string k;
    for (char c : key) {
        if (c == '~') k += "~0";
        else if (c == '/') k += "~1";
        else k += c;
    }
    return where + "/" + k;
}
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& member(const Json& obj, const char* key, const std::string& where) {
    require_object(obj, where);
    if (!obj.contains(key)) throw ParseError(at(where, key), "missing required key");
    return obj.at(key);
}

Json polynomial_to_json(const Polynomial& p) {
    Json mons = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json ex = Json::array();
        for (int i = 0; i < p.nvars(); ++i) ex.push_back(static_cast<int>(e[static_cast<std::size_t>(i)]));
        mons.push_back(Json{{"exponents", ex}, {"coefficient", to_string(c)}});
    }
    return Json{{"monomials", mons}};
}

Polynomial polynomial_from_json(const Json& j, int dim, const std::string& where) {
    require_object(j, where);
    if (j.contains("expr")) {
        require_keys(j, where, {"expr"});
        const std::string text = json_string(j, "expr", where);
        try {
            return parse_polynomial(text, dim);
        } catch (const ParseError& e) {
            throw ParseError(at(where, "expr") + ":" + e.where(), e.message());
        }
    }
    require_keys(j, where, {"monomials"});
    const Json& mons = member(j, "monomials", where);
    if (!mons.is_array()) throw ParseError(at(where, "monomials"), "expected an array");
    Polynomial p(dim);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        const std::string w = at(at(where, "monomials"), i);
        require_keys(mons[i], w, {"exponents", "coefficient"});
        const Json& ex = member(mons[i], "exponents", w);
        if (!ex.is_array() || static_cast<int>(ex.size()) != dim) throw ParseError(at(w, "exponents"), "expected one exponent per coordinate");
        Exponents e{};
        for (std::size_t a = 0; a < ex.size(); ++a) {
            if (!ex[a].is_number_integer() || ex[a].get<int>() < 0 || ex[a].get<int>() > 255)
                throw ParseError(at(at(w, "exponents"), a), "exponent must be an integer in [0, 255]");
            e[a] = static_cast<std::uint8_t>(ex[a].get<int>());
        }
        const Json& c = member(mons[i], "coefficient", w);
        Rational q;
        try {
            q = c.is_string() ? parse_rational(c.get<std::string>()) : rational_from_double(json_double(c, at(w, "coefficient")));
        } catch (const ParseError& err) {
            throw ParseError(at(w, "coefficient"), err.message());
        }
        p += Polynomial::monomial(dim, e, q);
    }
    return p;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    emit(j, indent, 0, out);
    out += "\n";
    return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ":byte " + std::to_string(e.byte), e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path.string());
}

void require_object(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
}

void require_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    require_object(obj, where);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError(at(where, it.key()), "unknown key");
    }
}

int json_int(const Json& obj, const char* key, const std::string& where) {
    const Json& v = member(obj, key, where);
    if (!v.is_number_integer()) throw ParseError(at(where, key), "expected an integer");
    return v.get<int>();
}

double json_double(const Json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw ParseError(where, "expected a number");
}

double json_double(const Json& obj, const char* key, const std::string& where) {
    return json_double(member(obj, key, where), at(where, key));
}

std::string json_string(const Json& obj, const char* key, const std::string& where) {
    const Json& v = member(obj, key, where);
    if (!v.is_string()) throw ParseError(at(where, key), "expected a string");
    return v.get<std::string>();
}

std::vector<double> json_doubles(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_double(j[i], at(where, i)));
    return v;
}

Json to_json(const MultiIndex& m) {
    Json a = Json::array();
    for (int i = 0; i < m.valency(); ++i) a.push_back(m[i] + 1);
    return a;
}

MultiIndex multi_index_from_json(const Json& j, int dim, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of 1-based indices");
    std::vector<int> idx;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw ParseError(at(where, i), "expected an integer");
        const int v = j[i].get<int>();
        if (v < 1 || v > dim) throw ParseError(at(where, i), "index out of range 1.." + std::to_string(dim));
        idx.push_back(v - 1);
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] <= idx[i - 1]) throw ParseError(where, "indices must be strictly ascending");
    return MultiIndex::from_sorted(idx);
}

Json to_json(const Box& b) { return Json{{"lo", b.lo}, {"hi", b.hi}}; }

Box box_from_json(const Json& j, const std::string& where) {
    require_keys(j, where, {"lo", "hi"});
    Box b{json_doubles(member(j, "lo", where), at(where, "lo")), json_doubles(member(j, "hi", where), at(where, "hi"))};
    if (b.lo.size() != b.hi.size() || b.lo.empty()) throw ParseError(where, "lo and hi must have the same nonzero length");
    for (std::size_t a = 0; a < b.lo.size(); ++a)
        if (!(b.lo[a] < b.hi[a])) throw ParseError(where, "box needs lo < hi on every axis");
    return b;
}

Json to_json(const Form& f) {
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json coef;
        switch (c.kind()) {
            case FieldKind::kPolynomial: coef = polynomial_to_json(c.polynomial()); break;
            case FieldKind::kSampled: {
                const SampledField& s = c.sampled();
                std::vector<double> spacing;
                for (int a = 0; a < s.grid.dim(); ++a) spacing.push_back(s.grid.spacing(a));
                coef = Json{{"box", to_json(s.grid.box)}, {"shape", s.grid.shape}, {"spacing", spacing}, {"values", s.values}};
                break;
            }
            case FieldKind::kCallable: throw DomainError("callable coefficients cannot be serialized");
        }
        terms.push_back(Json{{"index", to_json(m)}, {"coefficient", coef}});
    }
    return Json{{"chart_dim", f.dim()}, {"degree", f.degree()}, {"kind", to_string(f.kind())}, {"terms", terms}};
}

Form form_from_json(const Json& j, const std::string& where) {
    require_keys(j, where, {"chart_dim", "degree", "kind", "terms"});
    const int dim = json_int(j, "chart_dim", where);
    const int degree = json_int(j, "degree", where);
    if (dim < 1 || dim > kMaxDim) throw ParseError(at(where, "chart_dim"), "chart dimension out of range");
    if (degree < 0 || degree > dim) throw ParseError(at(where, "degree"), "degree must lie in [0, chart_dim]");
    const std::string kind = j.contains("kind") ? json_string(j, "kind", where) : "polynomial";
    if (kind != "polynomial" && kind != "sampled") throw ParseError(at(where, "kind"), "kind must be polynomial or sampled");
    Form f(dim, degree);
    const Json& terms = member(j, "terms", where);
    if (!terms.is_array()) throw ParseError(at(where, "terms"), "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string w = at(at(where, "terms"), i);
        require_keys(terms[i], w, {"index", "coefficient"});
        const MultiIndex m = multi_index_from_json(member(terms[i], "index", w), dim, at(w, "index"));
        if (m.valency() != degree) throw ParseError(at(w, "index"), "index length differs from the degree");
        const Json& c = member(terms[i], "coefficient", w);
        const std::string cw = at(w, "coefficient");
        if (kind == "polynomial") {
            f.add_term(m, polynomial_from_json(c, dim, cw));
        } else {
            require_keys(c, cw, {"box", "shape", "spacing", "values"});
            Grid g{box_from_json(member(c, "box", cw), at(cw, "box")), {}};
            const Json& shape = member(c, "shape", cw);
            if (!shape.is_array() || static_cast<int>(shape.size()) != dim) throw ParseError(at(cw, "shape"), "expected one length per axis");
            for (std::size_t a = 0; a < shape.size(); ++a) {
                if (!shape[a].is_number_integer() || shape[a].get<int>() < 2) throw ParseError(at(at(cw, "shape"), a), "expected an integer >= 2");
                g.shape.push_back(shape[a].get<int>());
            }
            SampledField s{g, json_doubles(member(c, "values", cw), at(cw, "values"))};
            if (s.values.size() != g.size()) throw ParseError(at(cw, "values"), "expected product(shape) values");
            f.add_term(m, s);
        }
    }
    return f;
}

Json to_json(const ShadowData& sd) {
    Json entries = Json::array();
    for (const auto& e : sd.entries)
        entries.push_back(Json{{"source", to_json(e.source)}, {"star", e.star}, {"j", e.j + 1}, {"g", to_json(e.g)}, {"theta", to_json(e.theta)}});
    return Json{{"ell", sd.ell}, {"n", sd.n}, {"k", sd.k}, {"f", to_json(sd.f)}, {"entries", entries},
                {"purely_vertical", sd.purely_vertical}, {"warnings", sd.warnings}};
}

ShadowData shadow_from_json(const Json& j, const std::string& where) {
    require_keys(j, where, {"ell", "n", "k", "f", "entries", "purely_vertical", "warnings"});
    ShadowData sd;
    sd.ell = json_int(j, "ell", where);
    sd.n = json_int(j, "n", where);
    sd.k = json_int(j, "k", where);
    const int dim = sd.n + sd.k;
    sd.f = form_from_json(member(j, "f", where), at(where, "f"));
    if (sd.f.dim() != dim || sd.f.degree() != sd.ell) throw ParseError(at(where, "f"), "f must be an l-form on the n+k chart");
    const Json& entries = member(j, "entries", where);
    if (!entries.is_array()) throw ParseError(at(where, "entries"), "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string w = at(at(where, "entries"), i);
        require_keys(entries[i], w, {"source", "star", "j", "g", "theta"});
        ShadowEntry e;
        e.source = multi_index_from_json(member(entries[i], "source", w), dim, at(w, "source"));
        e.star = json_int(entries[i], "star", w);
        e.j = json_int(entries[i], "j", w) - 1;
        e.g = form_from_json(member(entries[i], "g", w), at(w, "g"));
        e.theta = form_from_json(member(entries[i], "theta", w), at(w, "theta"));
        if (e.g.dim() != dim || e.theta.dim() != dim || e.g.degree() + e.theta.degree() != sd.ell)
            throw ParseError(w, "g and theta must be complementary forms on the chart");
        sd.entries.push_back(std::move(e));
    }
    if (j.contains("purely_vertical")) {
        if (!j["purely_vertical"].is_boolean()) throw ParseError(at(where, "purely_vertical"), "expected a boolean");
        sd.purely_vertical = j["purely_vertical"].get<bool>();
    }
    if (j.contains("warnings")) {
        if (!j["warnings"].is_array()) throw ParseError(at(where, "warnings"), "expected an array");
        for (const auto& w : j["warnings"]) sd.warnings.push_back(w.get<std::string>());
    }
    return sd;
}

Json to_json(const MetricField& g) {
    switch (g.kind()) {
        case MetricField::Kind::kEuclidean: {
            Json j{{"kind", "euclidean"}};
            // a rescaled Euclidean metric keeps its factor in the entries
            if (!(g.entry(0, 0) == Polynomial::constant(g.dim(), 1))) {
                Json e = Json::array();
                for (int i = 0; i < g.dim(); ++i) e.push_back(g.entry(i, i).to_string());
                j = Json{{"kind", "diagonal"}, {"entries", e}};
            }
            return j;
        }
        case MetricField::Kind::kDiagonal: {
            Json e = Json::array();
            for (int i = 0; i < g.dim(); ++i) e.push_back(g.entry(i, i).to_string());
            return Json{{"kind", "diagonal"}, {"entries", e}};
        }
        case MetricField::Kind::kDense: {
            Json rows = Json::array();
            for (int i = 0; i < g.dim(); ++i) {
                Json r = Json::array();
                for (int k = 0; k < g.dim(); ++k) r.push_back(g.entry(i, k).to_string());
                rows.push_back(r);
            }
            return Json{{"kind", "dense"}, {"entries", rows}};
        }
        case MetricField::Kind::kCallable: throw DomainError("callable metrics cannot be serialized");
    }
    return {};
}

MetricField metric_from_json(const Json& j, int dim, const std::string& where) {
    require_keys(j, where, {"kind", "entries"});
    const std::string kind = json_string(j, "kind", where);
    if (kind != "euclidean" && kind != "diagonal" && kind != "dense")
        throw ParseError(at(where, "kind"), "kind must be euclidean, diagonal or dense");
    auto poly = [&](const Json& v, const std::string& w) {
        if (!v.is_string()) throw ParseError(w, "expected a polynomial string");
        try {
            return parse_polynomial(v.get<std::string>(), dim);
        } catch (const ParseError& e) {
            throw ParseError(w + ":" + e.where(), e.message());
        }
    };
    if (kind == "euclidean") {
        if (j.contains("entries")) throw ParseError(at(where, "entries"), "euclidean metrics take no entries");
        return MetricField::euclidean(dim);
    }
    const Json& e = member(j, "entries", where);
    const std::string ew = at(where, "entries");
    if (!e.is_array() || static_cast<int>(e.size()) != dim) throw ParseError(ew, "expected " + std::to_string(dim) + " entries");
    if (kind == "diagonal") {
        std::vector<Polynomial> d;
        for (std::size_t i = 0; i < e.size(); ++i) d.push_back(poly(e[i], at(ew, i)));
        return MetricField::diagonal(std::move(d));
    }
    if (kind == "dense") {
        std::vector<Polynomial> d;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i].is_array() || static_cast<int>(e[i].size()) != dim) throw ParseError(at(ew, i), "expected a row of N entries");
            for (std::size_t k = 0; k < e[i].size(); ++k) d.push_back(poly(e[i][k], at(at(ew, i), k)));
        }
        try {
            return MetricField::dense(dim, std::move(d));
        } catch (const Error& err) {
            throw ParseError(ew, err.what());
        }
    }
    throw ParseError(at(where, "kind"), "kind must be euclidean, diagonal or dense");
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fibreforms
