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

#include "fibreforms/cli/app.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <fstream>
#include <gmp.h>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "fibreforms/parallel.hpp"
#include "fibreforms/version.hpp"

namespace fibreforms::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream o(path, std::ios::binary | std::ios::trunc);
    if (!o) throw Error("cannot write " + path.string());
    o << bytes;
    if (!o.flush()) throw Error("short write to " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path partial_path(const fs::path& p) { return p.string() + ".partial"; }

std::uint64_t effective_seed(const RunSpec& spec) {
    if (spec.overrides.contains("seed")) return spec.overrides["seed"].get<std::uint64_t>();
    if (spec.inputs.contains("config")) {
        const Json& c = spec.inputs["config"];
        if (c.contains("discretization") && c["discretization"].contains("seed") &&
            c["discretization"]["seed"].is_number_unsigned())
            return c["discretization"]["seed"].get<std::uint64_t>();
    }
    return Discretization{}.seed;
}

using Command = int (*)(const RunSpec&, OutputDir&, std::ostream&);

Command find_command(const std::string& name) {
    if (name == "decompose") return cmd_decompose;
    if (name == "check-shadow") return cmd_check_shadow;
    if (name == "relax") return cmd_relax;
    if (name == "qc-test") return cmd_qc;
    if (name == "minimize") return cmd_minimize;
    if (name == "comass") return cmd_comass;
    return nullptr;
}

Json load_input(const std::string& path) { return read_json_file(path); }

int report_dir(const fs::path& dir, std::ostream& out, std::ostream& err) {
    const Json m = read_json_file(dir / "manifest.json");
    if (!m.contains("outputs") || !m.contains("subcommand")) throw ParseError((dir / "manifest.json").string(), "not a run manifest");
    out << "run: " << m["subcommand"].get<std::string>() << " (exit " << m.value("exit_code", -1) << ", seed "
        << m.value("seed", std::uint64_t{0}) << ")\n";
    bool ok = true;
    for (const auto& o : m["outputs"]) {
        const std::string name = o["file"].get<std::string>();
        std::string status;
        if (!fs::exists(dir / name)) status = "missing";
        else status = fnv1a_hex(read_file(dir / name)) == o["fnv1a64"].get<std::string>() ? "ok" : "modified";
        ok = ok && status == "ok";
        out << "  " << name << ": " << status << "\n";
    }
    auto show = [&](const char* file, std::initializer_list<const char*> keys) {
        if (!fs::exists(dir / file)) return;
        const Json r = read_json_file(dir / file);
        for (const char* k : keys)
            if (r.contains(k)) out << "  " << k << " = " << dump_json(r[k], 0);
    };
    show("decompose_report.json", {"entries", "closed", "reconstruction_matches"});
    show("shadow_check.json", {"closed", "passed"});
    show("relax_report.json", {"gauged_objective", "tuple_objective", "equivalent"});
    show("qc_report.json", {"integrand", "mode", "violation_found"});
    show("solve_report.json", {"objective", "termination", "iterations", "resolution"});
    show("comass.json", {"degree"});
    if (!ok) err << "report: outputs do not match the manifest\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int rerun(const fs::path& manifest_path, const fs::path& outdir, std::ostream& out, std::ostream& err) {
    const Json m = read_json_file(manifest_path);
    const std::string where = manifest_path.string();
    require_keys(m, where + "#", {"schema", "schema_version", "tool", "version", "libraries", "subcommand", "seed",
                                  "options", "inputs", "outputs", "exit_code"});
    RunSpec spec;
    spec.subcommand = json_string(m, "subcommand", where + "#");
    if (!find_command(spec.subcommand)) throw ParseError(where + "#/subcommand", "unknown subcommand");
    spec.inputs = m.at("inputs");
    spec.overrides = m.at("options");
    for (auto it = spec.inputs.begin(); it != spec.inputs.end(); ++it) spec.labels[it.key()] = where + "#/inputs/" + it.key();
    const int code = execute(spec, outdir, err);
    if (!fs::exists(outdir / "manifest.json")) return code;
    const Json fresh = read_json_file(outdir / "manifest.json");
    bool same = fresh["exit_code"] == m["exit_code"] && fresh["outputs"].size() == m["outputs"].size();
    for (const auto& o : m["outputs"]) {
        bool match = false;
        for (const auto& f : fresh["outputs"])
            if (f["file"] == o["file"]) match = f["fnv1a64"] == o["fnv1a64"];
        same = same && match;
        out << o["file"].get<std::string>() << ": " << (match ? "identical" : "DIFFERS") << "\n";
    }
    out << (same ? "rerun reproduced every output\n" : "rerun did NOT reproduce the recorded outputs\n");
    return same ? kExitOk : kExitCheckFailed;
}

}  // namespace

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {}

void OutputDir::write(const std::string& name, const std::string& bytes) {
    fs::create_directories(dir_);
    write_file(partial_path(dir_ / name), bytes);
    pending_.push_back({name, bytes.size(), fnv1a_hex(bytes)});
}

Json OutputDir::commit() {
    Json list = Json::array();
    for (const auto& p : pending_) {
        fs::rename(partial_path(dir_ / p.name), dir_ / p.name);
        list.push_back(Json{{"file", p.name}, {"bytes", p.bytes}, {"fnv1a64", p.checksum}});
    }
    pending_.clear();
    return list;
}

Json manifest(const RunSpec& spec, int exit_code, const Json& outputs) {
    char eigen[32];
    std::snprintf(eigen, sizeof eigen, "%d.%d.%d", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
    char json_version[32];
    std::snprintf(json_version, sizeof json_version, "%d.%d.%d", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                  NLOHMANN_JSON_VERSION_PATCH);
    return Json{{"schema", "fibreforms-manifest"},
                {"schema_version", 1},
                {"tool", "fibreforms"},
                {"version", kVersion},
                {"libraries", Json{{"eigen", eigen}, {"gmp", gmp_version}, {"nlohmann_json", json_version}}},
                {"subcommand", spec.subcommand},
                {"seed", effective_seed(spec)},
                {"options", spec.overrides},
                {"inputs", spec.inputs},
                {"outputs", outputs},
                {"exit_code", exit_code}};
}

int execute(const RunSpec& spec, const fs::path& outdir, std::ostream& log) {
    try {
        const Command cmd = find_command(spec.subcommand);
        if (!cmd) throw ParseError("subcommand", "unknown subcommand '" + spec.subcommand + "'");
        OutputDir out(outdir);
        const int code = cmd(spec, out, log);
        const Json outputs = out.commit();
        fs::create_directories(outdir);
        write_file(partial_path(outdir / "manifest.json"), dump_json(manifest(spec, code, outputs)));
        fs::rename(partial_path(outdir / "manifest.json"), outdir / "manifest.json");
        return code;
    } catch (const ParseError& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "unexpected error: " << e.what() << "\n";
        return kExitUnexpected;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fibreforms: differential forms on trivialized fibre bundles"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    std::string config, form, shadow, outdir = "fibreforms-out", target;
    std::uint64_t seed = 0;
    int threads = 0, resolution = 0, trials = 0, order = 0;
    double tolerance = 0;
    CLI::Option* o_config = app.add_option("--config", config, "Problem file (JSON)");
    CLI::Option* o_seed = app.add_option("--seed", seed, "Random seed (overrides discretization.seed)");
    app.add_option("--threads", threads, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    app.add_option("--out", outdir, "Output directory");
    CLI::Option* o_tol = app.add_option("--tolerance", tolerance, "Tolerance override")->check(CLI::PositiveNumber);
    CLI::Option* o_res = app.add_option("--resolution", resolution, "Grid nodes per axis")->check(CLI::PositiveNumber);
    CLI::Option* o_trials = app.add_option("--trials", trials, "Quasiconvexity trials per configuration")->check(CLI::PositiveNumber);
    CLI::Option* o_order = app.add_option("--quadrature-order", order, "Gauss-Legendre points per axis")->check(CLI::PositiveNumber);

    CLI::App* decompose = app.add_subcommand("decompose", "Horizontal-shadow decomposition of d(xi)");
    CLI::Option* o_form = decompose->add_option("--form", form, "Potential xi (serialized Form); defaults to the xi block");
    CLI::App* check = app.add_subcommand("check-shadow", "Closedness (and, with --config, admissibility) of ShadowData");
    CLI::Option* o_shadow = check->add_option("--shadow", shadow, "Serialized ShadowData")->required();
    app.add_subcommand("relax", "Gauged versus ungauged objective and coercivity of the cost");
    app.add_subcommand("qc-test", "Randomized quasiconvexity falsifier");
    app.add_subcommand("minimize", "Direct-method minimization of the gauged problem");
    app.add_subcommand("comass", "Comass of the form block at the configured points");
    CLI::App* report = app.add_subcommand("report", "Summarize and verify a run directory");
    report->add_option("dir", target, "Run directory")->required();
    CLI::App* rerun_cmd = app.add_subcommand("rerun", "Re-execute a manifest and compare outputs");
    rerun_cmd->add_option("manifest", target, "manifest.json of an earlier run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    if (threads > 0) set_thread_count(threads);
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        if (sub == "report") return report_dir(target, out, err);
        if (sub == "rerun") return rerun(target, outdir, out, err);

        RunSpec spec;
        spec.subcommand = sub;
        if (*o_config) {
            spec.inputs["config"] = load_input(config);
            spec.labels["config"] = config;
        }
        if (*o_form) {
            spec.inputs["form"] = load_input(form);
            spec.labels["form"] = form;
        }
        if (*o_shadow) {
            spec.inputs["shadow"] = load_input(shadow);
            spec.labels["shadow"] = shadow;
        }
        if (*o_seed) spec.overrides["seed"] = seed;
        if (*o_tol) spec.overrides["tolerance"] = tolerance;
        if (*o_res) spec.overrides["resolution"] = resolution;
        if (*o_trials) spec.overrides["trials"] = trials;
        if (*o_order) spec.overrides["quadrature_order"] = order;
        return execute(spec, outdir, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return kExitUnexpected;
    }
}

}  // namespace fibreforms::cli
