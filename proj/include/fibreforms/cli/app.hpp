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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibreforms/io/json_io.hpp"

namespace fibreforms::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUnexpected = 1,
    kExitConfig = 2,
    /// QC violation, failed closedness or admissibility, failed reproduction.
    kExitCheckFailed = 3,
    kExitStall = 4,
};

/// Files of one run. Each is written as `<name>.partial` and renamed
/// only when the run commits.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path dir);

    void write(const std::string& name, const std::string& bytes);
    /// Renames every pending file; returns [{file, bytes, fnv1a64}] in write order.
    Json commit();
    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    struct Pending {
        std::string name;
        std::size_t bytes = 0;
        std::string checksum;
    };
    std::filesystem::path dir_;
    std::vector<Pending> pending_;
};

/// Everything that determines a run's outputs. Thread count, wall time and
/// the output directory are deliberately absent.
struct RunSpec {
    std::string subcommand;
    /// Input documents by role: "config", "form", "shadow".
    Json inputs = Json::object();
    /// Command-line overrides: seed, tolerance, resolution, trials, quadrature_order.
    Json overrides = Json::object();
    /// Human-readable origin of each input, used in error locations only.
    std::map<std::string, std::string> labels;
};

/// Runs one subcommand into `out` and writes manifest.json last.
/// Errors are reported on `log` and mapped to exit codes.
int execute(const RunSpec& spec, const std::filesystem::path& out, std::ostream& log);

/// The manifest document of a committed run.
Json manifest(const RunSpec& spec, int exit_code, const Json& outputs);

/// Command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Formats a double for CSV and text with 17 significant digits.
std::string format_double(double v);

}  // namespace fibreforms::cli
