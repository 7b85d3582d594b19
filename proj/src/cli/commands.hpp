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

#include <ostream>

#include "fibreforms/cli/app.hpp"
#include "fibreforms/error.hpp"
#include "fibreforms/io/config.hpp"

namespace fibreforms::cli {

/// Parsed problem with command-line overrides applied.
struct Context {
    ProblemConfig cfg;
    bool has_config = false;
    Json overrides = Json::object();
};

Context make_context(const RunSpec& spec, bool config_required);
/// Prefixes a parse location with the origin of the input document.
ParseError relabel(const RunSpec& spec, const std::string& role, const ParseError& e);

int cmd_decompose(const RunSpec& spec, OutputDir& out, std::ostream& log);
int cmd_check_shadow(const RunSpec& spec, OutputDir& out, std::ostream& log);
int cmd_relax(const RunSpec& spec, OutputDir& out, std::ostream& log);
int cmd_qc(const RunSpec& spec, OutputDir& out, std::ostream& log);
int cmd_minimize(const RunSpec& spec, OutputDir& out, std::ostream& log);
int cmd_comass(const RunSpec& spec, OutputDir& out, std::ostream& log);

}  // namespace fibreforms::cli
