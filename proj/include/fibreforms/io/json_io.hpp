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
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "fibreforms/bundle/shadow.hpp"
#include "fibreforms/form.hpp"
#include "fibreforms/grid.hpp"
#include "fibreforms/metric.hpp"

namespace fibreforms {

using Json = nlohmann::ordered_json;

/// Stable text rendering: keys in insertion order, every double printed
/// with 17 significant digits, non-finite doubles as the strings "inf",
/// "-inf", "nan".
std::string dump_json(const Json& j, int indent = 2);

/// Parses a document; syntax errors become ParseError("<source>:byte N").
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);

/// Locations are JSON pointers ("" is the document root).
/// Throws ParseError(where/key) for any key of `obj` not in `allowed`.
void require_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed);
void require_object(const Json& j, const std::string& where);

// Field access with location-bearing errors.
int json_int(const Json& obj, const char* key, const std::string& where);
double json_double(const Json& j, const std::string& where);
double json_double(const Json& obj, const char* key, const std::string& where);
std::string json_string(const Json& obj, const char* key, const std::string& where);
std::vector<double> json_doubles(const Json& j, const std::string& where);

/// Multi-indices are written 1-based (dx^1 is the first coordinate).
Json to_json(const MultiIndex& m);
MultiIndex multi_index_from_json(const Json& j, int dim, const std::string& where);

Json to_json(const Box& b);
Box box_from_json(const Json& j, const std::string& where);

/// Polynomial coefficients as monomial lists with rational strings;
/// sampled coefficients as row-major arrays with box, shape and spacing.
/// Callable coefficients cannot be serialized.
Json to_json(const Form& f);
/// Accepts the serialized layout, and also {"expr": "x1*x2"} as a
/// polynomial coefficient.
Form form_from_json(const Json& j, const std::string& where);

Json to_json(const ShadowData& sd);
ShadowData shadow_from_json(const Json& j, const std::string& where);

/// {"kind": "euclidean"} | {"kind": "diagonal", "entries": [...]} |
/// {"kind": "dense", "entries": [[...], ...]}; entries are polynomial strings.
Json to_json(const MetricField& g);
MetricField metric_from_json(const Json& j, int dim, const std::string& where);

/// 64-bit FNV-1a of a byte string, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fibreforms
