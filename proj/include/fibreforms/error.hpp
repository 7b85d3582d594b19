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

#include <stdexcept>
#include <string>

namespace fibreforms {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Chart dimensions, degrees, or grids of two operands disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition failed (singular Jacobian, non-SPD metric, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input document. `where` is a JSON pointer or byte offset.
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& what)
        : Error(where + ": " + what), where_(std::move(where)), message_(what) {}
    const std::string& where() const noexcept { return where_; }
    /// The description without the location prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string where_;
    std::string message_;
};

}  // namespace fibreforms
