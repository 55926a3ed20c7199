/*
 * Copyright 2026 The Trailmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace trailmap {

// Root of every error thrown by the library. Callers that only need to report
// a failure can catch this; callers that recover catch the concrete type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed input text (XML, YAML, transcript files). `line`/`column` are
// 1-based, or 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0, int column = 0)
        : Error(line > 0 ? message + " (line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ")"
                         : message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// A document parsed but violates a structural rule. `path` points at the
// offending field, e.g. "pages[2].effects[0].target".
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Persisted state on disk could not be read back.
class CorruptFileError : public Error {
public:
    using Error::Error;
};

} // namespace trailmap
