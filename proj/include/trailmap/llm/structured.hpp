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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trailmap/core/error.hpp"

namespace trailmap::llm {

using StructuredFields = std::map<std::string, std::string>;

// A response the caller could not use. Carries the raw text.
class ResponseError : public Error {
public:
    ResponseError(const std::string& message, std::string raw)
        : Error(message), raw_(std::move(raw)) {}

    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

// Required tagged fields were absent or empty.
class SchemaError : public ResponseError {
public:
    SchemaError(std::vector<std::string> missing, std::string raw);

    const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
    std::vector<std::string> missing_;
};

// Extracts "FIELD_NAME: value" fields. A tag is an upper-case identifier at
// the start of a line followed by ':'; a value runs until the next tag line,
// so it may span lines. Values are trimmed, repeated tags are joined with
// '\n', and fields outside `required` and `optional` are dropped. Throws
// SchemaError listing every required field that is missing or empty.
StructuredFields parse_structured(std::string_view response, const std::vector<std::string>& required,
                                  const std::vector<std::string>& optional = {});

} // namespace trailmap::llm
