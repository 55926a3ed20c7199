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

#include "trailmap/llm/structured.hpp"

#include <algorithm>
#include <cctype>

#include "trailmap/core/text.hpp"

namespace trailmap::llm {

namespace {

// Returns the tag name and the offset of the value if `line` opens a field.
bool match_tag(std::string_view line, std::string& tag, std::size_t& value_start) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    if (i >= line.size() || !std::isupper(static_cast<unsigned char>(line[i]))) return false;
    while (i < line.size() && (std::isupper(static_cast<unsigned char>(line[i])) ||
                               std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
        ++i;
    }
    if (i - start < 2 || i >= line.size() || line[i] != ':') return false;
    tag = std::string(line.substr(start, i - start));
    value_start = i + 1;
    return true;
}

} // namespace

SchemaError::SchemaError(std::vector<std::string> missing, std::string raw)
    : ResponseError("response is missing required field(s): " + text::join(missing, ", "), std::move(raw)),
      missing_(std::move(missing)) {}

StructuredFields parse_structured(std::string_view response, const std::vector<std::string>& required,
                                  const std::vector<std::string>& optional) {
    if (required.empty() && optional.empty()) throw PreconditionError("response schema has no fields");
    auto wanted = [&](const std::string& tag) {
        return std::find(required.begin(), required.end(), tag) != required.end() ||
               std::find(optional.begin(), optional.end(), tag) != optional.end();
    };

    StructuredFields fields;
    std::string current;
    std::string value;
    bool open = false;
    auto close = [&] {
        if (open && wanted(current)) {
            auto v = text::trim(value);
            auto& slot = fields[current];
            if (!slot.empty() && !v.empty()) slot += '\n';
            slot += v;
        }
        open = false;
        value.clear();
    };

    for (const auto& line : text::split_lines(response)) {
        std::string tag;
        std::size_t value_start = 0;
        if (match_tag(line, tag, value_start)) {
            close();
            current = tag;
            open = true;
            value = line.substr(value_start);
        } else if (open) {
            value += '\n';
            value += line;
        }
    }
    close();

    std::vector<std::string> missing;
    for (const auto& r : required) {
        auto it = fields.find(r);
        if (it == fields.end() || it->second.empty()) missing.push_back(r);
    }
    if (!missing.empty()) throw SchemaError(std::move(missing), std::string(response));
    return fields;
}

} // namespace trailmap::llm
