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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

namespace trailmap::yaml {

// Strict accessor over one YAML mapping. Every read records the key; a final
// `finish()` throws for keys that were never read, so documents with unknown
// fields are rejected. Errors are ParseError with the field path in the text
// and the YAML position as line/column.
class Fields {
public:
    Fields(const YAML::Node& node, std::string path);

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const;

    std::string str(const std::string& key);
    std::string str(const std::string& key, const std::string& fallback);
    std::optional<std::string> opt_str(const std::string& key);
    bool boolean(const std::string& key, bool fallback);
    int integer(const std::string& key, int fallback);
    double real(const std::string& key, double fallback);
    std::vector<std::string> str_list(const std::string& key);
    std::map<std::string, std::string> str_map(const std::string& key);

    // A sequence value (empty when absent); throws if present but not a list.
    std::vector<YAML::Node> list(const std::string& key, bool required = false);
    std::optional<YAML::Node> map(const std::string& key);

    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    std::string item_path(const std::string& key, std::size_t index) const {
        return child_path(key) + "[" + std::to_string(index) + "]";
    }

    void finish() const;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

private:
    YAML::Node get(const std::string& key);
    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

// Loads a document from text, converting yaml-cpp exceptions to ParseError.
YAML::Node load(const std::string& text, const std::string& what);
YAML::Node load_file(const std::string& path);

} // namespace trailmap::yaml
