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

#include "trailmap/core/yaml_fields.hpp"

#include "trailmap/core/error.hpp"
#include "trailmap/core/io.hpp"

namespace trailmap::yaml {

namespace {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& path, const std::string& message) {
    auto mark = node.Mark();
    if (mark.is_null()) throw ParseError(path + ": " + message);
    throw ParseError(path + ": " + message, mark.line + 1, mark.column + 1);
}

std::string scalar(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) fail_at(node, path, "expected a scalar");
    return node.Scalar();
}

} // namespace

Fields::Fields(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) fail_at(node_, path_.empty() ? "<root>" : path_, "expected a mapping");
}

bool Fields::has(const std::string& key) const {
    const YAML::Node& view = node_;
    return static_cast<bool>(view[key]);
}

YAML::Node Fields::get(const std::string& key) {
    used_.insert(key);
    const YAML::Node& view = node_;
    return view[key];
}

void Fields::fail(const std::string& key, const std::string& message) const {
    const YAML::Node& view = node_;
    auto child = view[key];
    fail_at(child ? child : node_, child_path(key), message);
}

std::string Fields::str(const std::string& key) {
    auto n = get(key);
    if (!n || n.IsNull()) fail_at(node_, child_path(key), "required field is missing");
    return scalar(n, child_path(key));
}

std::string Fields::str(const std::string& key, const std::string& fallback) {
    auto v = opt_str(key);
    return v ? *v : fallback;
}

std::optional<std::string> Fields::opt_str(const std::string& key) {
    auto n = get(key);
    if (!n || n.IsNull()) return std::nullopt;
    return scalar(n, child_path(key));
}

bool Fields::boolean(const std::string& key, bool fallback) {
    auto n = get(key);
    if (!n || n.IsNull()) return fallback;
    auto s = scalar(n, child_path(key));
    if (s == "true") return true;
    if (s == "false") return false;
    fail_at(n, child_path(key), "expected true or false");
}

int Fields::integer(const std::string& key, int fallback) {
    auto n = get(key);
    if (!n || n.IsNull()) return fallback;
    try {
        return n.as<int>();
    } catch (const YAML::Exception&) {
        fail_at(n, child_path(key), "expected an integer");
    }
}

double Fields::real(const std::string& key, double fallback) {
    auto n = get(key);
    if (!n || n.IsNull()) return fallback;
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        fail_at(n, child_path(key), "expected a number");
    }
}

std::vector<std::string> Fields::str_list(const std::string& key) {
    std::vector<std::string> out;
    auto items = list(key);
    for (std::size_t i = 0; i < items.size(); ++i) out.push_back(scalar(items[i], item_path(key, i)));
    return out;
}

std::map<std::string, std::string> Fields::str_map(const std::string& key) {
    std::map<std::string, std::string> out;
    auto n = get(key);
    if (!n || n.IsNull()) return out;
    if (!n.IsMap()) fail_at(n, child_path(key), "expected a mapping");
    for (const auto& kv : n) {
        auto k = scalar(kv.first, child_path(key));
        out[k] = scalar(kv.second, child_path(key) + "." + k);
    }
    return out;
}

std::vector<YAML::Node> Fields::list(const std::string& key, bool required) {
    auto n = get(key);
    if (!n || n.IsNull()) {
        if (required) fail_at(node_, child_path(key), "required field is missing");
        return {};
    }
    if (!n.IsSequence()) fail_at(n, child_path(key), "expected a list");
    std::vector<YAML::Node> out;
    for (const auto& item : n) out.push_back(item);
    return out;
}

std::optional<YAML::Node> Fields::map(const std::string& key) {
    auto n = get(key);
    if (!n || n.IsNull()) return std::nullopt;
    if (!n.IsMap()) fail_at(n, child_path(key), "expected a mapping");
    return n;
}

void Fields::finish() const {
    for (const auto& kv : node_) {
        auto key = kv.first.Scalar();
        if (!used_.count(key)) fail_at(kv.first, child_path(key), "unknown field");
    }
}

YAML::Node load(const std::string& text, const std::string& what) {
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(what + ": " + e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

YAML::Node load_file(const std::string& path) {
    return load(io::read_file(path), path);
}

} // namespace trailmap::yaml
