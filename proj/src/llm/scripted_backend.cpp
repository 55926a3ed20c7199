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

#include "trailmap/llm/scripted_backend.hpp"

#include <filesystem>
#include <set>

#include "trailmap/core/io.hpp"
#include "trailmap/core/text.hpp"
#include "trailmap/core/yaml_fields.hpp"

namespace trailmap::llm {

namespace fs = std::filesystem;

namespace {

void parse_into(const std::string& yaml_text, const fs::path& base_dir, ScriptBook& book,
                std::set<std::string>& visiting, const std::string& what) {
    auto doc = yaml::load(yaml_text, what);
    yaml::Fields f(doc, "");
    auto name = f.str("name", "");
    if (book.name.empty()) book.name = name;
    auto includes = f.str_list("include");
    auto entries = f.list("entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        yaml::Fields ef(entries[i], f.item_path("entries", i));
        ScriptEntry e;
        auto role = parse_role(ef.str("role"));
        if (!role) ef.fail("role", "expected summarizer, planner, scheduler, decision_maker or judge");
        e.role = *role;
        e.contains = ef.str_list("contains");
        e.excludes = ef.str_list("excludes");
        e.response = ef.str("response");
        e.repeat = ef.boolean("repeat", false);
        ef.finish();
        book.entries.push_back(std::move(e));
    }
    f.finish();
    for (const auto& inc : includes) {
        auto path = fs::weakly_canonical(base_dir / inc);
        if (!visiting.insert(path.string()).second) {
            throw ParseError(what + ": include cycle through " + path.string());
        }
        parse_into(io::read_file(path.string()), path.parent_path(), book, visiting, path.string());
        visiting.erase(path.string());
    }
}

} // namespace

bool ScriptEntry::matches(const ChatRequest& request, const std::string& flattened) const {
    if (request.role != role) return false;
    for (const auto& s : contains) {
        if (!text::contains(flattened, s)) return false;
    }
    for (const auto& s : excludes) {
        if (text::contains(flattened, s)) return false;
    }
    return true;
}

ScriptBook parse_scriptbook(const std::string& yaml_text, const std::string& base_dir) {
    ScriptBook book;
    std::set<std::string> visiting;
    parse_into(yaml_text, fs::path(base_dir), book, visiting, "scriptbook");
    return book;
}

ScriptBook load_scriptbook(const std::string& path) {
    ScriptBook book;
    std::set<std::string> visiting{fs::weakly_canonical(path).string()};
    parse_into(io::read_file(path), fs::path(path).parent_path(), book, visiting, path);
    if (book.name.empty()) book.name = fs::path(path).stem().string();
    return book;
}

long long estimate_tokens(std::string_view s) {
    long long words = 0;
    bool in_word = false;
    for (char c : s) {
        bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

ScriptedBackend::ScriptedBackend(ScriptBook book)
    : book_(std::move(book)), consumed_(book_.entries.size(), false) {}

ChatReply ScriptedBackend::complete(const ChatRequest& request) {
    auto flattened = flatten(request.messages);
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < book_.entries.size(); ++i) {
        if (consumed_[i]) continue;
        const auto& entry = book_.entries[i];
        if (!entry.matches(request, flattened)) continue;
        if (!entry.repeat) consumed_[i] = true;
        return ChatReply{entry.response, Usage{estimate_tokens(flattened), estimate_tokens(entry.response)}};
    }
    std::string excerpt = flattened.size() > 400 ? flattened.substr(flattened.size() - 400) : flattened;
    throw ScriptExhaustedError("no script entry matches " + std::string(to_string(request.role)) +
                               " request '" + request.template_name + "'; prompt tail: " + excerpt);
}

std::size_t ScriptedBackend::remaining() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (std::size_t i = 0; i < consumed_.size(); ++i) n += !consumed_[i] || book_.entries[i].repeat;
    return n;
}

} // namespace trailmap::llm
