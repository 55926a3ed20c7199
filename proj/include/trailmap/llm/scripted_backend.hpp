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

#include <mutex>
#include <string>
#include <vector>

#include "trailmap/llm/backend.hpp"

namespace trailmap::llm {

struct ScriptEntry {
    Role role = Role::planner;
    std::vector<std::string> contains;  // all must occur in the flattened prompt
    std::vector<std::string> excludes;  // none may occur
    std::string response;
    bool repeat = false;                // never consumed

    bool matches(const ChatRequest& request, const std::string& flattened) const;
};

// Ordered canned responses. The first unconsumed entry whose matcher accepts
// a request answers it; non-repeating entries are then consumed.
struct ScriptBook {
    std::string name;
    std::vector<ScriptEntry> entries;
};

// YAML form (see docs/schema.md): optional `name`, optional `include` list of
// paths relative to the file (their entries are appended after the local
// ones, in order), and `entries`.
ScriptBook load_scriptbook(const std::string& path);
ScriptBook parse_scriptbook(const std::string& yaml_text, const std::string& base_dir = ".");

// Raised when no entry matches; a scripted run must never improvise.
class ScriptExhaustedError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// Whitespace-delimited word count; the scripted backend's token estimate.
long long estimate_tokens(std::string_view text);

// Deterministic test double. Matching is serialized internally, so one book
// may be shared, but concurrent episodes should each get their own book to
// keep cursor order meaningful.
class ScriptedBackend final : public ChatBackend {
public:
    explicit ScriptedBackend(ScriptBook book);

    ChatReply complete(const ChatRequest& request) override;
    std::string id() const override { return "scripted:" + book_.name; }

    std::size_t remaining() const;

private:
    ScriptBook book_;
    std::vector<bool> consumed_;
    mutable std::mutex mutex_;
};

} // namespace trailmap::llm
