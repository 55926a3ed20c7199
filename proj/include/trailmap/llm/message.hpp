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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trailmap/core/clock.hpp"

namespace trailmap::llm {

// The five LLM roles of the agent.
enum class Role { summarizer, planner, scheduler, decision_maker, judge };

std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view s);

struct Message {
    std::string role;  // "system", "user" or "assistant"
    std::string content;

    bool operator==(const Message&) const = default;
};

using Messages = std::vector<Message>;

struct Usage {
    long long prompt_tokens = 0;
    long long completion_tokens = 0;

    Usage& operator+=(const Usage& o) {
        prompt_tokens += o.prompt_tokens;
        completion_tokens += o.completion_tokens;
        return *this;
    }
    bool operator==(const Usage&) const = default;
};

struct ChatRequest {
    Role role = Role::planner;
    std::string template_name;
    Messages messages;
};

struct ChatReply {
    std::string text;
    Usage usage;
};

struct ChatExchange {
    Role role = Role::planner;
    std::string template_name;
    Messages request;
    std::string response_text;
    Usage usage;
    Duration latency{0};
    std::string backend_id;
    int call_id = 0;   // logical call; corrective re-prompts share it
    int attempt = 0;   // 0 for the first request of a call
};

// All message contents joined by blank lines; what script matchers see.
std::string flatten(const Messages& messages);

} // namespace trailmap::llm
