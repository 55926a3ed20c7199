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

#include <functional>
#include <map>
#include <memory>

#include "trailmap/core/clock.hpp"
#include "trailmap/llm/backend.hpp"
#include "trailmap/llm/structured.hpp"
#include "trailmap/llm/templates.hpp"
#include "trailmap/llm/transcript.hpp"

namespace trailmap::llm {

// One timed request against a backend. Backend errors propagate unchanged.
ChatExchange chat(ChatBackend& backend, const ChatRequest& request, Clock& clock);

// Extra checks on parsed fields; throw ResponseError to ask for a correction.
// Other exceptions abort the call without a re-prompt.
using Validator = std::function<void(const StructuredFields&)>;

struct AskResult {
    StructuredFields fields;
    std::string text;  // raw text of the accepted response
    int call_id = 0;
    int attempts = 1;
};

// Per-episode front end to a shared backend. Numbers calls, records every
// exchange in a transcript and keeps usage totals. Not thread-safe; give each
// concurrent episode its own gateway.
class Gateway {
public:
    explicit Gateway(std::shared_ptr<ChatBackend> backend,
                     std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>());

    ChatExchange chat(Role role, const std::string& template_name, Messages messages);

    // Renders `t`, sends it and parses the tagged fields. A response that
    // fails parsing or `validate` gets exactly one corrective re-prompt under
    // the same call id; a second failure rethrows the ResponseError.
    AskResult ask(const RoleTemplate& t, const Bindings& bindings, const Validator& validate = {});

    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }

    Usage total_usage() const { return total_; }
    std::vector<Usage> usages() const;
    // Logical calls made for `role`; re-prompts are not counted.
    int calls(Role role) const;

    Clock& clock() { return *clock_; }
    const ChatBackend& backend() const { return *backend_; }

private:
    ChatExchange send(Role role, const std::string& template_name, Messages messages, int call_id, int attempt);

    std::shared_ptr<ChatBackend> backend_;
    std::shared_ptr<Clock> clock_;
    Transcript transcript_;
    Usage total_;
    std::map<Role, int> calls_;
    int next_call_id_ = 1;
};

} // namespace trailmap::llm
