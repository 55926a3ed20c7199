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

#include "trailmap/llm/message.hpp"

namespace trailmap::llm {

std::string_view to_string(Role r) {
    switch (r) {
    case Role::summarizer: return "summarizer";
    case Role::planner: return "planner";
    case Role::scheduler: return "scheduler";
    case Role::decision_maker: return "decision_maker";
    case Role::judge: return "judge";
    }
    return "planner";
}

std::optional<Role> parse_role(std::string_view s) {
    for (auto r : {Role::summarizer, Role::planner, Role::scheduler, Role::decision_maker, Role::judge}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

std::string flatten(const Messages& messages) {
    std::string out;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (i) out += "\n\n";
        out += messages[i].content;
    }
    return out;
}

} // namespace trailmap::llm
