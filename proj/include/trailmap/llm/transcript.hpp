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

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "trailmap/llm/message.hpp"

namespace trailmap::llm {

// One env.step call made by the executor.
struct EnvEvent {
    std::string action;   // formatted action, e.g. "click(3)"
    bool valid = true;
    std::string message;  // rejection reason for invalid actions
    std::string app_id;   // location after the step
    std::string page_id;
    std::string screenshot_ref;
};

// Structural boundary, e.g. {"segment", "settings"} when the executor starts
// working in a new app.
struct MarkerEvent {
    std::string kind;
    std::string detail;
};

using TranscriptEvent = std::variant<ChatExchange, EnvEvent, MarkerEvent>;

// Ordered record of everything an episode did: LLM exchanges, environment
// steps and segment markers. Serialized as JSON lines after a header line.
class Transcript {
public:
    void add(TranscriptEvent event) { events_.push_back(std::move(event)); }
    const std::vector<TranscriptEvent>& events() const { return events_; }

    std::vector<ChatExchange> exchanges() const;

    // One token per logical LLM call (first attempt only) or env step:
    // SU, PL, SC, DM, JU, ENV.
    std::vector<std::string> call_log() const;

    // call_log() split at "segment" markers; calls before the first marker
    // are not part of any segment and are omitted.
    std::vector<std::vector<std::string>> segment_logs() const;

    std::string to_jsonl() const;
    void save(const std::string& path) const;

private:
    std::vector<TranscriptEvent> events_;
};

std::string_view call_token(Role r);
nlohmann::json to_json(const TranscriptEvent& event);

} // namespace trailmap::llm
