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

#include "trailmap/llm/transcript.hpp"

#include "trailmap/core/io.hpp"

namespace trailmap::llm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string_view call_token(Role r) {
    switch (r) {
    case Role::summarizer: return "SU";
    case Role::planner: return "PL";
    case Role::scheduler: return "SC";
    case Role::decision_maker: return "DM";
    case Role::judge: return "JU";
    }
    return "??";
}

std::vector<ChatExchange> Transcript::exchanges() const {
    std::vector<ChatExchange> out;
    for (const auto& e : events_) {
        if (const auto* x = std::get_if<ChatExchange>(&e)) out.push_back(*x);
    }
    return out;
}

std::vector<std::string> Transcript::call_log() const {
    std::vector<std::string> out;
    for (const auto& e : events_) {
        if (const auto* x = std::get_if<ChatExchange>(&e)) {
            if (x->attempt == 0) out.emplace_back(call_token(x->role));
        } else if (std::holds_alternative<EnvEvent>(e)) {
            out.emplace_back("ENV");
        }
    }
    return out;
}

std::vector<std::vector<std::string>> Transcript::segment_logs() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& e : events_) {
        std::visit(overloaded{
                       [&](const ChatExchange& x) {
                           if (!out.empty() && x.attempt == 0) out.back().emplace_back(call_token(x.role));
                       },
                       [&](const EnvEvent&) {
                           if (!out.empty()) out.back().emplace_back("ENV");
                       },
                       [&](const MarkerEvent& m) {
                           if (m.kind == "segment") out.emplace_back();
                       },
                   },
                   e);
    }
    return out;
}

nlohmann::json to_json(const TranscriptEvent& event) {
    return std::visit(
        overloaded{
            [](const ChatExchange& x) {
                nlohmann::json messages = nlohmann::json::array();
                for (const auto& m : x.request) messages.push_back({{"role", m.role}, {"content", m.content}});
                return nlohmann::json{
                    {"type", "llm"},
                    {"call_id", x.call_id},
                    {"attempt", x.attempt},
                    {"role", std::string(to_string(x.role))},
                    {"template", x.template_name},
                    {"backend", x.backend_id},
                    {"messages", messages},
                    {"response", x.response_text},
                    {"usage", {{"prompt_tokens", x.usage.prompt_tokens},
                               {"completion_tokens", x.usage.completion_tokens}}},
                    {"latency_ns", x.latency.count()},
                };
            },
            [](const EnvEvent& e) {
                return nlohmann::json{
                    {"type", "env"},       {"action", e.action}, {"valid", e.valid},
                    {"message", e.message}, {"app_id", e.app_id}, {"page_id", e.page_id},
                    {"screenshot_ref", e.screenshot_ref},
                };
            },
            [](const MarkerEvent& m) {
                return nlohmann::json{{"type", "marker"}, {"kind", m.kind}, {"detail", m.detail}};
            },
        },
        event);
}

std::string Transcript::to_jsonl() const {
    std::string out = nlohmann::json{{"format", "trailmap-transcript"}, {"version", 1}}.dump();
    out += '\n';
    for (const auto& e : events_) {
        out += to_json(e).dump();
        out += '\n';
    }
    return out;
}

void Transcript::save(const std::string& path) const { io::write_file(path, to_jsonl()); }

} // namespace trailmap::llm
