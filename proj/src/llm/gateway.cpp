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

#include "trailmap/llm/gateway.hpp"

#include <spdlog/spdlog.h>

#include "trailmap/core/text.hpp"

namespace trailmap::llm {

ChatExchange chat(ChatBackend& backend, const ChatRequest& request, Clock& clock) {
    auto start = clock.now();
    ChatReply reply = backend.complete(request);
    auto latency = clock.now() - start;
    if (reply.usage.prompt_tokens < 0 || reply.usage.completion_tokens < 0) {
        throw GatewayError("backend " + backend.id() + " reported negative token usage");
    }
    ChatExchange x;
    x.role = request.role;
    x.template_name = request.template_name;
    x.request = request.messages;
    x.response_text = std::move(reply.text);
    x.usage = reply.usage;
    x.latency = latency;
    x.backend_id = backend.id();
    return x;
}

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, std::shared_ptr<Clock> clock)
    : backend_(std::move(backend)), clock_(std::move(clock)) {
    if (!backend_) throw PreconditionError("gateway needs a backend");
    if (!clock_) throw PreconditionError("gateway needs a clock");
}

ChatExchange Gateway::send(Role role, const std::string& template_name, Messages messages, int call_id,
                           int attempt) {
    ChatRequest request{role, template_name, std::move(messages)};
    auto x = llm::chat(*backend_, request, *clock_);
    x.call_id = call_id;
    x.attempt = attempt;
    total_ += x.usage;
    if (attempt == 0) ++calls_[role];
    spdlog::debug("llm call {} ({}, attempt {}): {} prompt / {} completion tokens", call_id, template_name,
                  attempt, x.usage.prompt_tokens, x.usage.completion_tokens);
    transcript_.add(x);
    return x;
}

ChatExchange Gateway::chat(Role role, const std::string& template_name, Messages messages) {
    return send(role, template_name, std::move(messages), next_call_id_++, 0);
}

AskResult Gateway::ask(const RoleTemplate& t, const Bindings& bindings, const Validator& validate) {
    Messages messages = render(t, bindings);
    const int call_id = next_call_id_++;
    auto accept = [&](const std::string& text) {
        auto fields = parse_structured(text, t.required_fields, t.optional_fields);
        if (validate) {
            try {
                validate(fields);
            } catch (const ResponseError& e) {
                if (!e.raw().empty()) throw;
                throw ResponseError(e.what(), text);
            }
        }
        return fields;
    };

    auto first = send(t.role, t.name, messages, call_id, 0);
    try {
        return AskResult{accept(first.response_text), first.response_text, call_id, 1};
    } catch (const ResponseError& e) {
        spdlog::debug("llm call {} ({}): re-prompting after: {}", call_id, t.name, e.what());
        messages.push_back({"assistant", first.response_text});
        messages.push_back({"user", "Your previous response could not be used: " + std::string(e.what()) +
                                        "\nAnswer again using the tagged fields " +
                                        text::join(t.required_fields, ", ") + "."});
    }
    auto second = send(t.role, t.name, std::move(messages), call_id, 1);
    return AskResult{accept(second.response_text), second.response_text, call_id, 2};
}

std::vector<Usage> Gateway::usages() const {
    std::vector<Usage> out;
    for (const auto& x : transcript_.exchanges()) out.push_back(x.usage);
    return out;
}

int Gateway::calls(Role role) const {
    auto it = calls_.find(role);
    return it == calls_.end() ? 0 : it->second;
}

} // namespace trailmap::llm
