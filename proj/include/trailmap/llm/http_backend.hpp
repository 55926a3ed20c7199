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

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "trailmap/llm/backend.hpp"

namespace trailmap::llm {

struct HttpConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-4o";
    std::string api_key;
    double temperature = 0.0;
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::seconds timeout{60};
};

// TRAILMAP_BASE_URL, TRAILMAP_API_KEY and TRAILMAP_MODEL override the
// corresponding fields when set and non-empty.
void apply_env_overrides(HttpConfig& config);

// POSTs `body` to base_url + path. Connection failures, 429 and 5xx are
// retried with exponential backoff up to max_attempts; other non-2xx codes
// fail immediately. Throws TransportError or ApiError.
nlohmann::json post_json(const HttpConfig& config, const std::string& path, const nlohmann::json& body);

// OpenAI-compatible /chat/completions client.
class HttpChatBackend final : public ChatBackend {
public:
    explicit HttpChatBackend(HttpConfig config) : config_(std::move(config)) {}

    ChatReply complete(const ChatRequest& request) override;
    std::string id() const override { return "http:" + config_.model; }

private:
    HttpConfig config_;
};

} // namespace trailmap::llm
