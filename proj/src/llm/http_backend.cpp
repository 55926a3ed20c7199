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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "trailmap/llm/http_backend.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace trailmap::llm {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path prefix without trailing slash
};

Endpoint split_url(const std::string& url) {
    auto scheme = url.find("://");
    auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    Endpoint e;
    e.origin = url.substr(0, path_start);
    e.prefix = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

bool retryable(int status) { return status == 429 || status >= 500; }

} // namespace

void apply_env_overrides(HttpConfig& config) {
    auto set = [](const char* name, std::string& field) {
        if (const char* v = std::getenv(name); v && *v) field = v;
    };
    set("TRAILMAP_BASE_URL", config.base_url);
    set("TRAILMAP_API_KEY", config.api_key);
    set("TRAILMAP_MODEL", config.model);
}

nlohmann::json post_json(const HttpConfig& config, const std::string& path, const nlohmann::json& body) {
    auto endpoint = split_url(config.base_url);
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(config.timeout);
    client.set_read_timeout(config.timeout);
    client.set_write_timeout(config.timeout);
    httplib::Headers headers;
    if (!config.api_key.empty()) headers.emplace("Authorization", "Bearer " + config.api_key);

    const auto payload = body.dump();
    const auto target = endpoint.prefix + path;
    auto backoff = config.initial_backoff;
    std::string last_error;
    int last_status = 0;
    std::string last_body;
    const int attempts = std::max(1, config.max_attempts);

    for (int attempt = 1; attempt <= attempts; ++attempt) {
        auto res = client.Post(target, headers, payload, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            last_status = 0;
        } else if (res->status >= 200 && res->status < 300) {
            try {
                return nlohmann::json::parse(res->body);
            } catch (const nlohmann::json::parse_error& e) {
                throw ApiError(res->status, std::string("unparseable response body: ") + e.what());
            }
        } else if (!retryable(res->status)) {
            throw ApiError(res->status, res->body);
        } else {
            last_status = res->status;
            last_body = res->body;
        }
        if (attempt < attempts) {
            spdlog::warn("POST {}{} failed (attempt {}/{}): {}", endpoint.origin, target, attempt, attempts,
                         last_status ? "HTTP " + std::to_string(last_status) : last_error);
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
    }
    if (last_status) throw ApiError(last_status, last_body);
    throw TransportError("POST " + endpoint.origin + target + " failed after " + std::to_string(attempts) +
                         " attempt(s): " + last_error);
}

ChatReply HttpChatBackend::complete(const ChatRequest& request) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
    nlohmann::json body = {{"model", config_.model}, {"messages", messages}, {"temperature", config_.temperature}};

    auto reply = post_json(config_, "/chat/completions", body);
    try {
        ChatReply out;
        out.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        if (reply.contains("usage") && reply["usage"].is_object()) {
            out.usage.prompt_tokens = reply["usage"].value("prompt_tokens", 0LL);
            out.usage.completion_tokens = reply["usage"].value("completion_tokens", 0LL);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ApiError(200, std::string("unexpected response shape: ") + e.what());
    }
}

} // namespace trailmap::llm
