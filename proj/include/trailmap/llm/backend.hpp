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

#include "trailmap/core/error.hpp"
#include "trailmap/llm/message.hpp"

namespace trailmap::llm {

// Any failure to obtain a response from a backend.
class GatewayError : public Error {
public:
    using Error::Error;
};

// Network-level failure after all retries.
class TransportError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// The server answered with a non-2xx status.
class ApiError : public GatewayError {
public:
    ApiError(int status, std::string body)
        : GatewayError("API error " + std::to_string(status) + ": " + body), status_(status),
          body_(std::move(body)) {}

    int status() const noexcept { return status_; }
    const std::string& body() const noexcept { return body_; }

private:
    int status_;
    std::string body_;
};

// A chat-completion provider. Implementations must be safe to call from
// several threads at once.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatReply complete(const ChatRequest& request) = 0;
    virtual std::string id() const = 0;
};

} // namespace trailmap::llm
