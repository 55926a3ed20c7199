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
#include <vector>

namespace trailmap::memory {

using Timestamp = std::chrono::time_point<std::chrono::system_clock, std::chrono::nanoseconds>;

struct KeyElement {
    std::string name;
    std::string function;

    bool operator==(const KeyElement&) const = default;
};

// Distilled memory of one app page.
struct PageChunk {
    std::string chunk_id;
    std::string app_id;
    std::string page_label;
    std::string page_description;
    std::vector<KeyElement> key_ui_elements;
    std::string action_path;
    std::string source_task;
    Timestamp created_at{};

    bool operator==(const PageChunk&) const = default;
};

// SHA-256 (first 32 hex digits) over app id, label, description, elements
// and action path. Source task and timestamp do not contribute.
std::string compute_chunk_id(const PageChunk& c);

// Sets chunk_id; throws ValidationError when page_label is empty.
void finalize(PageChunk& c);

// Text that gets embedded: "label\ndescription\nelements\npath", elements
// rendered as "name: function" joined by "; ".
std::string chunk_text(const PageChunk& c);

} // namespace trailmap::memory
