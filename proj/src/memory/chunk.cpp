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

#include "trailmap/memory/chunk.hpp"

#include "trailmap/core/error.hpp"
#include "trailmap/core/hash.hpp"

namespace trailmap::memory {

std::string compute_chunk_id(const PageChunk& c) {
    constexpr char kUnit = '\x1f';
    constexpr char kRecord = '\x1e';
    std::string key = c.app_id;
    key += kUnit;
    key += c.page_label;
    key += kUnit;
    key += c.page_description;
    key += kUnit;
    for (const auto& e : c.key_ui_elements) {
        key += e.name;
        key += kRecord;
        key += e.function;
        key += kRecord;
    }
    key += kUnit;
    key += c.action_path;
    return hash::sha256_hex(key).substr(0, 32);
}

void finalize(PageChunk& c) {
    if (c.page_label.empty()) throw ValidationError("page_label", "must not be empty");
    c.chunk_id = compute_chunk_id(c);
}

std::string chunk_text(const PageChunk& c) {
    std::string elements;
    for (const auto& e : c.key_ui_elements) {
        if (!elements.empty()) elements += "; ";
        elements += e.name + ": " + e.function;
    }
    return c.page_label + "\n" + c.page_description + "\n" + elements + "\n" + c.action_path;
}

} // namespace trailmap::memory
