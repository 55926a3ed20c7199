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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trailmap::ui {

struct Bounds {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    bool well_ordered() const { return left <= right && top <= bottom; }
    bool operator==(const Bounds&) const = default;
};

struct UiNode {
    std::string id;
    std::string cls;          // "class" attribute, free-form
    std::string text;
    std::string content_desc;
    bool clickable = false;
    bool scrollable = false;
    bool editable = false;
    bool enabled = false;
    Bounds bounds;
    std::vector<UiNode> children;

    bool operator==(const UiNode&) const = default;
};

struct UiTree {
    UiNode root;

    bool operator==(const UiTree&) const = default;

    // Depth-first pre-order lookup; nullptr when absent.
    const UiNode* find(const std::string& id) const;
    std::size_t node_count() const;
};

// Visits every node in depth-first pre-order.
void for_each_node(const UiNode& root, const std::function<void(const UiNode&)>& visit);

// Throws ValidationError if node ids collide or bounds are not well ordered.
void validate(const UiTree& tree);

} // namespace trailmap::ui
