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

#include "trailmap/ui/ui_tree.hpp"

#include <unordered_set>

#include "trailmap/core/error.hpp"

namespace trailmap::ui {

void for_each_node(const UiNode& root, const std::function<void(const UiNode&)>& visit) {
    visit(root);
    for (const auto& child : root.children) for_each_node(child, visit);
}

const UiNode* UiTree::find(const std::string& id) const {
    const UiNode* found = nullptr;
    for_each_node(root, [&](const UiNode& n) {
        if (!found && n.id == id) found = &n;
    });
    return found;
}

std::size_t UiTree::node_count() const {
    std::size_t n = 0;
    for_each_node(root, [&](const UiNode&) { ++n; });
    return n;
}

void validate(const UiTree& tree) {
    std::unordered_set<std::string> seen;
    for_each_node(tree.root, [&](const UiNode& n) {
        if (!seen.insert(n.id).second) {
            throw ValidationError("node '" + n.id + "'", "duplicate node id");
        }
        if (!n.bounds.well_ordered()) {
            throw ValidationError("node '" + n.id + "'", "bounds are not well ordered");
        }
    });
}

} // namespace trailmap::ui
