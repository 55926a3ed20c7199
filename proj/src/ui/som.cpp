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

#include "trailmap/ui/som.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "trailmap/core/error.hpp"
#include "trailmap/core/text.hpp"

namespace trailmap::ui {

namespace {

AffordanceSet affordances_of(const UiNode& n) {
    AffordanceSet set;
    if (!n.enabled) return set;
    if (n.clickable) set.insert(Affordance::click);
    if (n.editable) set.insert(Affordance::type);
    if (n.scrollable) set.insert(Affordance::scroll);
    return set;
}

const std::string& display_text(const UiNode& n) { return n.text.empty() ? n.content_desc : n.text; }

void outline(std::string& out, const UiNode& n, int depth) {
    auto aff = affordances_of(n);
    const auto& label = display_text(n);
    int child_depth = depth;
    if (!label.empty() || !aff.empty()) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += n.cls;
        if (!label.empty()) out += " \"" + label + "\"";
        if (!aff.empty()) out += " (" + aff.to_string() + ")";
        out += '\n';
        child_depth = depth + 1;
    }
    for (const auto& c : n.children) outline(out, c, child_depth);
}

} // namespace

std::string AffordanceSet::to_string() const {
    std::vector<std::string> parts;
    if (has(Affordance::click)) parts.emplace_back("click");
    if (has(Affordance::type)) parts.emplace_back("type");
    if (has(Affordance::scroll)) parts.emplace_back("scroll");
    return text::join(parts, ",");
}

AffordanceSet AffordanceSet::parse(std::string_view s) {
    AffordanceSet set;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto item = text::trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (item == "click") set.insert(Affordance::click);
        else if (item == "type") set.insert(Affordance::type);
        else if (item == "scroll") set.insert(Affordance::scroll);
        else if (!item.empty()) throw ParseError("unknown affordance '" + item + "'");
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return set;
}

const SomEntry* SomAnnotation::find(int label) const {
    if (label < 1 || static_cast<std::size_t>(label) > entries.size()) return nullptr;
    return &entries[static_cast<std::size_t>(label) - 1];
}

std::vector<InteractiveElement> extract_interactive(const UiTree& tree) {
    std::vector<InteractiveElement> out;
    for_each_node(tree.root, [&](const UiNode& n) {
        auto aff = affordances_of(n);
        if (!aff.empty()) out.push_back({n.id, aff});
    });
    return out;
}

SomAnnotation apply_som_labels(std::span<const InteractiveElement> interactive) {
    SomAnnotation ann;
    ann.entries.reserve(interactive.size());
    std::unordered_set<std::string> seen;
    int label = 1;
    for (const auto& e : interactive) {
        if (!seen.insert(e.node_id).second) {
            throw PreconditionError("duplicate node id '" + e.node_id + "' in interactive list");
        }
        ann.entries.push_back({label++, e.node_id, e.affordances});
    }
    return ann;
}

SomAnnotation annotate(const UiTree& tree) {
    auto interactive = extract_interactive(tree);
    return apply_som_labels(interactive);
}

std::string render_som_text(const SomAnnotation& annotation, const UiTree& tree) {
    std::string out;
    for (const auto& e : annotation.entries) {
        const UiNode* n = tree.find(e.node_id);
        if (!n) throw PreconditionError(fmt::format("label {} names unknown node '{}'", e.label, e.node_id));
        if (affordances_of(*n).empty()) {
            throw PreconditionError(fmt::format("label {} names non-interactive node '{}'", e.label, e.node_id));
        }
        const auto& label = display_text(*n);
        out += fmt::format("[{}] {}", e.label, n->cls);
        if (!label.empty()) out += " " + label;
        out += " (" + e.affordances.to_string() + ")\n";
    }
    return out;
}

std::string render_outline(const UiTree& tree) {
    std::string out;
    outline(out, tree.root, 0);
    return out;
}

} // namespace trailmap::ui
