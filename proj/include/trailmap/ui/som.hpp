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
#include <span>
#include <string>
#include <vector>

#include "trailmap/ui/ui_tree.hpp"

namespace trailmap::ui {

enum class Affordance : std::uint8_t { click = 1, type = 2, scroll = 4 };

class AffordanceSet {
public:
    AffordanceSet() = default;
    AffordanceSet(std::initializer_list<Affordance> items) {
        for (auto a : items) insert(a);
    }

    void insert(Affordance a) { bits_ |= static_cast<std::uint8_t>(a); }
    bool has(Affordance a) const { return (bits_ & static_cast<std::uint8_t>(a)) != 0; }
    bool empty() const { return bits_ == 0; }

    // "click", "type,scroll", ... in fixed click/type/scroll order.
    std::string to_string() const;
    static AffordanceSet parse(std::string_view text);

    bool operator==(const AffordanceSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

struct InteractiveElement {
    std::string node_id;
    AffordanceSet affordances;

    bool operator==(const InteractiveElement&) const = default;
};

struct SomEntry {
    int label = 0;
    std::string node_id;
    AffordanceSet affordances;

    bool operator==(const SomEntry&) const = default;
};

// Numeric Set-of-Mark labels for one observation. Labels are 1..n.
struct SomAnnotation {
    std::vector<SomEntry> entries;

    const SomEntry* find(int label) const;
    std::size_t size() const { return entries.size(); }
    bool operator==(const SomAnnotation&) const = default;
};

// Enabled nodes that are clickable, editable or scrollable, in pre-order.
std::vector<InteractiveElement> extract_interactive(const UiTree& tree);

// Labels 1..n in input order. Throws PreconditionError on a repeated node id.
SomAnnotation apply_som_labels(std::span<const InteractiveElement> interactive);

// Convenience: extract_interactive + apply_som_labels.
SomAnnotation annotate(const UiTree& tree);

// One line per label: "[label] class text (affordances)". When a node has no
// text its content-desc is shown instead. Throws PreconditionError when the
// annotation names a node that is missing from `tree` or not interactive.
std::string render_som_text(const SomAnnotation& annotation, const UiTree& tree);

// Un-annotated indented outline of every node that carries text or is
// interactive; what an observer sees without the numeric marks.
std::string render_outline(const UiTree& tree);

} // namespace trailmap::ui
