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
#include <string_view>

#include "trailmap/ui/ui_tree.hpp"

namespace trailmap::ui {

// Parses the UI hierarchy dialect: `node` elements carrying id, class, text,
// content-desc, clickable, scrollable, editable, enabled and
// bounds="[l,t][r,b]". The document element is either a single `node` or a
// `hierarchy` wrapper around exactly one `node`. Unknown attributes are
// ignored and missing booleans read as false. A node without an id gets its
// pre-order path ("0", "0.1", ...).
//
// Throws ParseError (with line/column) on malformed XML, unparseable bounds or
// duplicate ids.
UiTree parse_ui_xml(std::string_view text);

// Canonical form: XML declaration, `hierarchy` wrapper, every attribute
// emitted in a fixed order, two-space indentation.
std::string serialize_ui_tree(const UiTree& tree);

// Parses "[l,t][r,b]". Returns false on any syntax error.
bool parse_bounds(std::string_view text, Bounds& out);
std::string format_bounds(const Bounds& b);

} // namespace trailmap::ui
