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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "trailmap/device/action.hpp"
#include "trailmap/ui/ui_tree.hpp"

namespace trailmap::device {

struct Effect {
    enum class Kind { navigate, set_state, back, open_app, noop };

    Kind kind = Kind::noop;
    std::string target;          // page id (navigate) or app id (open_app)
    std::string key;             // set_state
    std::string value_template;  // set_state; "{text}" expands to typed text

    bool operator==(const Effect&) const = default;
};

std::string_view to_string(Effect::Kind k);

struct PageDef {
    std::string page_id;
    std::string title;
    ui::UiTree ui_tree;
    // Alternate layouts revealed by scrolling in a direction.
    std::map<ScrollDirection, ui::UiTree> scroll_variants;
    std::map<std::string, Effect> element_effects;
    bool terminal = false;
};

struct AppGraph {
    std::string app_id;
    std::string app_name;
    std::string start_page;
    std::map<std::string, PageDef> pages;
    std::map<std::string, std::string> initial_state;

    const PageDef* page(const std::string& id) const;
};

using AppGraphPtr = std::shared_ptr<const AppGraph>;

// Parses and validates an app-graph YAML document (see docs/schema.md).
// Schema violations throw ParseError whose message starts with the field
// path; dangling page references throw ValidationError naming the page.
AppGraph load_app_graph(const std::string& yaml_text);
AppGraph load_app_graph_file(const std::string& path);

// Every *.yaml file in `dir`, sorted by app_id.
std::vector<AppGraphPtr> load_app_dir(const std::string& dir);

// Checks the AppGraph invariants; throws ValidationError.
void validate(const AppGraph& app);

} // namespace trailmap::device
