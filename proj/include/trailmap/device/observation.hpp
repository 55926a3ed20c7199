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
#include <string>

#include <nlohmann/json.hpp>

#include "trailmap/ui/som.hpp"
#include "trailmap/ui/ui_tree.hpp"

namespace trailmap::device {

struct Observation {
    std::string app_id;
    std::string page_id;
    std::string ui_xml;            // canonical serialization of `tree`
    ui::UiTree tree;
    ui::SomAnnotation som;
    std::string screenshot_ref;    // stable for identical (app, page, state)
    std::map<std::string, std::string> state_snapshot;

    bool operator==(const Observation&) const = default;
};

// Builds the derived fields (ui_xml, som) from a rendered tree.
Observation make_observation(std::string app_id, std::string page_id, ui::UiTree tree,
                             std::map<std::string, std::string> state);

std::string screenshot_ref_for(const std::string& app_id, const std::string& page_id,
                               const std::map<std::string, std::string>& state);

// JSON form used by trajectory and transcript files. `from_json` re-parses
// ui_xml and checks that the stored SoM labels match it.
nlohmann::json to_json(const Observation& obs);
Observation observation_from_json(const nlohmann::json& j);

} // namespace trailmap::device
