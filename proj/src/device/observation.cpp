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

#include "trailmap/device/observation.hpp"

#include "trailmap/core/error.hpp"
#include "trailmap/core/hash.hpp"
#include "trailmap/ui/xml.hpp"

namespace trailmap::device {

std::string screenshot_ref_for(const std::string& app_id, const std::string& page_id,
                               const std::map<std::string, std::string>& state) {
    std::string key = app_id;
    key += '\x1f';
    key += page_id;
    for (const auto& [k, v] : state) {
        key += '\x1e';
        key += k;
        key += '=';
        key += v;
    }
    return "shot-" + hash::to_hex(hash::fnv1a64(key));
}

Observation make_observation(std::string app_id, std::string page_id, ui::UiTree tree,
                             std::map<std::string, std::string> state) {
    Observation obs;
    obs.screenshot_ref = screenshot_ref_for(app_id, page_id, state);
    obs.app_id = std::move(app_id);
    obs.page_id = std::move(page_id);
    obs.ui_xml = ui::serialize_ui_tree(tree);
    obs.som = ui::annotate(tree);
    obs.tree = std::move(tree);
    obs.state_snapshot = std::move(state);
    return obs;
}

nlohmann::json to_json(const Observation& obs) {
    nlohmann::json som = nlohmann::json::array();
    for (const auto& e : obs.som.entries) {
        som.push_back({{"label", e.label}, {"node_id", e.node_id}, {"affordances", e.affordances.to_string()}});
    }
    nlohmann::json state = nlohmann::json::object();
    for (const auto& [k, v] : obs.state_snapshot) state[k] = v;
    return {
        {"app_id", obs.app_id},
        {"page_id", obs.page_id},
        {"screenshot_ref", obs.screenshot_ref},
        {"state", state},
        {"som", som},
        {"ui_xml", obs.ui_xml},
    };
}

Observation observation_from_json(const nlohmann::json& j) {
    try {
        std::map<std::string, std::string> state;
        for (const auto& [k, v] : j.at("state").items()) state[k] = v.get<std::string>();
        auto obs = make_observation(j.at("app_id").get<std::string>(), j.at("page_id").get<std::string>(),
                                    ui::parse_ui_xml(j.at("ui_xml").get<std::string>()), std::move(state));
        ui::SomAnnotation stored;
        for (const auto& e : j.at("som")) {
            stored.entries.push_back({e.at("label").get<int>(), e.at("node_id").get<std::string>(),
                                      ui::AffordanceSet::parse(e.at("affordances").get<std::string>())});
        }
        if (!(stored == obs.som)) throw ParseError("observation SoM labels do not match its ui_xml");
        if (j.at("screenshot_ref").get<std::string>() != obs.screenshot_ref) {
            throw ParseError("observation screenshot_ref does not match its page and state");
        }
        return obs;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed observation: ") + e.what());
    }
}

} // namespace trailmap::device
