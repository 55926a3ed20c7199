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
#include <vector>

#include <nlohmann/json.hpp>

#include "trailmap/device/action.hpp"
#include "trailmap/device/observation.hpp"

namespace trailmap::device {

// o_0, a_0, o_1, ..., a_{n-1}, o_n. Stored as two parallel lists with
// observations.size() == actions.size() + 1 once started.
struct Trajectory {
    std::string task;
    std::string app_id;
    bool success = false;
    std::vector<Observation> observations;
    std::vector<Action> actions;

    void start(Observation first);
    void append(Action action, Observation next);

    // Observation-first, observation-last alternation.
    bool well_formed() const { return !observations.empty() && observations.size() == actions.size() + 1; }
    std::size_t length() const { return observations.size() + actions.size(); }

    bool operator==(const Trajectory&) const = default;
};

// File form: {"format": "trailmap-trajectory", "version": 1, "task", "app_id",
// "success", "steps": [{"observation": {...}}, {"action": "click(3)"}, ...]}.
nlohmann::json to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);

void save_trajectory(const Trajectory& t, const std::string& path);
Trajectory load_trajectory(const std::string& path);

} // namespace trailmap::device
