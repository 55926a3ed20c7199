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
#include <optional>
#include <string>
#include <vector>

#include "trailmap/device/app_graph.hpp"
#include "trailmap/device/observation.hpp"
#include "trailmap/device/simulator.hpp"

namespace trailmap::bench {

// Where a task must leave the device: an app, optionally a page, and state
// variables that must hold exactly.
struct Goal {
    std::string app_id;
    std::optional<std::string> page_id;
    std::map<std::string, std::string> state;
};

struct TaskSpec {
    std::string id;
    std::string text;
    std::vector<std::string> apps_hint;
    std::string difficulty;  // easy, medium, hard, level1, level2 or level3
    Goal goal;
    int max_steps = 30;
    std::optional<std::string> start_app;  // reset onto this app instead of the launcher
    std::string script;                    // scriptbook path for the scripted backend, resolved
};

struct Suite {
    std::string name;
    std::string apps_dir;     // resolved
    std::string memory_seed;  // resolved, empty when absent
    std::vector<TaskSpec> tasks;
};

bool is_difficulty(const std::string& d);

bool check_goal(const Goal& goal, const device::DeviceState& state);
bool check_goal(const Goal& goal, const device::Observation& obs);

// Throws ValidationError when the goal names an unknown app or page.
void validate_goal(const Goal& goal, const std::vector<device::AppGraphPtr>& apps, const std::string& path = "goal");
// Goals, difficulty tags, unique ids, non-empty text and max_steps >= 1.
void validate_suite(const Suite& suite, const std::vector<device::AppGraphPtr>& apps);

// YAML form, paths relative to the suite file:
//   name: <suite name>
//   apps_dir: <dir of app graphs>
//   memory: <chunk seed file>          # optional
//   tasks:
//     - id, text, difficulty, max_steps (default 30), apps_hint, start_app,
//       script, goal: {app, page, state: {key: value}}
Suite parse_suite(const std::string& yaml_text, const std::string& base_dir = ".");
Suite load_suite(const std::string& path);

} // namespace trailmap::bench
