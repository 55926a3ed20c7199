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
#include "trailmap/device/environment.hpp"

namespace trailmap::device {

// Reserved id of the synthetic home-screen app.
inline constexpr std::string_view kLauncherAppId = "launcher";
inline constexpr std::string_view kLauncherPageId = "home";

struct Location {
    std::string app_id;
    std::string page_id;
    std::optional<ScrollDirection> variant;

    bool operator==(const Location&) const = default;
};

struct DeviceState {
    std::string current_app;
    std::string current_page;
    std::optional<ScrollDirection> variant;
    std::map<std::string, std::string> state_vars;
    int step_counter = 0;
    bool terminal = false;
    std::vector<Location> back_stack;  // within the current app
};

// Deterministic page-graph device. Apps are immutable and may be shared
// between simulators; a simulator itself is single-threaded.
//
// Step semantics:
//   click/type/scroll  resolve the label against the last observation; the
//                      element must offer the matching affordance. click and
//                      type fire the element's effect ("{text}" in a
//                      set_state value expands to the typed text); scroll
//                      switches to the page's variant for that direction, or
//                      back to the base layout when none is declared.
//   back               pops the in-app history; on an app's root page it
//                      returns to the launcher.
//   home               goes to the launcher and clears history.
//   open_app           opens an installed app by name or id.
//   finish             freezes the device; further steps throw.
// Element text may embed "{state:KEY}" or "{state:KEY|default}".
class SimulatedDevice final : public Environment {
public:
    explicit SimulatedDevice(std::vector<AppGraphPtr> apps);

    Observation reset(const std::optional<std::string>& app_id = std::nullopt) override;
    StepResult step(const Action& action) override;
    Observation observe() const override;
    std::vector<InstalledApp> installed_apps() const override;

    const DeviceState& state() const { return state_; }
    const AppGraph* app(const std::string& app_id) const;
    const std::vector<AppGraphPtr>& apps() const { return apps_; }

private:
    const ui::UiTree& current_tree() const;
    const PageDef& current_page_def() const;
    StepResult accept(std::string message = {});
    StepResult reject(std::string message) const;
    void apply_effect(const Effect& effect, const std::string& typed);
    void go_back();
    void open(const std::string& app_id);

    std::vector<AppGraphPtr> apps_;
    AppGraph launcher_;
    DeviceState state_;
    bool started_ = false;
    std::optional<Observation> last_;
};

} // namespace trailmap::device
