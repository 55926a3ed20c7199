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

#include <optional>
#include <string>
#include <vector>

#include "trailmap/core/error.hpp"
#include "trailmap/device/action.hpp"
#include "trailmap/device/observation.hpp"

namespace trailmap::device {

struct InstalledApp {
    std::string app_id;
    std::string app_name;

    bool operator==(const InstalledApp&) const = default;
};

enum class StepOutcome { ok, invalid_action };

struct StepResult {
    Observation observation;
    StepOutcome outcome = StepOutcome::ok;
    std::string message;  // reason for an invalid action, empty otherwise
    bool terminal = false;
};

// Raised for actions on a finished episode and other unrecoverable misuse.
class EnvironmentError : public Error {
public:
    using Error::Error;
};

// What the agent drives. The simulator implements it; a real-device adapter
// would too. Invalid actions are reported through StepResult, never thrown.
class Environment {
public:
    virtual ~Environment() = default;

    // Starts an episode on the launcher, or on `app_id`'s start page.
    virtual Observation reset(const std::optional<std::string>& app_id = std::nullopt) = 0;
    virtual StepResult step(const Action& action) = 0;
    virtual Observation observe() const = 0;
    virtual std::vector<InstalledApp> installed_apps() const = 0;
};

} // namespace trailmap::device
