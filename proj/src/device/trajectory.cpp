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

#include "trailmap/device/trajectory.hpp"

#include "trailmap/core/error.hpp"
#include "trailmap/core/io.hpp"

namespace trailmap::device {

namespace {
constexpr const char* kFormat = "trailmap-trajectory";
constexpr int kVersion = 1;
} // namespace

void Trajectory::start(Observation first) {
    if (!observations.empty()) throw PreconditionError("trajectory already started");
    observations.push_back(std::move(first));
}

void Trajectory::append(Action action, Observation next) {
    if (observations.empty()) throw PreconditionError("trajectory must start with an observation");
    actions.push_back(std::move(action));
    observations.push_back(std::move(next));
}

nlohmann::json to_json(const Trajectory& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t i = 0; i < t.observations.size(); ++i) {
        steps.push_back({{"observation", to_json(t.observations[i])}});
        if (i < t.actions.size()) steps.push_back({{"action", format_action(t.actions[i])}});
    }
    return {{"format", kFormat}, {"version", kVersion}, {"task", t.task},
            {"app_id", t.app_id}, {"success", t.success}, {"steps", steps}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != kFormat) throw ParseError("not a trajectory document");
        if (j.at("version").get<int>() != kVersion) {
            throw ParseError("unsupported trajectory version " + std::to_string(j.at("version").get<int>()));
        }
        Trajectory t;
        t.task = j.at("task").get<std::string>();
        t.app_id = j.at("app_id").get<std::string>();
        t.success = j.at("success").get<bool>();
        const auto& steps = j.at("steps");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            bool expect_observation = i % 2 == 0;
            if (expect_observation != steps[i].contains("observation")) {
                throw ParseError("trajectory steps must alternate observation and action (step " +
                                 std::to_string(i) + ")");
            }
            if (expect_observation) {
                auto obs = observation_from_json(steps[i].at("observation"));
                if (i == 0) {
                    t.start(std::move(obs));
                } else {
                    t.observations.push_back(std::move(obs));
                }
            } else {
                t.actions.push_back(parse_action(steps[i].at("action").get<std::string>()));
            }
        }
        if (!t.well_formed()) throw ParseError("trajectory must begin and end with an observation");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed trajectory: ") + e.what());
    }
}

void save_trajectory(const Trajectory& t, const std::string& path) {
    io::write_file(path, to_json(t).dump(2) + "\n");
}

Trajectory load_trajectory(const std::string& path) {
    auto text = io::read_file(path);
    try {
        return trajectory_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace trailmap::device
