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

#include "trailmap/bench/suite.hpp"

#include <filesystem>
#include <set>

#include "trailmap/core/io.hpp"
#include "trailmap/core/yaml_fields.hpp"

namespace trailmap::bench {

namespace fs = std::filesystem;

namespace {

std::string resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    return (path.is_absolute() ? path : base / path).lexically_normal().string();
}

bool goal_matches(const Goal& goal, const std::string& app, const std::string& page,
                  const std::map<std::string, std::string>& vars) {
    if (goal.app_id != app) return false;
    if (goal.page_id && *goal.page_id != page) return false;
    for (const auto& [k, v] : goal.state) {
        auto it = vars.find(k);
        if (it == vars.end() || it->second != v) return false;
    }
    return true;
}

} // namespace

bool is_difficulty(const std::string& d) {
    static const std::set<std::string> tags{"easy", "medium", "hard", "level1", "level2", "level3"};
    return tags.count(d) > 0;
}

bool check_goal(const Goal& goal, const device::DeviceState& state) {
    return goal_matches(goal, state.current_app, state.current_page, state.state_vars);
}

bool check_goal(const Goal& goal, const device::Observation& obs) {
    return goal_matches(goal, obs.app_id, obs.page_id, obs.state_snapshot);
}

void validate_goal(const Goal& goal, const std::vector<device::AppGraphPtr>& apps, const std::string& path) {
    if (goal.app_id == device::kLauncherAppId) {
        if (goal.page_id && *goal.page_id != device::kLauncherPageId) {
            throw ValidationError(path + ".page", "the launcher only has page 'home'");
        }
        return;
    }
    for (const auto& a : apps) {
        if (a->app_id != goal.app_id) continue;
        if (goal.page_id && !a->page(*goal.page_id)) {
            throw ValidationError(path + ".page", "app '" + goal.app_id + "' has no page '" + *goal.page_id + "'");
        }
        return;
    }
    throw ValidationError(path + ".app", "unknown app '" + goal.app_id + "'");
}

void validate_suite(const Suite& suite, const std::vector<device::AppGraphPtr>& apps) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < suite.tasks.size(); ++i) {
        const auto& t = suite.tasks[i];
        auto path = "tasks[" + std::to_string(i) + "]";
        if (t.id.empty()) throw ValidationError(path + ".id", "must not be empty");
        if (!ids.insert(t.id).second) throw ValidationError(path + ".id", "duplicate task id '" + t.id + "'");
        if (t.text.empty()) throw ValidationError(path + ".text", "must not be empty");
        if (!is_difficulty(t.difficulty)) {
            throw ValidationError(path + ".difficulty", "expected easy, medium, hard, level1, level2 or level3");
        }
        if (t.max_steps < 1) throw ValidationError(path + ".max_steps", "must be at least 1");
        validate_goal(t.goal, apps, path + ".goal");
        if (t.start_app) {
            bool found = false;
            for (const auto& a : apps) found = found || a->app_id == *t.start_app;
            if (!found) throw ValidationError(path + ".start_app", "unknown app '" + *t.start_app + "'");
        }
    }
}

Suite parse_suite(const std::string& yaml_text, const std::string& base_dir) {
    fs::path base(base_dir);
    auto doc = yaml::load(yaml_text, "task suite");
    yaml::Fields f(doc, "");
    Suite s;
    s.name = f.str("name");
    s.apps_dir = resolve(base, f.str("apps_dir", ""));
    s.memory_seed = resolve(base, f.str("memory", ""));
    auto tasks = f.list("tasks", true);
    f.finish();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        yaml::Fields tf(tasks[i], f.item_path("tasks", i));
        TaskSpec t;
        t.id = tf.str("id");
        t.text = tf.str("text");
        t.difficulty = tf.str("difficulty");
        if (!is_difficulty(t.difficulty)) tf.fail("difficulty", "expected easy, medium, hard, level1, level2 or level3");
        t.max_steps = tf.integer("max_steps", 30);
        t.apps_hint = tf.str_list("apps_hint");
        t.start_app = tf.opt_str("start_app");
        t.script = resolve(base, tf.str("script", ""));
        auto goal = tf.map("goal");
        if (!goal) tf.fail("goal", "is required");
        yaml::Fields gf(*goal, tf.child_path("goal"));
        t.goal.app_id = gf.str("app");
        t.goal.page_id = gf.opt_str("page");
        t.goal.state = gf.str_map("state");
        gf.finish();
        tf.finish();
        s.tasks.push_back(std::move(t));
    }
    return s;
}

Suite load_suite(const std::string& path) {
    return parse_suite(io::read_file(path), fs::path(path).parent_path().string());
}

} // namespace trailmap::bench
