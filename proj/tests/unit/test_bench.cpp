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

#include "doctest.h"
#include "support.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "trailmap/bench/report.hpp"
#include "trailmap/bench/runner.hpp"
#include "trailmap/core/io.hpp"
#include "trailmap/core/text.hpp"

using namespace trailmap;
using namespace trailmap::bench;

namespace {

TaskOutcome outcome(const std::string& id, bool success, int steps, double wall, double cost) {
    TaskOutcome t;
    t.task_id = id;
    t.difficulty = "easy";
    t.success = success;
    t.status = "finished";
    t.steps = steps;
    t.wall_time_s = wall;
    t.cost_usd = cost;
    return t;
}

bool brute_force_goal(const Goal& g, const std::string& app, const std::string& page,
                      const std::map<std::string, std::string>& vars) {
    if (g.app_id != app) return false;
    if (g.page_id.has_value() && *g.page_id != page) return false;
    for (const auto& [k, v] : g.state) {
        auto it = vars.find(k);
        if (it == vars.end() || it->second != v) return false;
    }
    return true;
}

// Everything about a task outcome that must not depend on its neighbours.
std::string fingerprint(const TaskOutcome& t) {
    return fmt::format("{} {} {} {} {} {} {} {} {} {}", t.task_id, t.success, t.status, t.steps, t.turns,
                       t.usage.prompt_tokens, t.usage.completion_tokens, t.judge_calls, t.final_app, t.final_page);
}

} // namespace

TEST_CASE("success rate over two successful tasks") {
    SuiteReport r;
    r.per_task = {outcome("a", true, 2, 1.0, 0.1), outcome("b", true, 3, 2.0, 0.2)};
    compute_metrics(r);
    CHECK(r.success_rate == 1.0);
    CHECK(r.mts_seconds == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
    CHECK(r.mtc_usd == doctest::Approx(0.3 / 5.0).epsilon(1e-12));
}

TEST_CASE("mean time per step over three one-step tasks") {
    SuiteReport r;
    r.per_task = {outcome("a", true, 1, 1.0, 0), outcome("b", false, 1, 2.0, 0), outcome("c", true, 1, 3.0, 0)};
    compute_metrics(r);
    CHECK(std::abs(r.mts_seconds - 2.0) <= 1e-12);
    CHECK(std::abs(r.success_rate - 2.0 / 3.0) <= 1e-12);
}

TEST_CASE("metrics with nothing to divide by are zero") {
    SuiteReport empty;
    compute_metrics(empty);
    CHECK(empty.success_rate == 0.0);
    CHECK(empty.mts_seconds == 0.0);
    SuiteReport stepless;
    stepless.per_task = {outcome("a", false, 0, 0.0, 0.5)};
    compute_metrics(stepless);
    CHECK(stepless.mtc_usd == 0.0);
}

TEST_CASE("metric properties over random reports") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        SuiteReport r;
        int n = static_cast<int>(rng() % 20);
        long long steps = 0;
        double wall = 0, cost = 0;
        int wins = 0;
        for (int i = 0; i < n; ++i) {
            auto t = outcome("t" + std::to_string(i), rng() % 2, static_cast<int>(rng() % 10), u(rng), u(rng) / 100);
            steps += t.steps;
            wall += t.wall_time_s;
            cost += t.cost_usd;
            wins += t.success;
            r.per_task.push_back(t);
        }
        compute_metrics(r);
        CHECK(r.success_rate >= 0.0);
        CHECK(r.success_rate <= 1.0);
        CHECK(r.success_rate == (n ? static_cast<double>(wins) / n : 0.0));
        if (steps) {
            CHECK(std::abs(r.mts_seconds - wall / static_cast<double>(steps)) <= 1e-12);
            CHECK(std::abs(r.mtc_usd - cost / static_cast<double>(steps)) <= 1e-12);
        }
        auto shuffled = r;
        std::shuffle(shuffled.per_task.begin(), shuffled.per_task.end(), rng);
        compute_metrics(shuffled);
        CHECK(shuffled.success_rate == r.success_rate);
        CHECK(std::abs(shuffled.mts_seconds - r.mts_seconds) <= 1e-12);
    }
}

TEST_CASE("goal checks") {
    Goal g{"settings", std::nullopt, {{"dark_mode", "on"}}};
    CHECK_FALSE(check_goal(g, device::DeviceState{"settings", "home", {}, {{"dark_mode", "off"}}}));
    CHECK(check_goal(g, device::DeviceState{"settings", "home", {}, {{"dark_mode", "on"}}}));
    device::SimulatedDevice dev(testing::fixture_apps());
    auto launcher = dev.reset();
    CHECK(check_goal(Goal{"launcher", std::nullopt, {}}, launcher));
    CHECK(check_goal(Goal{"launcher", "home", {}}, launcher));
    CHECK_FALSE(check_goal(Goal{"settings", std::nullopt, {}}, launcher));
}

TEST_CASE("goal checks agree with a brute-force oracle") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> apps{"settings", "wechat", "launcher"};
    const std::vector<std::string> pages{"home", "display", "chats"};
    const std::vector<std::string> keys{"wifi", "dark_mode", "cart"};
    const std::vector<std::string> values{"on", "off", ""};
    for (int i = 0; i < 2000; ++i) {
        Goal g;
        g.app_id = apps[rng() % 3];
        if (rng() % 2) g.page_id = pages[rng() % 3];
        for (const auto& k : keys) {
            if (rng() % 3 == 0) g.state[k] = values[rng() % 3];
        }
        device::DeviceState s;
        s.current_app = apps[rng() % 3];
        s.current_page = pages[rng() % 3];
        for (const auto& k : keys) {
            if (rng() % 2) s.state_vars[k] = values[rng() % 3];
        }
        REQUIRE(check_goal(g, s) == brute_force_goal(g, s.current_app, s.current_page, s.state_vars));
    }
}

TEST_CASE("failure classification") {
    Goal g{"settings", std::nullopt, {}};
    auto t = outcome("x", false, 3, 0, 0);
    t.status = "planning_failed";
    CHECK(classify_failure(t, g) == ErrorTag::xml_output_error);
    t.status = "max_steps";
    t.unusable_decisions = 1;
    CHECK(classify_failure(t, g) == ErrorTag::xml_output_error);
    t.unusable_decisions = 0;
    t.invalid_actions = 2;
    CHECK(classify_failure(t, g) == ErrorTag::poor_ui_recognition);
    t.invalid_actions = 0;
    t.status = "finished";
    t.final_app = "settings";
    CHECK(classify_failure(t, g) == ErrorTag::step_omission);
    t.final_app = "wechat";
    CHECK(classify_failure(t, g) == ErrorTag::task_context_misunderstanding);
    t.status = "max_steps";
    CHECK(classify_failure(t, g) == ErrorTag::other);
    CHECK(to_string(ErrorTag::poor_ui_recognition) == "poor_ui_recognition");
}

TEST_CASE("ablation labels") {
    for (auto a : {Ablation::full, Ablation::no_memory, Ablation::no_judge, Ablation::no_memory_no_judge}) {
        CHECK(parse_ablation(label(a)) == a);
    }
    CHECK(parse_ablation("no-judge") == Ablation::no_judge);
    CHECK_FALSE(parse_ablation("none"));
    CHECK(uses_memory(Ablation::no_judge));
    CHECK_FALSE(uses_judge(Ablation::no_judge));
}

TEST_CASE("suite loading and validation") {
    auto suite = load_suite(testing::fixture("suites/en.yaml"));
    CHECK(suite.tasks.size() == 10);
    CHECK(suite.name == "fixture-en");
    auto cn = load_suite(testing::fixture("suites/cn.yaml"));
    for (const auto& t : cn.tasks) CHECK(t.difficulty.rfind("level", 0) == 0);
    auto apps = testing::fixture_apps();
    auto bad = suite;
    bad.tasks[1].id = bad.tasks[0].id;
    CHECK_THROWS_AS(validate_suite(bad, apps), ValidationError);
    bad = suite;
    bad.tasks[0].goal.page_id = "nowhere";
    CHECK_THROWS_AS(validate_suite(bad, apps), ValidationError);
    bad = suite;
    bad.tasks[0].difficulty = "trivial";
    CHECK_THROWS_AS(validate_suite(bad, apps), ValidationError);
    bad = suite;
    bad.tasks[0].max_steps = 0;
    CHECK_THROWS_AS(validate_suite(bad, apps), ValidationError);
    CHECK_THROWS_AS(parse_suite("name: x\ntasks:\n- id: a\n  bogus: 1\n"), ParseError);
}

TEST_CASE("the English fixture suite, all ablations") {
    testing::SuiteRig rig(testing::fixture("suites/en.yaml"));
    auto reports = run_ablations(rig.suite, {}, rig.handles);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].success_rate == 1.0);
    CHECK(reports[0].success_rate >= reports[1].success_rate);
    CHECK(reports[0].success_rate >= reports[2].success_rate);
    CHECK(reports[1].success_rate >= reports[3].success_rate);
    CHECK(reports[2].success_rate >= reports[3].success_rate);
    for (const auto& r : {reports[2], reports[3]}) {
        for (const auto& t : r.per_task) CHECK(t.judge_calls == 0);
    }
    for (const auto& t : reports[0].per_task) {
        REQUIRE(t.transcript);
        CHECK(t.usage.prompt_tokens > 0);
        CHECK(t.cost_usd > 0);
        CHECK(t.error_tag.has_value() == !t.success);
    }
    CHECK(testing::golden_matches("bench_en_ablations.txt", render_reports(reports, ReportFormat::text)));
}

TEST_CASE("task outcomes do not depend on suite order or parallelism") {
    testing::SuiteRig rig(testing::fixture("suites/en.yaml"));
    auto base = run_suite(rig.suite, {}, rig.handles);
    std::map<std::string, std::string> expected;
    for (const auto& t : base.per_task) expected[t.task_id] = fingerprint(t);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 3; ++trial) {
        auto shuffled = rig.suite;
        std::shuffle(shuffled.tasks.begin(), shuffled.tasks.end(), rng);
        SuiteConfig cfg;
        cfg.parallelism = 1 + trial * 2;
        auto r = run_suite(shuffled, cfg, rig.handles);
        for (std::size_t i = 0; i < r.per_task.size(); ++i) {
            CHECK(r.per_task[i].task_id == shuffled.tasks[i].id);
            CHECK(fingerprint(r.per_task[i]) == expected[r.per_task[i].task_id]);
        }
        CHECK(r.success_rate == base.success_rate);
    }
}

TEST_CASE("a broken task does not stop the suite") {
    testing::SuiteRig rig(testing::fixture("suites/en.yaml"));
    testing::TempDir dir;
    io::write_file(dir.file("garbled.yaml"),
                   "name: garbled\nentries:\n- role: planner\n  response: I would rather not.\n  repeat: true\n");
    auto suite = rig.suite;
    suite.tasks[0].script = dir.file("garbled.yaml");
    suite.tasks[1].script = "/nonexistent/script.yaml";
    auto r = run_suite(suite, {}, rig.handles);
    REQUIRE(r.per_task.size() == 10);
    CHECK_FALSE(r.per_task[0].success);
    CHECK(r.per_task[0].status == "planning_failed");
    CHECK(r.per_task[0].error_tag == ErrorTag::xml_output_error);
    CHECK(r.per_task[1].status == "hard_error");
    CHECK(r.per_task[1].error_tag == ErrorTag::other);
    CHECK(r.per_task[2].success);
    suite.tasks[1].script = testing::fixture("scripts/policy.yaml");
    auto outage = run_suite(suite, {}, rig.handles);
    CHECK(outage.per_task[1].status == "hard_error");
    CHECK(outage.per_task[1].error.find("no script entry") != std::string::npos);
    auto no_backend = rig.handles;
    no_backend.backend = nullptr;
    CHECK_THROWS_AS(run_suite(suite, {}, no_backend), PreconditionError);
}

TEST_CASE("report rendering") {
    SuiteReport empty;
    empty.suite = "empty";
    CHECK(render_report(empty, ReportFormat::csv) == text::join(csv_columns(), ",") + "\n");
    auto jsonl = render_report(empty, ReportFormat::jsonl);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 1);
    CHECK(jsonl.find("\"type\":\"summary\"") != std::string::npos);

    SuiteReport r;
    r.suite = "demo, \"quoted\"";
    r.per_task = {outcome("a", true, 2, 0.5, 0.001), outcome("b", false, 1, 0.25, 0.002)};
    r.per_task[1].error_tag = ErrorTag::step_omission;
    r.per_task[1].status = "max_steps";
    compute_metrics(r);
    CHECK(testing::golden_matches("report_demo.txt", render_report(r, ReportFormat::text)));
    CHECK(testing::golden_matches("report_demo.csv", render_report(r, ReportFormat::csv)));
    CHECK(testing::golden_matches("report_demo.jsonl", render_report(r, ReportFormat::jsonl)));

    testing::TempDir dir;
    emit_report(r, dir.file("r.csv"), "csv");
    CHECK(io::read_file(dir.file("r.csv")) == render_report(r, ReportFormat::csv));
    CHECK_THROWS_AS(emit_report(r, dir.file("r.xml"), "xml"), PreconditionError);
    CHECK(parse_report_format("json-lines") == ReportFormat::jsonl);
}
