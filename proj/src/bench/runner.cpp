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

#include "trailmap/bench/runner.hpp"

#include <atomic>
#include <thread>

#include <spdlog/spdlog.h>

#include "trailmap/device/simulator.hpp"
#include "trailmap/memory/retriever.hpp"

namespace trailmap::bench {

std::string_view label(Ablation a) {
    switch (a) {
    case Ablation::full: return "full";
    case Ablation::no_memory: return "w/o M";
    case Ablation::no_judge: return "w/o J";
    case Ablation::no_memory_no_judge: return "w/o M & J";
    }
    return "full";
}

std::optional<Ablation> parse_ablation(std::string_view s) {
    for (auto a : {Ablation::full, Ablation::no_memory, Ablation::no_judge, Ablation::no_memory_no_judge}) {
        if (label(a) == s) return a;
    }
    if (s == "no-memory") return Ablation::no_memory;
    if (s == "no-judge") return Ablation::no_judge;
    if (s == "no-memory-no-judge") return Ablation::no_memory_no_judge;
    return std::nullopt;
}

std::string_view to_string(ErrorTag t) {
    switch (t) {
    case ErrorTag::poor_ui_recognition: return "poor_ui_recognition";
    case ErrorTag::task_context_misunderstanding: return "task_context_misunderstanding";
    case ErrorTag::xml_output_error: return "xml_output_error";
    case ErrorTag::step_omission: return "step_omission";
    case ErrorTag::other: return "other";
    }
    return "other";
}

void compute_metrics(SuiteReport& report) {
    std::size_t successes = 0;
    long long steps = 0;
    double wall = 0.0;
    double cost = 0.0;
    for (const auto& t : report.per_task) {
        successes += t.success ? 1 : 0;
        steps += t.steps;
        wall += t.wall_time_s;
        cost += t.cost_usd;
    }
    report.success_rate =
        report.per_task.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(report.per_task.size());
    report.mts_seconds = steps == 0 ? 0.0 : wall / static_cast<double>(steps);
    report.mtc_usd = steps == 0 ? 0.0 : cost / static_cast<double>(steps);
}

ErrorTag classify_failure(const TaskOutcome& o, const Goal& goal) {
    if (o.status == "planning_failed" || o.unusable_decisions > 0) return ErrorTag::xml_output_error;
    if (o.invalid_actions > 0) return ErrorTag::poor_ui_recognition;
    if (o.status == "finished") {
        return o.final_app == goal.app_id ? ErrorTag::step_omission : ErrorTag::task_context_misunderstanding;
    }
    return ErrorTag::other;
}

TaskOutcome run_task(const TaskSpec& task, const SuiteConfig& config, const SuiteHandles& handles) {
    TaskOutcome out;
    out.task_id = task.id;
    out.difficulty = task.difficulty;

    device::SimulatedDevice device(handles.apps);
    auto start = device.reset(task.start_app);
    out.final_app = start.app_id;
    out.final_page = start.page_id;

    auto clock = handles.clock ? handles.clock() : std::make_shared<SteadyClock>();
    llm::Gateway gateway(handles.backend(task), clock);
    planner::UserTask user_task{task.id, task.text};

    memory::EmptyRetriever empty;
    std::optional<memory::StoreRetriever> store_retriever;
    const memory::PageRetriever* retriever = &empty;
    if (uses_memory(config.ablation) && handles.store && handles.embedder) {
        store_retriever.emplace(*handles.store, *handles.embedder);
        retriever = &*store_retriever;
    }

    try {
        planner::PlanOptions plan_options{uses_memory(config.ablation), config.retrieval};
        out.plan = planner::plan_task(user_task, device.installed_apps(), *retriever, gateway, plan_options);

        executor::ExecutorOptions exec;
        exec.max_steps = config.max_steps.value_or(task.max_steps);
        exec.use_judge = uses_judge(config.ablation);
        exec.goal = [&task](const device::Observation& obs) { return check_goal(task.goal, obs); };
        exec.stop_on_goal = config.stop_on_goal;
        auto episode = executor::run_episode(user_task, out.plan->fine, device, gateway, exec);

        out.success = episode.success;
        out.status = std::string(executor::to_string(episode.termination));
        out.steps = episode.steps_taken;
        out.turns = episode.turns;
        for (auto d : episode.wall_times) out.wall_time_s += to_seconds(d);
        out.invalid_actions = episode.invalid_actions;
        out.unusable_decisions = episode.unusable_decisions;
        out.error = episode.error;
    } catch (const planner::PlanningError& e) {
        out.status = "planning_failed";
        out.error = e.what();
    } catch (const Error& e) {
        out.status = "hard_error";
        out.error = e.what();
    }
    if (!out.error.empty()) spdlog::warn("task {}: {}", task.id, out.error);

    const auto obs = device.observe();
    out.final_app = obs.app_id;
    out.final_page = obs.page_id;
    out.usage = gateway.total_usage();
    out.cost_usd = accumulate_cost(gateway.usages(), config.cost);
    out.judge_calls = gateway.calls(llm::Role::judge);
    if (!out.success) out.error_tag = classify_failure(out, task.goal);
    if (config.keep_transcripts) out.transcript = std::make_shared<const llm::Transcript>(gateway.transcript());
    return out;
}

SuiteReport run_suite(const Suite& suite, const SuiteConfig& config, const SuiteHandles& handles) {
    if (!handles.backend) throw PreconditionError("suite run needs a backend factory");
    config.retrieval.validate();
    config.cost.validate();
    validate_suite(suite, handles.apps);

    SuiteReport report;
    report.suite = suite.name;
    report.config = config.ablation;
    report.notes = config.notes;
    report.per_task.resize(suite.tasks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < suite.tasks.size(); i = next++) {
            const auto& task = suite.tasks[i];
            try {
                report.per_task[i] = run_task(task, config, handles);
            } catch (const std::exception& e) {
                TaskOutcome failed;
                failed.task_id = task.id;
                failed.difficulty = task.difficulty;
                failed.status = "hard_error";
                failed.error = e.what();
                failed.error_tag = ErrorTag::other;
                report.per_task[i] = std::move(failed);
                spdlog::error("task {}: {}", task.id, e.what());
            }
        }
    };
    auto n = static_cast<std::size_t>(std::max(1, config.parallelism));
    n = std::min(n, std::max<std::size_t>(1, suite.tasks.size()));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < n; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    compute_metrics(report);
    return report;
}

std::vector<SuiteReport> run_ablations(const Suite& suite, const SuiteConfig& base, const SuiteHandles& handles) {
    std::vector<SuiteReport> out;
    for (auto a : {Ablation::full, Ablation::no_memory, Ablation::no_judge, Ablation::no_memory_no_judge}) {
        auto cfg = base;
        cfg.ablation = a;
        out.push_back(run_suite(suite, cfg, handles));
    }
    return out;
}

} // namespace trailmap::bench
