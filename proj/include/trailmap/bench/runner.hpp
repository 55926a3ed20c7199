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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trailmap/bench/suite.hpp"
#include "trailmap/executor/executor.hpp"
#include "trailmap/llm/cost.hpp"
#include "trailmap/memory/store.hpp"

namespace trailmap::bench {

enum class Ablation { full, no_memory, no_judge, no_memory_no_judge };

// "full", "w/o M", "w/o J", "w/o M & J".
std::string_view label(Ablation a);
std::optional<Ablation> parse_ablation(std::string_view s);
inline bool uses_memory(Ablation a) { return a == Ablation::full || a == Ablation::no_judge; }
inline bool uses_judge(Ablation a) { return a == Ablation::full || a == Ablation::no_memory; }

enum class ErrorTag { poor_ui_recognition, task_context_misunderstanding, xml_output_error, step_omission, other };

std::string_view to_string(ErrorTag t);

struct TaskOutcome {
    std::string task_id;
    std::string difficulty;
    bool success = false;
    std::string status;  // finished, max_steps, hard_error or planning_failed
    int steps = 0;       // env.step calls
    int turns = 0;
    double wall_time_s = 0.0;  // sum of per-step wall times
    llm::Usage usage;          // planning and execution
    double cost_usd = 0.0;
    int judge_calls = 0;
    int invalid_actions = 0;
    int unusable_decisions = 0;
    std::optional<ErrorTag> error_tag;  // failed tasks only
    std::string error;
    std::string final_app;
    std::string final_page;
    std::shared_ptr<const llm::Transcript> transcript;
    std::optional<planner::PlanResult> plan;
};

struct SuiteReport {
    std::string suite;
    Ablation config = Ablation::full;
    std::vector<TaskOutcome> per_task;
    double success_rate = 0.0;
    double mts_seconds = 0.0;  // wall seconds per env step
    double mtc_usd = 0.0;      // US dollars per env step
    std::vector<std::string> notes;
};

// SR = successes / tasks; MTS = total step wall time / total steps;
// MTC = total cost / total steps. Each is 0 when its denominator is 0.
void compute_metrics(SuiteReport& report);

// Heuristic category for a failed task: unreadable model output first, then
// rejected actions, then finishing in the wrong app or short of the goal.
ErrorTag classify_failure(const TaskOutcome& outcome, const Goal& goal);

// Everything a run needs besides the tasks.
struct SuiteHandles {
    std::vector<device::AppGraphPtr> apps;
    // Backend for one task; called once per task so scripted runs get a
    // fresh book each.
    std::function<std::shared_ptr<llm::ChatBackend>(const TaskSpec&)> backend;
    const memory::MemoryStore* store = nullptr;  // null: no memory at all
    const memory::Embedder* embedder = nullptr;
    std::function<std::shared_ptr<Clock>()> clock = [] { return std::make_shared<SteadyClock>(); };
};

struct SuiteConfig {
    Ablation ablation = Ablation::full;
    std::optional<int> max_steps;  // overrides every task's own limit
    memory::RetrievalConfig retrieval;
    llm::CostModel cost{0.0025, 0.01};
    int parallelism = 1;
    bool stop_on_goal = false;
    bool keep_transcripts = true;
    std::vector<std::string> notes;  // copied into the report
};

// Plans and executes one task on a fresh device.
TaskOutcome run_task(const TaskSpec& task, const SuiteConfig& config, const SuiteHandles& handles);

// Validates the suite against the apps, then runs every task (concurrently
// up to config.parallelism). Per-task failures never stop the suite.
SuiteReport run_suite(const Suite& suite, const SuiteConfig& config, const SuiteHandles& handles);

// The four ablation configurations in order full, w/o M, w/o J, w/o M & J.
std::vector<SuiteReport> run_ablations(const Suite& suite, const SuiteConfig& base, const SuiteHandles& handles);

} // namespace trailmap::bench
