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

#include "trailmap/core/error.hpp"
#include "trailmap/device/environment.hpp"
#include "trailmap/llm/gateway.hpp"
#include "trailmap/memory/retriever.hpp"

namespace trailmap::planner {

struct UserTask {
    std::string id;
    std::string text;
};

struct Subtask {
    int index = 0;  // 1-based position in the coarse plan
    std::string text;

    bool operator==(const Subtask&) const = default;
};

struct CoarsePlan {
    std::vector<Subtask> subtasks;
};

struct Assignment {
    std::string app_id;
    std::string app_name;
    std::vector<Subtask> subtasks;
};

struct AppSchedule {
    std::vector<Assignment> assignments;
};

struct AppPlan {
    std::string app_id;
    std::string app_name;
    std::vector<Subtask> subtasks;
    std::vector<std::string> steps;
    std::vector<memory::ScoredChunk> retrieved;  // exactly what the prompt showed, in order

    std::vector<std::string> retrieved_ids() const;
};

struct FinePlan {
    std::vector<AppPlan> per_app;
};

struct PlanResult {
    UserTask task;
    CoarsePlan coarse;
    AppSchedule schedule;
    FinePlan fine;
};

// A planning stage produced nothing usable. `raw` is the last response.
class PlanningError : public Error {
public:
    PlanningError(const std::string& message, std::string raw = {}) : Error(message), raw_(std::move(raw)) {}

    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

class SchedulingError : public PlanningError {
public:
    using PlanningError::PlanningError;
};

// Numbered or bulleted lines to their texts, markers stripped.
std::vector<std::string> parse_list(const std::string& text);

CoarsePlan plan_coarse(const UserTask& task, llm::Gateway& gateway);

// Assigns every subtask to an installed app. The scheduler answers with
// "N -> app" lines naming an app id or name. An unknown app earns one
// corrective re-prompt; a subtask left out, assigned twice or invented is a
// SchedulingError straight away. Consecutive subtasks on the same app merge.
AppSchedule schedule(const CoarsePlan& plan, const std::vector<device::InstalledApp>& installed,
                     llm::Gateway& gateway);

// The retrieved-pages prompt section; empty when there is nothing to show.
std::string render_retrieved_pages(const std::vector<memory::ScoredChunk>& chunks);

// One retrieval and one fine-planner call per assignment, in schedule order.
FinePlan plan_fine(const AppSchedule& schedule, const memory::PageRetriever& retriever,
                   const memory::RetrievalConfig& cfg, llm::Gateway& gateway);
FinePlan plan_fine(const AppSchedule& schedule, const memory::MemoryStore& store, const memory::RetrievalConfig& cfg,
                   llm::Gateway& gateway, const memory::Embedder& embedder);

struct PlanOptions {
    bool use_memory = true;
    memory::RetrievalConfig retrieval;
};

PlanResult plan_task(const UserTask& task, const std::vector<device::InstalledApp>& installed,
                     const memory::PageRetriever& retriever, llm::Gateway& gateway, const PlanOptions& options = {});
PlanResult plan_task(const UserTask& task, const std::vector<device::InstalledApp>& installed,
                     const memory::MemoryStore& store, const memory::RetrievalConfig& cfg, llm::Gateway& gateway,
                     const memory::Embedder& embedder, bool use_memory = true);

// Human-readable report:
//   task: <id>
//   text: <text>
//   coarse:
//     1. <subtask>
//   schedule:
//     - <app_id> (<app_name>): subtasks 1, 2
//   fine:
//     - <app_id> (<app_name>)
//       retrieved: <chunk_id> <score>, ... | none
//       steps:
//         1. <step>
std::string render_plan_report(const PlanResult& plan);

} // namespace trailmap::planner
