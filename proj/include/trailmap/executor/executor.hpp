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
#include <optional>
#include <string>
#include <vector>

#include "trailmap/device/environment.hpp"
#include "trailmap/device/trajectory.hpp"
#include "trailmap/llm/gateway.hpp"
#include "trailmap/planner/plan.hpp"

namespace trailmap::executor {

enum class JudgeStatus { succeeded, failed, unclear };

std::string_view to_string(JudgeStatus s);
std::optional<JudgeStatus> parse_status(std::string_view s);

struct JudgeVerdict {
    std::string evaluation;  // E
    std::string progress;    // P
    std::string suggestion;  // A+
    JudgeStatus status = JudgeStatus::unclear;
    bool parse_failed = false;

    // The neutral verdict handed to the Decision-maker when the Judge is off.
    bool empty() const { return evaluation.empty() && progress.empty() && suggestion.empty(); }
};

struct RecordedInfo {
    std::string key;
    std::string value;
    int step = 0;
};

struct TurnRecord {
    int step = 0;     // 1-based across the episode
    int segment = 0;  // index into the fine plan
    std::string thought;
    std::optional<device::Action> action;  // empty for an unusable decision
    std::string action_text;               // formatted action, or the raw ACTION field
    std::string outcome;                   // "ok", the rejection message, or the decision error
    std::optional<JudgeVerdict> verdict;
};

// Per-episode history shown to the Decision-maker.
class ShortTermMemory {
public:
    void add_turn(TurnRecord turn);
    TurnRecord& last_turn();
    const std::vector<TurnRecord>& turns() const { return turns_; }

    // Throws PreconditionError on an empty key. Duplicate keys are kept.
    void record_info(std::string key, std::string value, int step);
    const std::vector<RecordedInfo>& recorded_info() const { return info_; }

    // "" or "\nRecorded information:\n- key = value\n...".
    std::string render_recorded_info() const;
    // "" or "\nYour actions so far in this app:\n<step>. <action> -> <outcome>\n...".
    std::string render_history(int segment) const;

private:
    std::vector<TurnRecord> turns_;
    std::vector<RecordedInfo> info_;
};

// The segment the Decision-maker is working on.
struct SegmentContext {
    std::string task;
    const planner::AppPlan* app = nullptr;
    int segment = 0;
};

struct Decision {
    std::string thought;
    std::optional<device::Action> action;  // empty when unusable even after the re-prompt
    std::string action_text;
    std::string error;                     // why `action` is empty, or why a label was rejected
    std::vector<std::pair<std::string, std::string>> records;
};

// "" for an empty verdict, else the block quoting E, P and A+ verbatim.
std::string render_judge_feedback(const JudgeVerdict& verdict);

// "key = value" (or "key: value") lines of an optional RECORD field.
std::vector<std::pair<std::string, std::string>> parse_records(const std::string& text);

// Asks the Decision-maker for (thought, action). A response without a
// readable action, or naming a label the screen does not have, gets one
// corrective re-prompt. A label that is still unknown is returned as is (the
// environment will reject it); an action that still cannot be read leaves
// Decision::action empty. Gateway failures propagate.
Decision decide_first(const SegmentContext& ctx, const device::Observation& obs, const ShortTermMemory& stm,
                      llm::Gateway& gateway);
Decision decide_next(const SegmentContext& ctx, const device::Observation& obs, const JudgeVerdict& verdict,
                     const ShortTermMemory& stm, llm::Gateway& gateway);

// Compares the screens around one action. An unusable response after the
// re-prompt yields a sentinel verdict (parse_failed, empty suggestion,
// progress carried over). Gateway failures propagate.
JudgeVerdict judge(const SegmentContext& ctx, const device::Observation& before, const device::Observation& after,
                   const TurnRecord& turn, const std::string& progress_prev, llm::Gateway& gateway);

enum class Termination { finished, max_steps, hard_error };

std::string_view to_string(Termination t);

struct ExecutorOptions {
    int max_steps = 30;
    bool use_judge = true;
    // Success test on the latest observation. Without one, success means
    // every segment ended with finish.
    std::function<bool(const device::Observation&)> goal;
    // End the episode as soon as `goal` holds, checked before each action.
    bool stop_on_goal = false;
};

struct EpisodeResult {
    std::string task_id;
    bool success = false;
    int steps_taken = 0;  // env.step calls
    int turns = 0;        // decisions acted on, including unusable ones
    Termination termination = Termination::finished;
    std::string error;    // hard_error detail
    device::Trajectory trajectory;
    llm::Usage usage;     // calls made during execution; planning is not included
    std::vector<Duration> wall_times;  // one per env step
    ShortTermMemory stm;
    int invalid_actions = 0;
    int unusable_decisions = 0;
    int segments_finished = 0;
};

// Runs the fine plan segment by segment on an environment that has been
// reset. Per segment: decide, then repeat (env.step, judge, decide) until the
// Decision-maker finishes. A finish is never sent to the environment, the
// budget is checked before every env.step, and an unusable decision spends
// one turn of the budget without touching the device.
EpisodeResult run_episode(const planner::UserTask& task, const planner::FinePlan& plan, device::Environment& env,
                          llm::Gateway& gateway, const ExecutorOptions& options = {});

} // namespace trailmap::executor
