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

#include "trailmap/executor/executor.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "trailmap/core/text.hpp"
#include "trailmap/ui/som.hpp"

namespace trailmap::executor {

namespace {

std::string numbered_steps(const planner::AppPlan& app) {
    std::string out;
    for (std::size_t i = 0; i < app.steps.size(); ++i) out += fmt::format("{}. {}\n", i + 1, app.steps[i]);
    return out;
}

std::string screen_name(const device::Observation& obs) { return obs.app_id + " / " + obs.page_id; }

std::string first_line(const std::string& s) {
    for (const auto& line : text::split_lines(s)) {
        auto t = text::trim(line);
        if (!t.empty()) return t;
    }
    return {};
}

const SegmentContext& checked(const SegmentContext& ctx) {
    if (!ctx.app) throw PreconditionError("segment context has no app plan");
    return ctx;
}

} // namespace

std::string_view to_string(JudgeStatus s) {
    switch (s) {
    case JudgeStatus::succeeded: return "succeeded";
    case JudgeStatus::failed: return "failed";
    case JudgeStatus::unclear: return "unclear";
    }
    return "unclear";
}

std::optional<JudgeStatus> parse_status(std::string_view s) {
    auto t = text::to_lower(text::trim(s));
    while (!t.empty() && (t.back() == '.' || t.back() == '!')) t.pop_back();
    if (t == "succeeded" || t == "success" || t == "successful") return JudgeStatus::succeeded;
    if (t == "failed" || t == "failure") return JudgeStatus::failed;
    if (t == "unclear" || t == "unknown") return JudgeStatus::unclear;
    return std::nullopt;
}

std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::finished: return "finished";
    case Termination::max_steps: return "max_steps";
    case Termination::hard_error: return "hard_error";
    }
    return "hard_error";
}

void ShortTermMemory::add_turn(TurnRecord turn) {
    if (!turns_.empty() && turn.step <= turns_.back().step) {
        throw PreconditionError("turn steps must increase");
    }
    turns_.push_back(std::move(turn));
}

TurnRecord& ShortTermMemory::last_turn() {
    if (turns_.empty()) throw PreconditionError("no turns recorded");
    return turns_.back();
}

void ShortTermMemory::record_info(std::string key, std::string value, int step) {
    if (text::trim(key).empty()) throw PreconditionError("recorded information needs a key");
    info_.push_back({std::move(key), std::move(value), step});
}

std::string ShortTermMemory::render_recorded_info() const {
    if (info_.empty()) return "";
    std::string out = "\nRecorded information:\n";
    for (const auto& i : info_) out += "- " + i.key + " = " + i.value + "\n";
    return out;
}

std::string ShortTermMemory::render_history(int segment) const {
    std::string out;
    for (const auto& t : turns_) {
        if (t.segment != segment) continue;
        out += fmt::format("{}. {} -> {}\n", t.step, t.action_text, t.outcome);
    }
    return out.empty() ? out : "\nYour actions so far in this app:\n" + out;
}

std::string render_judge_feedback(const JudgeVerdict& verdict) {
    if (verdict.empty()) return "";
    return "\nJudge feedback on your previous action:\nEVALUATION: " + verdict.evaluation +
           "\nPROGRESS: " + verdict.progress + "\nSUGGESTION: " + verdict.suggestion + "\n";
}

std::vector<std::pair<std::string, std::string>> parse_records(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& raw : text::split_lines(text)) {
        auto line = text::strip_list_marker(raw);
        if (line.empty() || text::iequals(line, "none") || text::iequals(line, "none.")) continue;
        auto sep = line.find('=');
        if (sep == std::string::npos) sep = line.find(':');
        if (sep == std::string::npos) continue;
        auto key = text::trim(std::string_view(line).substr(0, sep));
        auto value = text::trim(std::string_view(line).substr(sep + 1));
        if (!key.empty()) out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

Decision decide_next(const SegmentContext& ctx, const device::Observation& obs, const JudgeVerdict& verdict,
                     const ShortTermMemory& stm, llm::Gateway& gateway) {
    checked(ctx);
    llm::Bindings b{
        {"task", ctx.task},
        {"app_name", ctx.app->app_name},
        {"steps", numbered_steps(*ctx.app)},
        {"recorded_info", stm.render_recorded_info()},
        {"history", stm.render_history(ctx.segment)},
        {"judge_feedback", render_judge_feedback(verdict)},
        {"screen", screen_name(obs)},
        {"som_text", ui::render_som_text(obs.som, obs.tree)},
    };
    auto validate = [&](const llm::StructuredFields& f) {
        device::Action a;
        try {
            a = device::parse_action(first_line(f.at("ACTION")));
        } catch (const ParseError& e) {
            throw llm::ResponseError(std::string("ACTION is not a valid action: ") + e.what(), "");
        }
        if (auto label = device::action_label(a); label && !obs.som.find(*label)) {
            throw llm::ResponseError(fmt::format("ACTION uses label {}, but the screen only has labels 1..{}", *label,
                                                 obs.som.size()),
                                     "");
        }
    };

    const auto& t = llm::templates::decision_maker();
    Decision d;
    llm::StructuredFields fields;
    try {
        fields = gateway.ask(t, b, validate).fields;
    } catch (const llm::ResponseError& e) {
        d.error = e.what();
        try {
            fields = llm::parse_structured(e.raw(), {}, {"THOUGHT", "ACTION", "RECORD"});
        } catch (const llm::ResponseError&) {
        }
        d.thought = fields.count("THOUGHT") ? fields.at("THOUGHT") : "";
        d.action_text = fields.count("ACTION") ? first_line(fields.at("ACTION")) : "";
        try {
            if (!d.action_text.empty()) d.action = device::parse_action(d.action_text);
        } catch (const ParseError&) {
        }
        if (d.action) d.action_text = device::format_action(*d.action);
        if (fields.count("RECORD")) d.records = parse_records(fields.at("RECORD"));
        return d;
    }
    d.thought = fields.at("THOUGHT");
    d.action = device::parse_action(first_line(fields.at("ACTION")));
    d.action_text = device::format_action(*d.action);
    if (fields.count("RECORD")) d.records = parse_records(fields.at("RECORD"));
    return d;
}

Decision decide_first(const SegmentContext& ctx, const device::Observation& obs, const ShortTermMemory& stm,
                      llm::Gateway& gateway) {
    return decide_next(ctx, obs, JudgeVerdict{}, stm, gateway);
}

JudgeVerdict judge(const SegmentContext& ctx, const device::Observation& before, const device::Observation& after,
                   const TurnRecord& turn, const std::string& progress_prev, llm::Gateway& gateway) {
    checked(ctx);
    llm::Bindings b{
        {"task", ctx.task},
        {"steps", numbered_steps(*ctx.app)},
        {"progress_prev", progress_prev},
        {"thought", turn.thought},
        {"action", turn.action_text},
        {"outcome", turn.outcome},
        {"before_screen", screen_name(before)},
        {"before", ui::render_outline(before.tree)},
        {"after_screen", screen_name(after)},
        {"after", ui::render_outline(after.tree)},
    };
    auto validate = [](const llm::StructuredFields& f) {
        if (!parse_status(f.at("STATUS"))) {
            throw llm::ResponseError("STATUS must be succeeded, failed or unclear, not '" + f.at("STATUS") + "'", "");
        }
    };
    try {
        auto r = gateway.ask(llm::templates::judge(), b, validate);
        return JudgeVerdict{r.fields.at("EVALUATION"), r.fields.at("PROGRESS"), r.fields.at("SUGGESTION"),
                            *parse_status(r.fields.at("STATUS")), false};
    } catch (const llm::ResponseError& e) {
        spdlog::warn("judge response unusable, continuing without advice: {}", e.what());
        return JudgeVerdict{"The judge's response could not be read.", progress_prev, "", JudgeStatus::unclear, true};
    }
}

EpisodeResult run_episode(const planner::UserTask& task, const planner::FinePlan& plan, device::Environment& env,
                          llm::Gateway& gateway, const ExecutorOptions& options) {
    if (options.max_steps < 1) throw PreconditionError("max_steps must be at least 1");
    if (plan.per_app.empty()) throw PreconditionError("fine plan has no app segments");

    EpisodeResult result;
    result.task_id = task.id;
    result.trajectory.task = task.text;
    result.trajectory.app_id = plan.per_app.front().app_id;
    auto& stm = result.stm;
    auto& clock = gateway.clock();
    const auto usage_before = gateway.total_usage();

    device::Observation obs = env.observe();
    result.trajectory.start(obs);
    bool all_finished = true;
    bool goal_stop = false;

    auto apply_records = [&](const Decision& d, int step) {
        for (const auto& [k, v] : d.records) stm.record_info(k, v, step);
    };

    try {
        for (std::size_t seg = 0; seg < plan.per_app.size() && !goal_stop; ++seg) {
            SegmentContext ctx{task.text, &plan.per_app[seg], static_cast<int>(seg)};
            gateway.transcript().add(llm::MarkerEvent{"segment", ctx.app->app_id});
            const bool last_segment = seg + 1 == plan.per_app.size();
            auto mark = clock.now();

            Decision d = decide_first(ctx, obs, stm, gateway);
            apply_records(d, result.turns + 1);
            std::string progress;
            bool finished = false;
            while (true) {
                if (d.action && device::is_finish(*d.action)) {
                    finished = true;
                    break;
                }
                if (options.stop_on_goal && last_segment && options.goal && options.goal(obs)) {
                    goal_stop = true;
                    break;
                }
                if (result.turns >= options.max_steps) {
                    result.termination = Termination::max_steps;
                    break;
                }
                ++result.turns;

                TurnRecord turn;
                turn.step = result.turns;
                turn.segment = ctx.segment;
                turn.thought = d.thought;
                turn.action = d.action;
                turn.action_text = d.action_text.empty() ? std::string("(no action)") : d.action_text;

                if (!d.action) {
                    ++result.unusable_decisions;
                    turn.outcome = "unusable decision: " + d.error;
                    stm.add_turn(std::move(turn));
                    d = decide_next(ctx, obs, JudgeVerdict{}, stm, gateway);
                    apply_records(d, result.turns + 1);
                    continue;
                }

                const device::Observation before = obs;
                auto step = env.step(*d.action);
                ++result.steps_taken;
                obs = step.observation;
                result.trajectory.append(*d.action, obs);
                const bool valid = step.outcome == device::StepOutcome::ok;
                if (!valid) ++result.invalid_actions;
                turn.outcome = valid ? "ok" : step.message;
                gateway.transcript().add(llm::EnvEvent{turn.action_text, valid, step.message, obs.app_id,
                                                       obs.page_id, obs.screenshot_ref});

                JudgeVerdict verdict;
                if (options.use_judge) {
                    verdict = judge(ctx, before, obs, turn, progress, gateway);
                    progress = verdict.progress;
                    turn.verdict = verdict;
                }
                stm.add_turn(std::move(turn));
                auto now = clock.now();
                result.wall_times.push_back(now - mark);
                mark = now;

                if (options.stop_on_goal && last_segment && options.goal && options.goal(obs)) {
                    goal_stop = true;
                    break;
                }
                d = decide_next(ctx, obs, verdict, stm, gateway);
                apply_records(d, result.turns + 1);
            }
            if (finished) {
                ++result.segments_finished;
            } else {
                all_finished = false;
            }
            if (result.termination == Termination::max_steps) break;
        }
    } catch (const llm::GatewayError& e) {
        result.termination = Termination::hard_error;
        result.error = e.what();
        all_finished = false;
        spdlog::error("episode {} aborted: {}", task.id, e.what());
    }

    auto usage = gateway.total_usage();
    result.usage = {usage.prompt_tokens - usage_before.prompt_tokens,
                    usage.completion_tokens - usage_before.completion_tokens};
    if (options.goal) {
        result.success = result.termination != Termination::hard_error && options.goal(obs);
    } else {
        result.success = result.termination == Termination::finished && all_finished;
    }
    result.trajectory.success = result.success;
    return result;
}

} // namespace trailmap::executor
