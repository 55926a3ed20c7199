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

#include "trailmap/planner/plan.hpp"

#include <map>
#include <regex>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "trailmap/core/text.hpp"

namespace trailmap::planner {

namespace {

std::string numbered(const std::vector<Subtask>& subtasks) {
    std::string out;
    for (const auto& s : subtasks) out += std::to_string(s.index) + ". " + s.text + "\n";
    return out;
}

std::string strip_wrapping(std::string s) {
    s = text::trim(s);
    if (!s.empty() && s.back() == '.') s = text::trim(std::string_view(s).substr(0, s.size() - 1));
    while (s.size() >= 2 && std::string_view("\"'`[(<").find(s.front()) != std::string_view::npos &&
           std::string_view("\"'`])>").find(s.back()) != std::string_view::npos) {
        s = text::trim(std::string_view(s).substr(1, s.size() - 2));
    }
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

const device::InstalledApp* find_app(const std::vector<device::InstalledApp>& installed, const std::string& name) {
    for (const auto& a : installed) {
        if (a.app_id == name) return &a;
    }
    for (const auto& a : installed) {
        if (text::iequals(a.app_name, name) || text::iequals(a.app_id, name)) return &a;
    }
    return nullptr;
}

} // namespace

std::vector<std::string> AppPlan::retrieved_ids() const {
    std::vector<std::string> ids;
    for (const auto& r : retrieved) ids.push_back(r.chunk.chunk_id);
    return ids;
}

std::vector<std::string> parse_list(const std::string& text) {
    std::vector<std::string> items;
    for (const auto& line : text::split_lines(text)) {
        auto item = text::strip_list_marker(line);
        if (!item.empty()) items.push_back(std::move(item));
    }
    return items;
}

CoarsePlan plan_coarse(const UserTask& task, llm::Gateway& gateway) {
    if (text::trim(task.text).empty()) throw PreconditionError("task text must not be empty");
    auto validate = [](const llm::StructuredFields& f) {
        if (parse_list(f.at("SUBTASKS")).empty()) throw llm::ResponseError("SUBTASKS lists no subtasks", "");
    };
    llm::AskResult r;
    try {
        r = gateway.ask(llm::templates::planner_coarse(), {{"task", task.text}}, validate);
    } catch (const llm::ResponseError& e) {
        throw PlanningError(std::string("coarse planning failed: ") + e.what(), e.raw());
    }
    CoarsePlan plan;
    int index = 1;
    for (auto& s : parse_list(r.fields.at("SUBTASKS"))) plan.subtasks.push_back({index++, std::move(s)});
    return plan;
}

AppSchedule schedule(const CoarsePlan& plan, const std::vector<device::InstalledApp>& installed,
                     llm::Gateway& gateway) {
    if (installed.empty()) throw PreconditionError("scheduling needs at least one installed app");
    if (plan.subtasks.empty()) throw PreconditionError("coarse plan has no subtasks");

    std::string apps;
    for (const auto& a : installed) apps += a.app_id + ": " + a.app_name + "\n";
    std::string valid_ids;
    for (const auto& a : installed) valid_ids += (valid_ids.empty() ? "" : ", ") + a.app_id;

    static const std::regex line_re(R"(^\s*(?:subtask\s*)?(\d{1,9})\s*[.:)]?\s*(?:->|=>|:|=|-)\s*(.+?)\s*$)",
                                    std::regex::icase);
    std::map<int, const device::InstalledApp*> chosen;
    auto validate = [&](const llm::StructuredFields& f) {
        chosen.clear();
        for (const auto& line : text::split_lines(f.at("ASSIGNMENTS"))) {
            if (text::trim(line).empty()) continue;
            std::smatch m;
            if (!std::regex_match(line, m, line_re)) {
                throw llm::ResponseError("cannot read assignment line '" + text::trim(line) +
                                             "'; expected \"N -> app id\"",
                                         "");
            }
            int index = std::stoi(m[1].str());
            auto name = strip_wrapping(m[2].str());
            const auto* app = find_app(installed, name);
            if (!app) {
                throw llm::ResponseError("subtask " + std::to_string(index) + " is assigned to '" + name +
                                             "', which is not installed; installed apps are: " + valid_ids,
                                         "");
            }
            if (index < 1 || index > static_cast<int>(plan.subtasks.size())) {
                throw SchedulingError("scheduler assigned subtask " + std::to_string(index) + ", but the plan has " +
                                          std::to_string(plan.subtasks.size()) + " subtasks",
                                      f.at("ASSIGNMENTS"));
            }
            if (!chosen.emplace(index, app).second) {
                throw SchedulingError("scheduler assigned subtask " + std::to_string(index) + " twice",
                                      f.at("ASSIGNMENTS"));
            }
        }
        std::vector<std::string> missing;
        for (const auto& s : plan.subtasks) {
            if (!chosen.count(s.index)) missing.push_back(std::to_string(s.index));
        }
        if (!missing.empty()) {
            throw SchedulingError("scheduler left subtask(s) " + text::join(missing, ", ") + " unassigned",
                                  f.at("ASSIGNMENTS"));
        }
    };
    try {
        gateway.ask(llm::templates::scheduler(), {{"subtasks", numbered(plan.subtasks)}, {"apps", apps}}, validate);
    } catch (const llm::ResponseError& e) {
        throw SchedulingError(std::string("scheduling failed: ") + e.what(), e.raw());
    }

    AppSchedule out;
    for (const auto& s : plan.subtasks) {
        const auto* app = chosen.at(s.index);
        if (out.assignments.empty() || out.assignments.back().app_id != app->app_id) {
            out.assignments.push_back({app->app_id, app->app_name, {}});
        }
        out.assignments.back().subtasks.push_back(s);
    }
    return out;
}

std::string render_retrieved_pages(const std::vector<memory::ScoredChunk>& chunks) {
    if (chunks.empty()) return "";
    std::string out = "\nPages remembered from earlier use of this app:\n";
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto& c = chunks[i].chunk;
        out += fmt::format("Page {}: {}\n", i + 1, c.page_label);
        out += "  Description: " + c.page_description + "\n";
        if (!c.key_ui_elements.empty()) {
            out += "  Key elements:\n";
            for (const auto& e : c.key_ui_elements) out += "  - " + e.name + ": " + e.function + "\n";
        }
        out += "  How to get there: " + c.action_path + "\n";
    }
    return out;
}

FinePlan plan_fine(const AppSchedule& schedule, const memory::PageRetriever& retriever,
                   const memory::RetrievalConfig& cfg, llm::Gateway& gateway) {
    cfg.validate();
    if (schedule.assignments.empty()) throw PreconditionError("schedule has no assignments");
    auto validate = [](const llm::StructuredFields& f) {
        if (parse_list(f.at("STEPS")).empty()) throw llm::ResponseError("STEPS lists no steps", "");
    };
    FinePlan plan;
    for (const auto& a : schedule.assignments) {
        if (a.subtasks.empty()) throw PreconditionError("assignment for " + a.app_id + " has no subtasks");
        std::vector<std::string> texts;
        for (const auto& s : a.subtasks) texts.push_back(s.text);
        AppPlan p{a.app_id, a.app_name, a.subtasks, {}, retriever.retrieve(a.app_id, text::join(texts, " "), cfg)};
        spdlog::debug("fine planning {}: {} page(s) retrieved", a.app_id, p.retrieved.size());
        llm::Bindings b{
            {"app_name", a.app_name},
            {"app_id", a.app_id},
            {"subtasks", numbered(a.subtasks)},
            {"retrieved_pages", render_retrieved_pages(p.retrieved)},
        };
        try {
            p.steps = parse_list(gateway.ask(llm::templates::planner_fine(), b, validate).fields.at("STEPS"));
        } catch (const llm::ResponseError& e) {
            throw PlanningError("fine planning for " + a.app_id + " failed: " + e.what(), e.raw());
        }
        plan.per_app.push_back(std::move(p));
    }
    return plan;
}

FinePlan plan_fine(const AppSchedule& schedule, const memory::MemoryStore& store, const memory::RetrievalConfig& cfg,
                   llm::Gateway& gateway, const memory::Embedder& embedder) {
    return plan_fine(schedule, memory::StoreRetriever(store, embedder), cfg, gateway);
}

PlanResult plan_task(const UserTask& task, const std::vector<device::InstalledApp>& installed,
                     const memory::PageRetriever& retriever, llm::Gateway& gateway, const PlanOptions& options) {
    PlanResult r;
    r.task = task;
    r.coarse = plan_coarse(task, gateway);
    r.schedule = schedule(r.coarse, installed, gateway);
    if (options.use_memory) {
        r.fine = plan_fine(r.schedule, retriever, options.retrieval, gateway);
    } else {
        r.fine = plan_fine(r.schedule, memory::EmptyRetriever{}, options.retrieval, gateway);
    }
    return r;
}

PlanResult plan_task(const UserTask& task, const std::vector<device::InstalledApp>& installed,
                     const memory::MemoryStore& store, const memory::RetrievalConfig& cfg, llm::Gateway& gateway,
                     const memory::Embedder& embedder, bool use_memory) {
    return plan_task(task, installed, memory::StoreRetriever(store, embedder), gateway, PlanOptions{use_memory, cfg});
}

std::string render_plan_report(const PlanResult& plan) {
    std::string out = "task: " + plan.task.id + "\ntext: " + plan.task.text + "\ncoarse:\n";
    for (const auto& s : plan.coarse.subtasks) out += fmt::format("  {}. {}\n", s.index, s.text);
    out += "schedule:\n";
    for (const auto& a : plan.schedule.assignments) {
        std::vector<std::string> idx;
        for (const auto& s : a.subtasks) idx.push_back(std::to_string(s.index));
        out += fmt::format("  - {} ({}): subtasks {}\n", a.app_id, a.app_name, text::join(idx, ", "));
    }
    out += "fine:\n";
    for (const auto& p : plan.fine.per_app) {
        out += fmt::format("  - {} ({})\n", p.app_id, p.app_name);
        std::vector<std::string> hits;
        for (const auto& r : p.retrieved) hits.push_back(fmt::format("{} {:.4f}", r.chunk.chunk_id, r.score));
        out += "    retrieved: " + (hits.empty() ? std::string("none") : text::join(hits, ", ")) + "\n";
        out += "    steps:\n";
        for (std::size_t i = 0; i < p.steps.size(); ++i) out += fmt::format("      {}. {}\n", i + 1, p.steps[i]);
    }
    return out;
}

} // namespace trailmap::planner
