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

#include "trailmap/llm/templates.hpp"

#include <algorithm>

namespace trailmap::llm {

std::vector<std::string> placeholders(const std::string& user_template) {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while ((pos = user_template.find("{{", pos)) != std::string::npos) {
        auto end = user_template.find("}}", pos + 2);
        if (end == std::string::npos) break;
        auto name = user_template.substr(pos + 2, end - pos - 2);
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
        pos = end + 2;
    }
    return names;
}

Messages render(const RoleTemplate& t, const Bindings& bindings) {
    std::string out;
    out.reserve(t.user_template.size() * 2);
    std::size_t pos = 0;
    while (true) {
        auto start = t.user_template.find("{{", pos);
        if (start == std::string::npos) break;
        auto end = t.user_template.find("}}", start + 2);
        if (end == std::string::npos) break;
        auto name = t.user_template.substr(start + 2, end - start - 2);
        auto it = bindings.find(name);
        if (it == bindings.end()) {
            throw RenderError("template '" + t.name + "': placeholder '" + name + "' is not bound");
        }
        out.append(t.user_template, pos, start - pos);
        out += it->second;
        pos = end + 2;
    }
    out.append(t.user_template, pos, std::string::npos);
    return {Message{"system", t.system_text}, Message{"user", std::move(out)}};
}

namespace templates {

const RoleTemplate& summarizer() {
    static const RoleTemplate t{
        "summarizer",
        Role::summarizer,
        "You analyse one screen of a mobile app and write a compact memory record of it. The record "
        "must let a later planner understand what the page is for, which elements matter, and how "
        "the page is reached from the app's first screen.",
        "App: {{app_id}}\n"
        "Task that produced this screen: {{task}}\n"
        "Actions taken before reaching this screen:\n"
        "{{prior_actions}}\n"
        "\n"
        "Interactive elements on the screen:\n"
        "{{som_text}}"
        "Screen outline:\n"
        "{{outline}}"
        "\n"
        "Describe the page using exactly these tagged fields:\n"
        "PAGE_DESCRIPTION: the content, structure and functions of the page.\n"
        "KEY_UI_ELEMENTS: one line per element that matters for interaction, navigation or page "
        "jumps, formatted \"- name: function\". Write \"none\" if there are none.\n"
        "ACTION_PATH: a short description of the path from the app's first page to this page.\n"
        "PAGE_LABEL: a concise, descriptive label for the page.\n",
        {"PAGE_DESCRIPTION", "KEY_UI_ELEMENTS", "ACTION_PATH", "PAGE_LABEL"},
        {},
    };
    return t;
}

const RoleTemplate& planner_coarse() {
    static const RoleTemplate t{
        "planner_coarse",
        Role::planner,
        "You are the planner of a mobile phone automation agent. You break a user's request into a "
        "short ordered list of coarse subtasks. Each subtask must be completable inside a single app.",
        "User task: {{task}}\n"
        "\n"
        "Decompose the task. Write the subtasks in execution order using exactly this tagged field:\n"
        "SUBTASKS:\n"
        "1. <first subtask>\n"
        "2. <second subtask>\n",
        {"SUBTASKS"},
        {},
    };
    return t;
}

const RoleTemplate& scheduler() {
    static const RoleTemplate t{
        "scheduler",
        Role::scheduler,
        "You are the task scheduler of a mobile phone automation agent. You assign every subtask to "
        "the installed app in which it can be executed. You never change the subtasks.",
        "Subtasks:\n"
        "{{subtasks}}"
        "\n"
        "Installed apps (id: name):\n"
        "{{apps}}"
        "\n"
        "Assign each subtask to exactly one installed app using exactly this tagged field, one line "
        "per subtask:\n"
        "ASSIGNMENTS:\n"
        "1 -> <app id>\n"
        "2 -> <app id>\n",
        {"ASSIGNMENTS"},
        {},
    };
    return t;
}

const RoleTemplate& planner_fine() {
    static const RoleTemplate t{
        "planner_fine",
        Role::planner,
        "You are the planner of a mobile phone automation agent. You turn the subtasks assigned to "
        "one app into concrete, ordered steps on that app's screens.",
        "App: {{app_name}} ({{app_id}})\n"
        "Subtasks for this app:\n"
        "{{subtasks}}"
        "{{retrieved_pages}}"
        "\n"
        "Refine the plan. Write the concrete steps using exactly this tagged field:\n"
        "STEPS:\n"
        "1. <first step>\n"
        "2. <second step>\n",
        {"STEPS"},
        {},
    };
    return t;
}

const RoleTemplate& decision_maker() {
    static const RoleTemplate t{
        "decision_maker",
        Role::decision_maker,
        "You operate a mobile phone to complete a task. At each step you see the current screen, "
        "where every interactive element carries a numeric label. Think about the screen, then "
        "choose exactly one action.\n"
        "\n"
        "Available actions:\n"
        "click(label)\n"
        "type(label, \"text\")\n"
        "scroll(label, up|down|left|right)\n"
        "back()\n"
        "home()\n"
        "open_app(\"App name\")\n"
        "finish(\"summary\")  -- when the planned steps for the current app are done",
        "Overall task: {{task}}\n"
        "Current app: {{app_name}}\n"
        "Planned steps for this app:\n"
        "{{steps}}"
        "{{recorded_info}}"
        "{{history}}"
        "{{judge_feedback}}"
        "\n"
        "Current screen ({{screen}}):\n"
        "{{som_text}}"
        "\n"
        "Respond using these tagged fields:\n"
        "THOUGHT: your reasoning about the current screen and the next step.\n"
        "ACTION: exactly one action.\n"
        "RECORD: optional \"key = value\" lines with information later steps or apps will need.\n",
        {"THOUGHT", "ACTION"},
        {"RECORD"},
    };
    return t;
}

const RoleTemplate& judge() {
    static const RoleTemplate t{
        "judge",
        Role::judge,
        "You review the actions of a mobile phone agent. Compare the screen before and after the "
        "last action, decide whether the action succeeded, summarise the task progress so far, and "
        "recommend the next action.",
        "Overall task: {{task}}\n"
        "Planned steps for this app:\n"
        "{{steps}}"
        "\n"
        "Progress before this action: {{progress_prev}}\n"
        "Agent's reasoning for the action: {{thought}}\n"
        "Action taken: {{action}}\n"
        "Action outcome: {{outcome}}\n"
        "\n"
        "Screen before the action ({{before_screen}}):\n"
        "{{before}}"
        "\n"
        "Screen after the action ({{after_screen}}):\n"
        "{{after}}"
        "\n"
        "Respond using these tagged fields:\n"
        "EVALUATION: whether the previous action succeeded and why.\n"
        "PROGRESS: the task progress after this action.\n"
        "SUGGESTION: the recommended next action.\n"
        "STATUS: succeeded, failed or unclear.\n",
        {"EVALUATION", "PROGRESS", "SUGGESTION", "STATUS"},
        {},
    };
    return t;
}

const std::vector<const RoleTemplate*>& all() {
    static const std::vector<const RoleTemplate*> list{&summarizer(), &planner_coarse(), &scheduler(),
                                                       &planner_fine(), &decision_maker(), &judge()};
    return list;
}

} // namespace templates

} // namespace trailmap::llm
