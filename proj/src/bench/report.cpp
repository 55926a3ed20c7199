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

#include "trailmap/bench/report.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "trailmap/core/io.hpp"

namespace trailmap::bench {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string tag_of(const TaskOutcome& t) { return t.error_tag ? std::string(to_string(*t.error_tag)) : ""; }

std::string render_text(const SuiteReport& r) {
    std::size_t successes = 0;
    long long steps = 0;
    for (const auto& t : r.per_task) {
        successes += t.success ? 1 : 0;
        steps += t.steps;
    }
    std::string out = fmt::format("suite: {}\nconfig: {}\n", r.suite, label(r.config));
    for (const auto& n : r.notes) out += "note: " + n + "\n";
    out += fmt::format("tasks: {}  successes: {}  steps: {}\n", r.per_task.size(), successes, steps);
    out += fmt::format("SR: {:.3f}\nMTS: {:.6f} s/step\nMTC: {:.8f} USD/step\n", r.success_rate, r.mts_seconds,
                       r.mtc_usd);
    if (r.per_task.empty()) return out;
    out += fmt::format("{:<12} {:<8} {:<7} {:<15} {:>5} {:>8} {:>8} {:>12}  {}\n", "task", "level", "result",
                       "status", "steps", "prompt", "compl", "cost_usd", "error_tag");
    for (const auto& t : r.per_task) {
        auto row = fmt::format("{:<12} {:<8} {:<7} {:<15} {:>5} {:>8} {:>8} {:>12.8f}  {}", t.task_id, t.difficulty,
                               t.success ? "success" : "fail", t.status, t.steps, t.usage.prompt_tokens,
                               t.usage.completion_tokens, t.cost_usd, tag_of(t));
        row.erase(row.find_last_not_of(' ') + 1);
        out += row + "\n";
    }
    return out;
}

std::string render_csv_rows(const SuiteReport& r) {
    std::string out;
    for (const auto& t : r.per_task) {
        std::vector<std::string> row{
            csv_field(r.suite),
            csv_field(std::string(label(r.config))),
            csv_field(t.task_id),
            t.difficulty,
            t.success ? "1" : "0",
            t.status,
            std::to_string(t.steps),
            std::to_string(t.turns),
            fmt::format("{:.6f}", t.wall_time_s),
            std::to_string(t.usage.prompt_tokens),
            std::to_string(t.usage.completion_tokens),
            fmt::format("{:.8f}", t.cost_usd),
            std::to_string(t.judge_calls),
            tag_of(t),
        };
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

std::string csv_header() {
    std::string out;
    for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
    return out + "\n";
}

std::string render_jsonl(const SuiteReport& r) {
    nlohmann::ordered_json summary{
        {"type", "summary"},
        {"suite", r.suite},
        {"config", std::string(label(r.config))},
        {"tasks", r.per_task.size()},
        {"success_rate", r.success_rate},
        {"mts_seconds_per_step", r.mts_seconds},
        {"mtc_usd_per_step", r.mtc_usd},
        {"notes", r.notes},
    };
    std::string out = summary.dump() + "\n";
    for (const auto& t : r.per_task) {
        nlohmann::ordered_json j{
            {"type", "task"},
            {"config", std::string(label(r.config))},
            {"task_id", t.task_id},
            {"difficulty", t.difficulty},
            {"success", t.success},
            {"status", t.status},
            {"steps", t.steps},
            {"turns", t.turns},
            {"wall_time_s", t.wall_time_s},
            {"prompt_tokens", t.usage.prompt_tokens},
            {"completion_tokens", t.usage.completion_tokens},
            {"cost_usd", t.cost_usd},
            {"judge_calls", t.judge_calls},
            {"error_tag", t.error_tag ? nlohmann::ordered_json(tag_of(t)) : nlohmann::ordered_json(nullptr)},
            {"error", t.error},
        };
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace

std::optional<ReportFormat> parse_report_format(std::string_view s) {
    if (s == "text") return ReportFormat::text;
    if (s == "csv") return ReportFormat::csv;
    if (s == "jsonl" || s == "json-lines") return ReportFormat::jsonl;
    return std::nullopt;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "suite",  "config",        "task_id",           "difficulty", "success",     "status",      "steps",
        "turns",  "wall_time_s",   "prompt_tokens",     "completion_tokens",         "cost_usd",    "judge_calls",
        "error_tag",
    };
    return cols;
}

std::string render_report(const SuiteReport& report, ReportFormat format) { return render_reports({report}, format); }

std::string render_reports(const std::vector<SuiteReport>& reports, ReportFormat format) {
    std::string out;
    switch (format) {
    case ReportFormat::text:
        for (std::size_t i = 0; i < reports.size(); ++i) out += (i ? "\n" : "") + render_text(reports[i]);
        break;
    case ReportFormat::csv:
        out = csv_header();
        for (const auto& r : reports) out += render_csv_rows(r);
        break;
    case ReportFormat::jsonl:
        for (const auto& r : reports) out += render_jsonl(r);
        break;
    }
    return out;
}

void emit_report(const SuiteReport& report, const std::string& path, ReportFormat format) {
    io::write_file(path, render_report(report, format));
}

void emit_reports(const std::vector<SuiteReport>& reports, const std::string& path, ReportFormat format) {
    io::write_file(path, render_reports(reports, format));
}

void emit_report(const SuiteReport& report, const std::string& path, std::string_view format) {
    auto f = parse_report_format(format);
    if (!f) throw PreconditionError("unknown report format '" + std::string(format) + "'");
    emit_report(report, path, *f);
}

} // namespace trailmap::bench
