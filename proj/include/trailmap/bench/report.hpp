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

#include <optional>
#include <string>
#include <vector>

#include "trailmap/bench/runner.hpp"

namespace trailmap::bench {

enum class ReportFormat { text, csv, jsonl };

std::optional<ReportFormat> parse_report_format(std::string_view s);

// CSV columns, in order.
const std::vector<std::string>& csv_columns();

// Byte-stable rendering. CSV has one row per task (header only for an empty
// suite); JSON lines start with a summary record followed by one record per
// task.
std::string render_report(const SuiteReport& report, ReportFormat format);
std::string render_reports(const std::vector<SuiteReport>& reports, ReportFormat format);

// Writes render_reports(); throws Error on I/O failure.
void emit_report(const SuiteReport& report, const std::string& path, ReportFormat format);
void emit_reports(const std::vector<SuiteReport>& reports, const std::string& path, ReportFormat format);
// Format by name ("text", "csv", "jsonl" or "json-lines"); throws
// PreconditionError for any other name.
void emit_report(const SuiteReport& report, const std::string& path, std::string_view format);

} // namespace trailmap::bench
