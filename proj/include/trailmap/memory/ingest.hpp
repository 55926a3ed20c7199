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
#include <string>
#include <vector>

#include "trailmap/device/trajectory.hpp"
#include "trailmap/llm/gateway.hpp"
#include "trailmap/memory/store.hpp"

namespace trailmap::memory {

class SummarizationError : public Error {
public:
    using Error::Error;
};

// An action taken before the summarized page, with the text of the element
// it targeted when known.
struct PriorStep {
    device::Action action;
    std::string target_text;
};

// Asks the summarizer role for the four page fields. app_id comes from the
// observation. Gateway failures become SummarizationError; an unusable
// response after the corrective re-prompt propagates as llm::SchemaError.
PageChunk summarize_page(const device::Observation& observation, const std::vector<PriorStep>& prior_actions,
                         const std::string& source_task, llm::Gateway& gateway);
PageChunk summarize_page(const device::Observation& observation, const std::vector<device::Action>& prior_actions,
                         const std::string& source_task, llm::Gateway& gateway);

// Prior steps for observation t of a trajectory, with target element text
// resolved against the observation each action was taken on.
std::vector<PriorStep> prior_steps(const device::Trajectory& trajectory, std::size_t t);

// "- name: function" lines, or "none", to key elements.
std::vector<KeyElement> parse_key_elements(const std::string& text);

struct IngestOptions {
    bool filter_failed = true;
    std::function<Timestamp()> now = [] { return Timestamp(std::chrono::system_clock::now()); };
};

// Summarizes every observation of the trajectory and inserts the embedded
// chunks into the trajectory app's collection. Pages whose summary fails, or
// which belong to another app, are logged and skipped. Returns the number of
// chunks actually inserted.
int ingest_trajectory(const device::Trajectory& trajectory, MemoryStore& store, llm::Gateway& gateway,
                      const Embedder& embedder, const IngestOptions& options = {});

// Hand-authored chunks from YAML (list of {app_id, page_label,
// page_description, key_ui_elements: [{name, function}], action_path,
// source_task}).
std::vector<PageChunk> load_chunk_seed(const std::string& path);
std::vector<PageChunk> parse_chunk_seed(const std::string& yaml_text);
int seed_store(const std::vector<PageChunk>& chunks, MemoryStore& store, const Embedder& embedder);

} // namespace trailmap::memory
