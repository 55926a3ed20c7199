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

#include "trailmap/memory/ingest.hpp"

#include <spdlog/spdlog.h>

#include "trailmap/core/io.hpp"
#include "trailmap/core/text.hpp"
#include "trailmap/core/yaml_fields.hpp"
#include "trailmap/ui/som.hpp"

namespace trailmap::memory {

namespace {

std::string render_prior(const std::vector<PriorStep>& steps) {
    if (steps.empty()) return "none (this is the first screen)";
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += '\n';
        out += std::to_string(i + 1) + ". " + device::format_action(steps[i].action);
        if (!steps[i].target_text.empty()) out += " on \"" + steps[i].target_text + "\"";
    }
    return out;
}

} // namespace

std::vector<KeyElement> parse_key_elements(const std::string& text) {
    std::vector<KeyElement> out;
    for (const auto& raw : text::split_lines(text)) {
        auto line = text::strip_list_marker(raw);
        if (line.empty()) continue;
        if (text::iequals(line, "none") || text::iequals(line, "none.")) continue;
        auto colon = line.find(':');
        KeyElement e;
        if (colon == std::string::npos) {
            e.name = line;
        } else {
            e.name = text::trim(std::string_view(line).substr(0, colon));
            e.function = text::trim(std::string_view(line).substr(colon + 1));
        }
        if (!e.name.empty()) out.push_back(std::move(e));
    }
    return out;
}

PageChunk summarize_page(const device::Observation& observation, const std::vector<PriorStep>& prior_actions,
                         const std::string& source_task, llm::Gateway& gateway) {
    llm::Bindings b{
        {"app_id", observation.app_id},
        {"task", source_task},
        {"prior_actions", render_prior(prior_actions)},
        {"som_text", ui::render_som_text(observation.som, observation.tree)},
        {"outline", ui::render_outline(observation.tree)},
    };
    llm::AskResult r;
    try {
        r = gateway.ask(llm::templates::summarizer(), b);
    } catch (const llm::GatewayError& e) {
        throw SummarizationError("summarizing " + observation.app_id + "/" + observation.page_id + ": " + e.what());
    }
    PageChunk c;
    c.app_id = observation.app_id;
    c.page_label = r.fields.at("PAGE_LABEL");
    c.page_description = r.fields.at("PAGE_DESCRIPTION");
    c.key_ui_elements = parse_key_elements(r.fields.at("KEY_UI_ELEMENTS"));
    c.action_path = r.fields.at("ACTION_PATH");
    c.source_task = source_task;
    c.created_at = Timestamp(std::chrono::system_clock::now());
    finalize(c);
    return c;
}

PageChunk summarize_page(const device::Observation& observation, const std::vector<device::Action>& prior_actions,
                         const std::string& source_task, llm::Gateway& gateway) {
    std::vector<PriorStep> steps;
    for (const auto& a : prior_actions) steps.push_back({a, {}});
    return summarize_page(observation, steps, source_task, gateway);
}

std::vector<PriorStep> prior_steps(const device::Trajectory& trajectory, std::size_t t) {
    if (t >= trajectory.observations.size()) throw PreconditionError("observation index out of range");
    std::vector<PriorStep> steps;
    for (std::size_t i = 0; i < t; ++i) {
        PriorStep s{trajectory.actions[i], {}};
        if (auto label = device::action_label(s.action)) {
            const auto& obs = trajectory.observations[i];
            if (const auto* entry = obs.som.find(*label)) {
                if (const auto* node = obs.tree.find(entry->node_id)) {
                    s.target_text = node->text.empty() ? node->content_desc : node->text;
                }
            }
        }
        steps.push_back(std::move(s));
    }
    return steps;
}

int ingest_trajectory(const device::Trajectory& trajectory, MemoryStore& store, llm::Gateway& gateway,
                      const Embedder& embedder, const IngestOptions& options) {
    if (!trajectory.well_formed()) throw PreconditionError("trajectory does not alternate observations and actions");
    if (embedder.dim() != store.dim()) {
        throw PreconditionError("embedder dimension " + std::to_string(embedder.dim()) +
                                " does not match store dimension " + std::to_string(store.dim()));
    }
    if (options.filter_failed && !trajectory.success) {
        spdlog::info("skipping failed trajectory for task '{}'", trajectory.task);
        return 0;
    }
    int inserted = 0;
    for (std::size_t t = 0; t < trajectory.observations.size(); ++t) {
        const auto& obs = trajectory.observations[t];
        if (obs.app_id != trajectory.app_id) {
            spdlog::warn("skipping page {}/{} at step {}: not part of app '{}'", obs.app_id, obs.page_id, t,
                         trajectory.app_id);
            continue;
        }
        PageChunk chunk;
        try {
            chunk = summarize_page(obs, prior_steps(trajectory, t), trajectory.task, gateway);
        } catch (const Error& e) {
            spdlog::warn("skipping page {}/{} at step {}: {}", obs.app_id, obs.page_id, t, e.what());
            continue;
        }
        if (options.now) chunk.created_at = options.now();
        if (store.contains(chunk.app_id, chunk.chunk_id)) continue;
        auto vec = embedder.embed(chunk_text(chunk));
        if (store.insert({std::move(chunk), std::move(vec)})) ++inserted;
    }
    return inserted;
}

std::vector<PageChunk> parse_chunk_seed(const std::string& yaml_text) {
    auto doc = yaml::load(yaml_text, "chunk seed");
    yaml::Fields top(doc, "");
    auto items = top.list("chunks", true);
    top.finish();
    std::vector<PageChunk> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        yaml::Fields f(items[i], top.item_path("chunks", i));
        PageChunk c;
        c.app_id = f.str("app_id");
        c.page_label = f.str("page_label");
        c.page_description = f.str("page_description", "");
        auto elements = f.list("key_ui_elements");
        for (std::size_t k = 0; k < elements.size(); ++k) {
            yaml::Fields ef(elements[k], f.item_path("key_ui_elements", k));
            c.key_ui_elements.push_back({ef.str("name"), ef.str("function", "")});
            ef.finish();
        }
        c.action_path = f.str("action_path", "");
        c.source_task = f.str("source_task", "");
        f.finish();
        if (c.page_label.empty()) f.fail("page_label", "must not be empty");
        finalize(c);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<PageChunk> load_chunk_seed(const std::string& path) {
    try {
        return parse_chunk_seed(io::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

int seed_store(const std::vector<PageChunk>& chunks, MemoryStore& store, const Embedder& embedder) {
    int inserted = 0;
    for (const auto& c : chunks) {
        if (store.contains(c.app_id, c.chunk_id)) continue;
        if (store.insert({c, embedder.embed(chunk_text(c))})) ++inserted;
    }
    return inserted;
}

} // namespace trailmap::memory
