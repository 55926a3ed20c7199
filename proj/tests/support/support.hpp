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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "trailmap/bench/runner.hpp"
#include "trailmap/device/app_graph.hpp"
#include "trailmap/memory/embedder.hpp"
#include "trailmap/llm/scripted_backend.hpp"
#include "trailmap/memory/store.hpp"
#include "trailmap/ui/som.hpp"
#include "trailmap/ui/ui_tree.hpp"

namespace trailmap::testing {

// Absolute path of a file under tests/fixtures.
std::string fixture(const std::string& relative);

// Compares `actual` with tests/golden/<name>. With TRAILMAP_UPDATE_GOLDEN set
// the file is rewritten instead and the comparison passes.
bool golden_matches(const std::string& name, const std::string& actual);
std::string golden_path(const std::string& name);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

std::vector<device::AppGraphPtr> fixture_apps();

// Random UI tree with exactly `nodes` nodes. Text fields draw from a pool that
// includes XML metacharacters, whitespace controls and non-ASCII text.
ui::UiTree random_tree(std::mt19937_64& rng, int nodes);

// Interactive nodes found by an explicit-stack walk and a direct filter.
std::vector<ui::InteractiveElement> brute_force_interactive(const ui::UiTree& tree);

// Cosine in long double from the textbook formula.
double reference_cosine(const std::vector<double>& a, const std::vector<double>& b);

// Top-k by scoring every vector of the collection and sorting by
// (score desc, chunk id asc).
std::vector<std::string> brute_force_top_k(const memory::MemoryStore& store, const std::string& app_id,
                                           const std::vector<double>& query, int k);

std::vector<double> random_unit_vector(std::mt19937_64& rng, std::size_t dim);

// Chunk with random printable fields, finalized.
memory::PageChunk random_chunk(std::mt19937_64& rng, const std::string& app_id);

// A fixture suite wired for scripted runs: apps from its directory, page
// memory seeded from its chunk file, each task's own scriptbook and a fresh
// tick clock per task.
struct SuiteRig {
    explicit SuiteRig(const std::string& suite_path);
    SuiteRig(const SuiteRig&) = delete;
    SuiteRig& operator=(const SuiteRig&) = delete;

    bench::Suite suite;
    memory::HashingEmbedder embedder;
    memory::MemoryStore store;
    bench::SuiteHandles handles;
};

llm::ScriptEntry entry(llm::Role role, std::vector<std::string> contains, std::string response,
                       bool repeat = false);

} // namespace trailmap::testing
