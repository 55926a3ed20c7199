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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trailmap/llm/transcript.hpp"

namespace trailmap::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTaskFailed = 2;

// One configuration layer. Unset fields defer to the layer below.
struct ConfigLayer {
    std::optional<std::string> backend;
    std::optional<std::string> scriptbook;
    std::optional<std::string> model;
    std::optional<std::string> base_url;
    std::optional<std::string> api_key;
    std::optional<std::string> embedder;
    std::optional<int> embed_dim;
    std::optional<std::string> store_path;
    std::optional<std::string> apps_dir;
    std::optional<bool> use_memory;
    std::optional<bool> use_judge;
    std::optional<int> max_steps;
    std::optional<int> k;
    std::optional<int> parallelism;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> clock;
};

struct CliConfig {
    std::string config_path;
    std::string backend = "scripted";  // scripted or http
    std::string scriptbook;
    std::string model = "gpt-4o";
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
    std::string embedder = "hashing";  // hashing or http
    int embed_dim = 128;
    std::string store_path;
    std::string apps_dir;
    bool use_memory = true;
    bool use_judge = true;
    std::optional<int> max_steps;
    int k = 3;
    int parallelism = 1;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string clock = "steady";  // steady or tick (1 ms per read, fixed timestamps)

    // Throws ValidationError naming the offending setting. A scripted backend
    // needs a scriptbook unless `scripts_elsewhere` (suite tasks carry their
    // own).
    void validate(bool scripts_elsewhere = false) const;
};

// Keys: backend, scriptbook, model, base_url, embedder, embed_dim, store,
// apps_dir, use_memory, use_judge, max_steps, k, parallelism, seed, format,
// clock. Relative paths resolve against the file's directory.
ConfigLayer read_config_file(const std::string& path);

// TRAILMAP_BACKEND, TRAILMAP_SCRIPTBOOK, TRAILMAP_MODEL, TRAILMAP_BASE_URL,
// TRAILMAP_API_KEY, TRAILMAP_STORE, TRAILMAP_APPS_DIR. Empty values are
// ignored.
ConfigLayer read_env(const std::function<const char*(const char*)>& getenv_fn);

// defaults < file < env < flags.
CliConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& flags);

// Human-readable step log of an episode: everything after the first segment
// marker.
std::string render_steps(const llm::Transcript& transcript);

// Entry point. Normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::function<const char*(const char*)>& getenv_fn);

} // namespace trailmap::cli
