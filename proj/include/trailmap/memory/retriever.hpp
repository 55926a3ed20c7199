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

#include "trailmap/memory/store.hpp"

namespace trailmap::memory {

// Source of page memory for the planner. Lets callers swap in an empty view
// (memory ablation) or wrap a store with instrumentation.
class PageRetriever {
public:
    virtual ~PageRetriever() = default;
    virtual std::vector<ScoredChunk> retrieve(const std::string& app_id, const std::string& query,
                                              const RetrievalConfig& cfg) const = 0;
};

class StoreRetriever final : public PageRetriever {
public:
    StoreRetriever(const MemoryStore& store, const Embedder& embedder) : store_(store), embedder_(embedder) {}

    std::vector<ScoredChunk> retrieve(const std::string& app_id, const std::string& query,
                                      const RetrievalConfig& cfg) const override {
        return memory::retrieve(store_, app_id, query, cfg, embedder_);
    }

private:
    const MemoryStore& store_;
    const Embedder& embedder_;
};

class EmptyRetriever final : public PageRetriever {
public:
    std::vector<ScoredChunk> retrieve(const std::string&, const std::string&,
                                      const RetrievalConfig& cfg) const override {
        cfg.validate();
        return {};
    }
};

} // namespace trailmap::memory
