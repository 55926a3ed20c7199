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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trailmap/memory/chunk.hpp"
#include "trailmap/memory/embedder.hpp"

namespace trailmap::memory {

struct EmbeddedChunk {
    PageChunk chunk;
    Vector vector;

    bool operator==(const EmbeddedChunk&) const = default;
};

// Per-app collections of embedded page chunks. Reads may run concurrently;
// inserts, loads and saves need exclusive access.
class MemoryStore {
public:
    explicit MemoryStore(std::size_t dim = 128);

    std::size_t dim() const { return dim_; }

    // Adds to the collection of chunk.app_id. Returns false when a chunk with
    // the same id is already there. Throws PreconditionError on a vector of
    // the wrong length or a chunk without id.
    bool insert(EmbeddedChunk c);

    bool contains(const std::string& app_id, const std::string& chunk_id) const;
    const std::vector<EmbeddedChunk>& collection(const std::string& app_id) const;
    const std::map<std::string, std::vector<EmbeddedChunk>>& collections() const { return collections_; }
    std::size_t size() const;

    bool operator==(const MemoryStore&) const = default;

private:
    std::size_t dim_;
    std::map<std::string, std::vector<EmbeddedChunk>> collections_;
};

struct RetrievalConfig {
    int k = 3;
    std::optional<double> min_score;

    // Throws ValidationError unless k >= 1 and min_score is within [-1, 1].
    void validate() const;
};

struct ScoredChunk {
    PageChunk chunk;
    double score = 0.0;
};

class RetrievalError : public Error {
public:
    using Error::Error;
};

// Top-k chunks of `app_id`'s collection by cosine similarity to the query,
// highest first, ties by ascending chunk id. A missing collection yields an
// empty list.
std::vector<ScoredChunk> retrieve(const MemoryStore& store, const std::string& app_id, const std::string& query,
                                  const RetrievalConfig& cfg, const Embedder& embedder);
std::vector<ScoredChunk> retrieve_vector(const MemoryStore& store, const std::string& app_id,
                                         std::span<const double> query, const RetrievalConfig& cfg);

// Binary store file, little-endian throughout:
//   "TMAPSTOR" | u32 version | u32 dim | u32 collections
//   per collection: str app_id | u32 count | chunks
//   per chunk: str id, app_id, label, description | u32 n | n x (str name,
//     str function) | str path, source_task | i64 created_at ns | dim x f64
//   u64 FNV-1a of all preceding bytes
// where str is a u32 byte length followed by the bytes.
inline constexpr std::uint32_t kStoreFormatVersion = 1;

void save_store(const MemoryStore& store, const std::string& path);
// Throws CorruptFileError describing the first problem found.
MemoryStore load_store(const std::string& path);
std::string encode_store(const MemoryStore& store);
MemoryStore decode_store(std::string_view bytes);

} // namespace trailmap::memory
