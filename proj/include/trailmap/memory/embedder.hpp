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
#include <span>
#include <string>
#include <vector>

#include "trailmap/core/error.hpp"
#include "trailmap/llm/http_backend.hpp"

namespace trailmap::memory {

using Vector = std::vector<double>;

class EmbeddingError : public Error {
public:
    using Error::Error;
};

class Embedder {
public:
    virtual ~Embedder() = default;

    virtual std::size_t dim() const = 0;
    // Throws PreconditionError on empty text.
    virtual Vector embed(const std::string& text) const = 0;
    virtual std::vector<Vector> embed_batch(const std::vector<std::string>& texts) const;
    virtual std::string id() const = 0;
};

// Deterministic feature-hashing embedder. Tokens are lower-cased ASCII
// alphanumeric runs and single CJK characters; unigrams and adjacent bigrams
// are hashed (FNV-1a, seeded) to a signed bucket and the result is
// L2-normalized. Never returns a zero vector.
class HashingEmbedder final : public Embedder {
public:
    explicit HashingEmbedder(std::size_t dim = 128, std::uint64_t seed = 0);

    std::size_t dim() const override { return dim_; }
    Vector embed(const std::string& text) const override;
    std::string id() const override;

private:
    std::size_t dim_;
    std::uint64_t seed_;
};

// Tokenizer used by HashingEmbedder.
std::vector<std::string> hash_tokens(std::string_view text);

// OpenAI-compatible /embeddings client: {model, input[]} -> {data[{embedding}]}.
// Every returned vector must have `dim` entries.
class HttpEmbedder final : public Embedder {
public:
    HttpEmbedder(llm::HttpConfig config, std::size_t dim);

    std::size_t dim() const override { return dim_; }
    Vector embed(const std::string& text) const override;
    std::vector<Vector> embed_batch(const std::vector<std::string>& texts) const override;
    std::string id() const override { return "http:" + config_.model; }

private:
    llm::HttpConfig config_;
    std::size_t dim_;
};

// Cosine similarity clamped to [-1, 1]. Throws PreconditionError on a
// dimension mismatch, EmbeddingError when either vector is all zeros.
double cosine(std::span<const double> a, std::span<const double> b);

} // namespace trailmap::memory
