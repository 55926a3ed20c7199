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

#include "trailmap/memory/embedder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "trailmap/core/hash.hpp"

namespace trailmap::memory {

namespace {

bool is_cjk(char32_t cp) {
    return (cp >= 0x3040 && cp <= 0x30FF) || (cp >= 0x3400 && cp <= 0x4DBF) || (cp >= 0x4E00 && cp <= 0x9FFF) ||
           (cp >= 0xAC00 && cp <= 0xD7AF) || (cp >= 0xF900 && cp <= 0xFAFF);
}

// Decodes one UTF-8 sequence at s[i]; invalid bytes decode as themselves.
char32_t decode(std::string_view s, std::size_t i, std::size_t& len) {
    auto b = static_cast<unsigned char>(s[i]);
    int extra = b >= 0xF0 ? 3 : b >= 0xE0 ? 2 : b >= 0xC0 ? 1 : 0;
    if (i + extra >= s.size()) extra = 0;
    char32_t cp = extra == 0 ? b : b & (0x3F >> extra);
    for (int k = 1; k <= extra; ++k) {
        auto c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xC0) != 0x80) {
            len = 1;
            return b;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    len = static_cast<std::size_t>(extra) + 1;
    return cp;
}

} // namespace

std::vector<Vector> Embedder::embed_batch(const std::vector<std::string>& texts) const {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed(t));
    return out;
}

std::vector<std::string> hash_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) tokens.push_back(std::move(word));
        word.clear();
    };
    for (std::size_t i = 0; i < text.size();) {
        std::size_t len = 1;
        char32_t cp = decode(text, i, len);
        if (cp < 0x80) {
            auto c = static_cast<char>(cp);
            if (std::isalnum(static_cast<unsigned char>(c))) {
                word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            } else {
                flush();
            }
        } else if (is_cjk(cp)) {
            flush();
            tokens.emplace_back(text.substr(i, len));
        } else {
            word.append(text.substr(i, len));
        }
        i += len;
    }
    flush();
    return tokens;
}

HashingEmbedder::HashingEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim_ == 0) throw PreconditionError("embedding dimension must be positive");
}

std::string HashingEmbedder::id() const {
    return "hashing:" + std::to_string(dim_) + ":" + std::to_string(seed_);
}

Vector HashingEmbedder::embed(const std::string& text) const {
    if (text.empty()) throw PreconditionError("cannot embed empty text");
    Vector v(dim_, 0.0);
    auto add = [&](const std::string& feature, double weight) {
        auto h = hash::fnv1a64(feature, seed_);
        double sign = (h >> 63) ? -1.0 : 1.0;
        v[h % dim_] += sign * weight;
    };
    auto tokens = hash_tokens(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        add(tokens[i], 1.0);
        if (i + 1 < tokens.size()) add(tokens[i] + " " + tokens[i + 1], 0.5);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm == 0.0) {
        auto h = hash::fnv1a64(text, seed_ ^ 0x5bd1e995ULL);
        v[h % dim_] = 1.0;
        return v;
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

HttpEmbedder::HttpEmbedder(llm::HttpConfig config, std::size_t dim) : config_(std::move(config)), dim_(dim) {
    if (dim_ == 0) throw PreconditionError("embedding dimension must be positive");
}

Vector HttpEmbedder::embed(const std::string& text) const { return embed_batch({text}).front(); }

std::vector<Vector> HttpEmbedder::embed_batch(const std::vector<std::string>& texts) const {
    for (const auto& t : texts) {
        if (t.empty()) throw PreconditionError("cannot embed empty text");
    }
    if (texts.empty()) return {};
    auto response = llm::post_json(config_, "/embeddings", {{"model", config_.model}, {"input", texts}});
    std::vector<Vector> out;
    try {
        for (const auto& item : response.at("data")) out.push_back(item.at("embedding").get<Vector>());
    } catch (const nlohmann::json::exception& e) {
        throw EmbeddingError(std::string("malformed embeddings response: ") + e.what());
    }
    if (out.size() != texts.size()) {
        throw EmbeddingError("embeddings response has " + std::to_string(out.size()) + " vectors for " +
                             std::to_string(texts.size()) + " inputs");
    }
    for (const auto& v : out) {
        if (v.size() != dim_) {
            throw EmbeddingError("embedding has dimension " + std::to_string(v.size()) + ", store expects " +
                                 std::to_string(dim_));
        }
    }
    return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw PreconditionError("cosine of vectors with dimensions " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw EmbeddingError("cosine similarity is undefined for a zero vector");
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

} // namespace trailmap::memory
