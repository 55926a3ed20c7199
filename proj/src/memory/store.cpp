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

#include "trailmap/memory/store.hpp"

#include <algorithm>
#include <bit>

#include "trailmap/core/hash.hpp"
#include "trailmap/core/io.hpp"

namespace trailmap::memory {

MemoryStore::MemoryStore(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw PreconditionError("store dimension must be positive");
}

bool MemoryStore::insert(EmbeddedChunk c) {
    if (c.vector.size() != dim_) {
        throw PreconditionError("vector has dimension " + std::to_string(c.vector.size()) + ", store expects " +
                                std::to_string(dim_));
    }
    if (c.chunk.chunk_id.empty()) throw PreconditionError("chunk has no id");
    if (c.chunk.app_id.empty()) throw PreconditionError("chunk has no app id");
    if (contains(c.chunk.app_id, c.chunk.chunk_id)) return false;
    collections_[c.chunk.app_id].push_back(std::move(c));
    return true;
}

bool MemoryStore::contains(const std::string& app_id, const std::string& chunk_id) const {
    const auto& col = collection(app_id);
    return std::any_of(col.begin(), col.end(), [&](const auto& e) { return e.chunk.chunk_id == chunk_id; });
}

const std::vector<EmbeddedChunk>& MemoryStore::collection(const std::string& app_id) const {
    static const std::vector<EmbeddedChunk> empty;
    auto it = collections_.find(app_id);
    return it == collections_.end() ? empty : it->second;
}

std::size_t MemoryStore::size() const {
    std::size_t n = 0;
    for (const auto& [app, col] : collections_) n += col.size();
    return n;
}

void RetrievalConfig::validate() const {
    if (k < 1) throw ValidationError("k", "must be at least 1");
    if (min_score && (*min_score < -1.0 || *min_score > 1.0)) {
        throw ValidationError("min_score", "must lie in [-1, 1]");
    }
}

std::vector<ScoredChunk> retrieve_vector(const MemoryStore& store, const std::string& app_id,
                                         std::span<const double> query, const RetrievalConfig& cfg) {
    cfg.validate();
    const auto& col = store.collection(app_id);
    std::vector<std::pair<double, const EmbeddedChunk*>> scored;
    scored.reserve(col.size());
    for (const auto& e : col) {
        double s = cosine(query, e.vector);
        if (cfg.min_score && s < *cfg.min_score) continue;
        scored.emplace_back(s, &e);
    }
    auto better = [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->chunk.chunk_id < b.second->chunk.chunk_id;
    };
    auto k = std::min<std::size_t>(static_cast<std::size_t>(cfg.k), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), better);
    std::vector<ScoredChunk> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({scored[i].second->chunk, scored[i].first});
    return out;
}

std::vector<ScoredChunk> retrieve(const MemoryStore& store, const std::string& app_id, const std::string& query,
                                  const RetrievalConfig& cfg, const Embedder& embedder) {
    cfg.validate();
    if (store.collection(app_id).empty()) return {};
    if (embedder.dim() != store.dim()) {
        throw RetrievalError("embedder dimension " + std::to_string(embedder.dim()) + " does not match store dimension " +
                             std::to_string(store.dim()));
    }
    Vector q;
    try {
        q = embedder.embed(query);
    } catch (const Error& e) {
        throw RetrievalError(std::string("cannot embed retrieval query: ") + e.what());
    }
    return retrieve_vector(store, app_id, q, cfg);
}

namespace {

constexpr std::string_view kMagic = "TMAPSTOR";

class Writer {
public:
    void u32(std::uint32_t v) { put(v); }
    void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v)); }
    void u64(std::uint64_t v) { put(v); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        out.append(s);
    }
    void raw(std::string_view s) { out.append(s); }

    std::string out;

private:
    template <class U>
    void put(U v) {
        for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    std::uint32_t u32(const char* what) { return get<std::uint32_t>(what); }
    std::int64_t i64(const char* what) { return static_cast<std::int64_t>(get<std::uint64_t>(what)); }
    std::uint64_t u64(const char* what) { return get<std::uint64_t>(what); }
    double f64(const char* what) { return std::bit_cast<double>(get<std::uint64_t>(what)); }
    std::string str(const char* what) {
        auto n = u32(what);
        need(n, what);
        std::string s(data_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    std::string_view raw(std::size_t n, const char* what) {
        need(n, what);
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n, const char* what) {
        if (data_.size() - pos_ < n) {
            throw CorruptFileError("store file truncated while reading " + std::string(what) + " at byte " +
                                   std::to_string(pos_));
        }
    }
    template <class U>
    U get(const char* what) {
        need(sizeof(U), what);
        U v = 0;
        for (std::size_t i = 0; i < sizeof(U); ++i) {
            v |= static_cast<U>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += sizeof(U);
        return v;
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

} // namespace

std::string encode_store(const MemoryStore& store) {
    Writer w;
    w.raw(kMagic);
    w.u32(kStoreFormatVersion);
    w.u32(static_cast<std::uint32_t>(store.dim()));
    w.u32(static_cast<std::uint32_t>(store.collections().size()));
    for (const auto& [app_id, col] : store.collections()) {
        w.str(app_id);
        w.u32(static_cast<std::uint32_t>(col.size()));
        for (const auto& e : col) {
            const auto& c = e.chunk;
            w.str(c.chunk_id);
            w.str(c.app_id);
            w.str(c.page_label);
            w.str(c.page_description);
            w.u32(static_cast<std::uint32_t>(c.key_ui_elements.size()));
            for (const auto& k : c.key_ui_elements) {
                w.str(k.name);
                w.str(k.function);
            }
            w.str(c.action_path);
            w.str(c.source_task);
            w.i64(c.created_at.time_since_epoch().count());
            for (double x : e.vector) w.f64(x);
        }
    }
    w.u64(hash::fnv1a64(w.out));
    return std::move(w.out);
}

MemoryStore decode_store(std::string_view bytes) {
    Reader r(bytes);
    if (r.raw(kMagic.size(), "magic") != kMagic) throw CorruptFileError("not a trailmap store file (bad magic)");
    auto version = r.u32("version");
    if (version != kStoreFormatVersion) {
        throw CorruptFileError("unsupported store format version " + std::to_string(version));
    }
    auto dim = r.u32("dimension");
    if (dim == 0) throw CorruptFileError("store dimension is zero");
    MemoryStore store(dim);
    auto n_collections = r.u32("collection count");
    for (std::uint32_t ci = 0; ci < n_collections; ++ci) {
        auto app_id = r.str("collection app id");
        auto n = r.u32("chunk count");
        for (std::uint32_t i = 0; i < n; ++i) {
            EmbeddedChunk e;
            auto& c = e.chunk;
            c.chunk_id = r.str("chunk id");
            c.app_id = r.str("chunk app id");
            c.page_label = r.str("page label");
            c.page_description = r.str("page description");
            auto n_elements = r.u32("key element count");
            for (std::uint32_t k = 0; k < n_elements; ++k) {
                KeyElement el;
                el.name = r.str("key element name");
                el.function = r.str("key element function");
                c.key_ui_elements.push_back(std::move(el));
            }
            c.action_path = r.str("action path");
            c.source_task = r.str("source task");
            c.created_at = Timestamp(std::chrono::nanoseconds(r.i64("created_at")));
            if (r.remaining() / sizeof(double) < dim) {
                throw CorruptFileError("store file truncated while reading vector at byte " + std::to_string(r.pos()));
            }
            e.vector.resize(dim);
            for (auto& x : e.vector) x = r.f64("vector");
            if (c.app_id != app_id) {
                throw CorruptFileError("chunk " + c.chunk_id + " filed under collection '" + app_id +
                                       "' belongs to app '" + c.app_id + "'");
            }
            if (c.chunk_id != compute_chunk_id(c)) {
                throw CorruptFileError("chunk " + c.chunk_id + " in collection '" + app_id +
                                       "' does not match its content hash");
            }
            auto id = c.chunk_id;
            if (!store.insert(std::move(e))) {
                throw CorruptFileError("duplicate chunk " + id + " in collection '" + app_id + "'");
            }
        }
    }
    auto body = r.pos();
    auto checksum = r.u64("checksum");
    if (checksum != hash::fnv1a64(bytes.substr(0, body))) throw CorruptFileError("store file checksum mismatch");
    if (r.pos() != bytes.size()) throw CorruptFileError("trailing bytes after store checksum");
    return store;
}

void save_store(const MemoryStore& store, const std::string& path) { io::write_file(path, encode_store(store)); }

MemoryStore load_store(const std::string& path) {
    std::string bytes;
    try {
        bytes = io::read_file(path);
    } catch (const Error& e) {
        throw CorruptFileError(e.what());
    }
    try {
        return decode_store(bytes);
    } catch (const CorruptFileError& e) {
        throw CorruptFileError(path + ": " + e.what());
    }
}

} // namespace trailmap::memory
