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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "trailmap/core/io.hpp"
#include "trailmap/memory/ingest.hpp"

#ifndef TRAILMAP_FIXTURES_DIR
#error "TRAILMAP_FIXTURES_DIR must be defined"
#endif
#ifndef TRAILMAP_GOLDEN_DIR
#error "TRAILMAP_GOLDEN_DIR must be defined"
#endif

namespace trailmap::testing {

namespace fs = std::filesystem;

std::string fixture(const std::string& relative) { return std::string(TRAILMAP_FIXTURES_DIR) + "/" + relative; }

std::string golden_path(const std::string& name) { return std::string(TRAILMAP_GOLDEN_DIR) + "/" + name; }

bool golden_matches(const std::string& name, const std::string& actual) {
    const auto path = golden_path(name);
    if (const char* update = std::getenv("TRAILMAP_UPDATE_GOLDEN"); update && *update) {
        io::write_file(path, actual);
        return true;
    }
    std::string expected;
    try {
        expected = io::read_file(path);
    } catch (const Error& e) {
        std::cerr << "golden file missing: " << path << "\n";
        return false;
    }
    if (expected == actual) return true;
    std::size_t i = 0;
    while (i < expected.size() && i < actual.size() && expected[i] == actual[i]) ++i;
    std::cerr << "golden mismatch for " << name << " at byte " << i << "\n--- expected\n"
              << expected.substr(i > 80 ? i - 80 : 0, 240) << "\n--- actual\n"
              << actual.substr(i > 80 ? i - 80 : 0, 240) << "\n";
    return false;
}

TempDir::TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = fs::temp_directory_path() / ("trailmap-test-" + std::to_string(rng()));
        if (fs::create_directory(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw Error("could not create a temporary directory");
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::vector<device::AppGraphPtr> fixture_apps() { return device::load_app_dir(fixture("apps")); }

namespace {

const std::vector<std::string>& text_pool() {
    static const std::vector<std::string> pool{
        "",        "OK",         "Settings",         "Wi-Fi & network", "a < b > c", "say \"hi\"",
        "it's",    "tab\there",  "two\nlines",       "cr\rhere",        "  padded  ", "暗色模式",
        "Größe",   "emoji 🙂",   "&amp; literal",    "]]>",             "x=1;y=2",    "{state:wifi}",
    };
    return pool;
}

ui::UiNode random_node(std::mt19937_64& rng, int id) {
    const auto& pool = text_pool();
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    static const std::vector<std::string> classes{"Button", "TextView", "ImageView", "EditText", "Toolbar",
                                                  "LinearLayout", "RecyclerView", "Switch", ""};
    ui::UiNode n;
    n.id = "n" + std::to_string(id);
    n.cls = pick(classes);
    n.text = pick(pool);
    n.content_desc = pick(pool);
    n.clickable = rng() % 2;
    n.scrollable = rng() % 4 == 0;
    n.editable = rng() % 5 == 0;
    n.enabled = rng() % 5 != 0;
    int l = static_cast<int>(rng() % 1000), t = static_cast<int>(rng() % 2000);
    n.bounds = {l, t, l + static_cast<int>(rng() % 400), t + static_cast<int>(rng() % 300)};
    return n;
}

} // namespace

ui::UiTree random_tree(std::mt19937_64& rng, int nodes) {
    if (nodes < 1) nodes = 1;
    // Build a parent array first, then materialize children in order.
    std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
    for (int i = 1; i < nodes; ++i) parent[static_cast<std::size_t>(i)] = static_cast<int>(rng() % i);
    std::vector<ui::UiNode> flat;
    for (int i = 0; i < nodes; ++i) flat.push_back(random_node(rng, i));
    for (int i = nodes - 1; i >= 1; --i) {
        auto& p = flat[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        p.children.insert(p.children.begin(), std::move(flat[static_cast<std::size_t>(i)]));
    }
    return ui::UiTree{std::move(flat[0])};
}

std::vector<ui::InteractiveElement> brute_force_interactive(const ui::UiTree& tree) {
    std::vector<const ui::UiNode*> order;
    std::vector<const ui::UiNode*> stack{&tree.root};
    while (!stack.empty()) {
        const auto* n = stack.back();
        stack.pop_back();
        order.push_back(n);
        for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
    }
    std::vector<ui::InteractiveElement> out;
    for (const auto* n : order) {
        if (!n->enabled) continue;
        ui::AffordanceSet a;
        if (n->clickable) a.insert(ui::Affordance::click);
        if (n->editable) a.insert(ui::Affordance::type);
        if (n->scrollable) a.insert(ui::Affordance::scroll);
        if (!a.empty()) out.push_back({n->id, a});
    }
    return out;
}

double reference_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<long double>(a[i]) * b[i];
        na += static_cast<long double>(a[i]) * a[i];
        nb += static_cast<long double>(b[i]) * b[i];
    }
    return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

std::vector<std::string> brute_force_top_k(const memory::MemoryStore& store, const std::string& app_id,
                                           const std::vector<double>& query, int k) {
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& [app, chunks] : store.collections()) {
        for (const auto& c : chunks) {
            if (c.chunk.app_id != app_id) continue;
            scored.emplace_back(reference_cosine(query, c.vector), c.chunk.chunk_id);
        }
    }
    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(k); ++i) out.push_back(scored[i].second);
    return out;
}

std::vector<double> random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal;
    std::vector<double> v(dim);
    double norm = 0;
    do {
        norm = 0;
        for (auto& x : v) {
            x = normal(rng);
            norm += x * x;
        }
    } while (norm == 0);
    for (auto& x : v) x /= std::sqrt(norm);
    return v;
}

memory::PageChunk random_chunk(std::mt19937_64& rng, const std::string& app_id) {
    static const std::vector<std::string> words{"settings", "display", "dark",  "theme",  "network", "chat",
                                                "contacts", "cart",    "order", "search", "general", "wifi",
                                                "battery",  "sound",   "页面",  "设置",   "profile", "about"};
    auto phrase = [&](int n) {
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? " " : "") + words[rng() % words.size()];
        return s;
    };
    memory::PageChunk c;
    c.app_id = app_id;
    c.page_label = phrase(2) + " " + std::to_string(rng() % 100000);
    c.page_description = phrase(8);
    for (int i = static_cast<int>(rng() % 4); i > 0; --i) c.key_ui_elements.push_back({phrase(1), phrase(3)});
    c.action_path = phrase(5);
    c.source_task = phrase(4);
    c.created_at = memory::Timestamp(std::chrono::nanoseconds(static_cast<long long>(rng() % 4000000000000000000ULL)));
    memory::finalize(c);
    return c;
}

llm::ScriptEntry entry(llm::Role role, std::vector<std::string> contains, std::string response, bool repeat) {
    llm::ScriptEntry e;
    e.role = role;
    e.contains = std::move(contains);
    e.response = std::move(response);
    e.repeat = repeat;
    return e;
}

SuiteRig::SuiteRig(const std::string& suite_path) : suite(bench::load_suite(suite_path)) {
    if (!suite.memory_seed.empty()) memory::seed_store(memory::load_chunk_seed(suite.memory_seed), store, embedder);
    handles.apps = device::load_app_dir(suite.apps_dir);
    handles.store = &store;
    handles.embedder = &embedder;
    handles.backend = [](const bench::TaskSpec& t) {
        return std::make_shared<llm::ScriptedBackend>(llm::load_scriptbook(t.script));
    };
    handles.clock = [] { return std::make_shared<TickClock>(); };
}

} // namespace trailmap::testing
