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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "support.hpp"
#include "trailmap/bench/report.hpp"
#include "trailmap/bench/runner.hpp"
#include "trailmap/cli/cli.hpp"
#include "trailmap/core/io.hpp"
#include "trailmap/core/text.hpp"
#include "trailmap/device/simulator.hpp"
#include "trailmap/executor/executor.hpp"
#include "trailmap/llm/gateway.hpp"
#include "trailmap/llm/structured.hpp"
#include "trailmap/memory/ingest.hpp"
#include "trailmap/memory/store.hpp"
#include "trailmap/planner/plan.hpp"
#include "trailmap/ui/xml.hpp"

using namespace trailmap;
using llm::Role;
using testing::entry;

namespace {

// Pinned tolerances.
constexpr double kMetricTolerance = 1e-9;
constexpr int kRetrievalStores = 200;
constexpr int kQueriesPerStore = 10;
constexpr int kMaxChunks = 1000;
constexpr std::size_t kDim = 128;
constexpr int kIsolationRetrievals = 10000;
constexpr int kFuzzEpisodes = 1200;
constexpr int kConservationPlans = 500;
constexpr int kMetricReports = 1000;
constexpr int kUiTrees = 1200;
constexpr int kPersistedStores = 60;

struct Verdict {
    bool pass = true;
    std::string detail;
};

using WallClock = std::chrono::steady_clock;

std::string joined(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
    return out;
}

std::string user_prompt(const llm::ChatExchange& x) { return x.request.back().content; }

memory::EmbeddedChunk random_embedded(std::mt19937_64& rng, const std::string& app, std::size_t dim) {
    return {testing::random_chunk(rng, app), testing::random_unit_vector(rng, dim)};
}

// Random stores that also hold exact duplicate vectors, so ties are exercised.
memory::MemoryStore random_store(std::mt19937_64& rng, const std::vector<std::string>& apps, int max_chunks,
                                 std::size_t dim) {
    memory::MemoryStore store(dim);
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_chunks));
    std::vector<memory::Vector> pool;
    for (int i = 0; i < n; ++i) {
        const auto& app = apps[rng() % apps.size()];
        auto e = random_embedded(rng, app, dim);
        if (!pool.empty() && rng() % 8 == 0) e.vector = pool[rng() % pool.size()];
        pool.push_back(e.vector);
        store.insert(std::move(e));
    }
    return store;
}

Verdict retrieval_oracle() {
    std::mt19937_64 rng(1001);
    const std::vector<std::string> apps{"settings", "wechat", "play"};
    long long checked = 0;
    for (int s = 0; s < kRetrievalStores; ++s) {
        auto store = random_store(rng, apps, kMaxChunks, kDim);
        for (int q = 0; q < kQueriesPerStore; ++q) {
            const auto& app = apps[rng() % apps.size()];
            const int k = 1 + static_cast<int>(rng() % 12);
            memory::Vector query;
            const auto& coll = store.collection(app);
            if (!coll.empty() && rng() % 4 == 0) {
                query = coll[rng() % coll.size()].vector;
            } else {
                query = testing::random_unit_vector(rng, kDim);
            }
            auto got = memory::retrieve_vector(store, app, query, memory::RetrievalConfig{k, {}});
            std::vector<std::string> ids;
            for (const auto& r : got) ids.push_back(r.chunk.chunk_id);
            auto expected = testing::brute_force_top_k(store, app, query, k);
            if (ids != expected) {
                return {false, fmt::format("store {} query {}: got [{}], expected [{}]", s, q, joined(ids),
                                           joined(expected))};
            }
            ++checked;
        }
    }
    return {true, fmt::format("{} queries over {} stores match the brute-force top-k", checked, kRetrievalStores)};
}

Verdict app_isolation() {
    std::mt19937_64 rng(1002);
    const std::vector<std::string> apps{"settings", "wechat", "play", "shop"};
    const std::vector<std::string> queried{"settings", "wechat", "play", "shop", "calculator"};
    memory::HashingEmbedder embedder(32);
    int done = 0;
    long long returned = 0;
    while (done < kIsolationRetrievals) {
        auto store = random_store(rng, apps, 200, 32);
        for (int i = 0; i < 100 && done < kIsolationRetrievals; ++i, ++done) {
            const auto& app = queried[rng() % queried.size()];
            memory::RetrievalConfig cfg{1 + static_cast<int>(rng() % 20), {}};
            std::vector<memory::ScoredChunk> got;
            if (i % 2) {
                got = memory::retrieve_vector(store, app, testing::random_unit_vector(rng, 32), cfg);
            } else {
                got = memory::retrieve(store, app, "dark theme settings " + std::to_string(rng() % 50), cfg, embedder);
            }
            for (const auto& r : got) {
                if (r.chunk.app_id != app) {
                    return {false, "query for " + app + " returned a chunk of " + r.chunk.app_id};
                }
            }
            returned += static_cast<long long>(got.size());
        }
    }
    return {true, fmt::format("{} retrievals, {} chunks returned, none from another app", done, returned)};
}

// Adversarial decision-maker and judge responses.
std::string fuzz_dm(std::mt19937_64& rng) {
    static const std::vector<std::string> actions{
        "click(1)", "click(2)", "click(3)", "click(4)", "click(8)", "click(0)", "click(99)", "click(-1)",
        "type(1, \"hello\")", "type(2, \"x\")", "scroll(1, down)", "scroll(6, up)", "back()", "home()",
        "open_app(\"WeChat\")", "open_app(\"Nowhere\")", "open_app(\"Settings\")", "finish(\"done\")"};
    switch (rng() % 10) {
    case 0: return "no tags here";
    case 1: return "THOUGHT: only thinking\n";
    case 2: return "THOUGHT: t\nACTION: dance(3)\n";
    case 3: return "THOUGHT: t\nACTION: click(3)\nRECORD: k" + std::to_string(rng() % 3) + " = v\n";
    default: return "THOUGHT: t\nACTION: " + actions[rng() % actions.size()] + "\n";
    }
}

std::string fuzz_judge(std::mt19937_64& rng) {
    switch (rng() % 5) {
    case 0: return "garbage verdict";
    case 1: return "EVALUATION: e\nPROGRESS: p\nSUGGESTION: s\nSTATUS: perhaps\n";
    default:
        return fmt::format("EVALUATION: e{}\nPROGRESS: p{}\nSUGGESTION: s{}\nSTATUS: {}\n", rng() % 100, rng() % 100,
                           rng() % 100, rng() % 2 ? "succeeded" : "failed");
    }
}

Verdict fuzz_episodes() {
    std::mt19937_64 rng(1003);
    auto apps = testing::fixture_apps();
    const std::vector<std::string> app_ids{"settings", "wechat", "play", "shop"};
    static const std::regex shape_judge("^DM( ENV JU DM| DM)*$");
    static const std::regex shape_plain("^DM( ENV DM| DM)*$");
    int never_finishing = 0, invalid_labels = 0;
    for (int ep = 0; ep < kFuzzEpisodes; ++ep) {
        std::vector<llm::ScriptEntry> entries;
        const int scripted = static_cast<int>(rng() % 40);
        for (int i = 0; i < scripted; ++i) entries.push_back(entry(Role::decision_maker, {}, fuzz_dm(rng)));
        for (int i = 0; i < 10; ++i) entries.push_back(entry(Role::judge, {}, fuzz_judge(rng)));
        // Fallbacks: never finish, or aim at a label that does not exist.
        const bool endless = rng() % 2;
        never_finishing += endless;
        entries.push_back(entry(Role::decision_maker, {},
                                endless ? "THOUGHT: keep going\nACTION: back()\n" : "THOUGHT: t\nACTION: click(77)\n",
                                true));
        entries.push_back(entry(Role::judge, {}, fuzz_judge(rng), true));
        llm::Gateway gateway(std::make_shared<llm::ScriptedBackend>(llm::ScriptBook{"fuzz", std::move(entries)}),
                             std::make_shared<TickClock>());

        planner::FinePlan plan;
        const int segments = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < segments; ++s) {
            const auto& id = app_ids[rng() % app_ids.size()];
            plan.per_app.push_back({id, id, {{s + 1, "subtask"}}, {"step one", "step two"}, {}});
        }
        device::SimulatedDevice dev(apps);
        dev.reset(rng() % 3 ? std::optional<std::string>(plan.per_app[0].app_id) : std::nullopt);
        executor::ExecutorOptions opts;
        opts.max_steps = 1 + static_cast<int>(rng() % 15);
        opts.use_judge = rng() % 4 != 0;
        auto r = executor::run_episode({"fuzz", "fuzz task"}, plan, dev, gateway, opts);
        invalid_labels += r.invalid_actions;

        auto fail = [&](const std::string& why) {
            return Verdict{false, fmt::format("episode {}: {} (log: {})", ep, why, joined(gateway.transcript().call_log()))};
        };
        if (r.termination == executor::Termination::hard_error) return fail("hard error: " + r.error);
        if (r.steps_taken > opts.max_steps) return fail("exceeded max_steps");
        if (r.turns > opts.max_steps) return fail("exceeded the turn budget");
        const auto& t = r.trajectory;
        if (t.observations.size() != t.actions.size() + 1) return fail("trajectory does not alternate");
        if (static_cast<int>(t.actions.size()) != r.steps_taken) return fail("trajectory length != env steps");
        for (const auto& a : t.actions) {
            if (device::is_finish(a)) return fail("finish reached the environment");
        }
        if (dev.state().step_counter + r.invalid_actions != r.steps_taken) return fail("device step count mismatch");
        int env_events = 0;
        for (const auto& seg : gateway.transcript().segment_logs()) {
            if (!std::regex_match(joined(seg), opts.use_judge ? shape_judge : shape_plain)) {
                return fail("segment log '" + joined(seg) + "' has the wrong shape");
            }
            for (const auto& c : seg) env_events += c == "ENV";
        }
        if (env_events != r.steps_taken) return fail("ENV events != env steps");
    }
    return {true, fmt::format("{} fuzzed episodes ({} never finishing, {} rejected actions), no violations",
                              kFuzzEpisodes, never_finishing, invalid_labels)};
}

// Walks a transcript and checks every JU verdict shows up in the next DM
// prompt of the same segment.
std::optional<std::string> verdicts_forwarded(const llm::Transcript& t) {
    std::optional<executor::JudgeVerdict> pending;
    int seen = 0;
    for (const auto& ev : t.events()) {
        if (std::holds_alternative<llm::MarkerEvent>(ev)) {
            if (pending) return "verdict not followed by a decision before the segment ended";
            continue;
        }
        const auto* x = std::get_if<llm::ChatExchange>(&ev);
        if (!x) continue;
        if (x->role == Role::judge) {
            auto f = llm::parse_structured(x->response_text, {"EVALUATION", "PROGRESS", "SUGGESTION", "STATUS"}, {});
            pending = executor::JudgeVerdict{f.at("EVALUATION"), f.at("PROGRESS"), f.at("SUGGESTION"),
                                             executor::JudgeStatus::unclear, false};
        } else if (x->role == Role::decision_maker && pending) {
            auto prompt = user_prompt(*x);
            for (const auto* s : {&pending->evaluation, &pending->progress, &pending->suggestion}) {
                if (prompt.find(*s) == std::string::npos) return "verdict text '" + *s + "' missing from DM prompt";
            }
            if (prompt.find(executor::render_judge_feedback(*pending)) == std::string::npos) {
                return "judge feedback block missing from DM prompt";
            }
            pending.reset();
            ++seen;
        }
    }
    if (pending) return "last verdict never reached a decision";
    return std::nullopt;
}

Verdict loop_order() {
    static const std::regex shape("^DM( ENV JU DM)*$");
    int episodes = 0, segments = 0;
    for (const char* path : {"suites/en.yaml", "suites/cn.yaml"}) {
        testing::SuiteRig rig(testing::fixture(path));
        for (auto ablation : {bench::Ablation::full, bench::Ablation::no_memory}) {
            bench::SuiteConfig cfg;
            cfg.ablation = ablation;
            auto report = bench::run_suite(rig.suite, cfg, rig.handles);
            for (const auto& task : report.per_task) {
                const std::string where = fmt::format("{} {} ({})", path, task.task_id, bench::label(ablation));
                if (!task.transcript) return {false, where + ": no transcript"};
                for (const auto& seg : task.transcript->segment_logs()) {
                    if (!std::regex_match(joined(seg), shape)) return {false, where + ": log '" + joined(seg) + "'"};
                    ++segments;
                }
                if (auto why = verdicts_forwarded(*task.transcript)) return {false, where + ": " + *why};
                ++episodes;
            }
        }
    }
    return {true, fmt::format("{} fixture episodes, {} segments match DM (ENV JU DM)*, verdicts forwarded verbatim",
                              episodes, segments)};
}

Verdict conservation() {
    std::mt19937_64 rng(1005);
    auto installed = device::SimulatedDevice(testing::fixture_apps()).installed_apps();
    memory::MemoryStore store;
    memory::HashingEmbedder embedder;
    memory::seed_store(memory::load_chunk_seed(testing::fixture("memory_seed.yaml")), store, embedder);
    for (int trial = 0; trial < kConservationPlans; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        std::string coarse = "SUBTASKS:\n";
        std::vector<std::string> texts;
        for (int i = 1; i <= n; ++i) {
            texts.push_back(fmt::format("subtask {} of trial {}", i, trial));
            coarse += fmt::format("{}. {}\n", i, texts.back());
        }
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 1);
        std::shuffle(order.begin(), order.end(), rng);
        std::string assign = "ASSIGNMENTS:\n";
        for (int i : order) {
            const auto& app = installed[rng() % installed.size()];
            assign += fmt::format("{} -> {}\n", i, rng() % 2 ? app.app_id : app.app_name);
        }
        llm::Gateway g(std::make_shared<llm::ScriptedBackend>(llm::ScriptBook{
            "conservation",
            {entry(Role::planner, {"Decompose the task."}, coarse), entry(Role::scheduler, {}, assign),
             entry(Role::planner, {"Refine the plan."}, "STEPS:\n1. do it\n", true)}}));
        auto r = planner::plan_task({"c", "randomized task"}, installed, store, {}, g, embedder, rng() % 2);

        std::multiset<std::pair<int, std::string>> coarse_set, sched_set, fine_set;
        for (const auto& s : r.coarse.subtasks) coarse_set.insert({s.index, s.text});
        for (const auto& a : r.schedule.assignments) {
            for (const auto& s : a.subtasks) sched_set.insert({s.index, s.text});
        }
        if (coarse_set != sched_set) return {false, fmt::format("trial {}: schedule changed the subtask set", trial)};
        if (r.fine.per_app.size() != r.schedule.assignments.size()) {
            return {false, fmt::format("trial {}: fine plan has {} apps, schedule {}", trial, r.fine.per_app.size(),
                                       r.schedule.assignments.size())};
        }
        for (std::size_t i = 0; i < r.fine.per_app.size(); ++i) {
            const auto& f = r.fine.per_app[i];
            const auto& a = r.schedule.assignments[i];
            if (f.app_id != a.app_id || f.subtasks != a.subtasks) {
                return {false, fmt::format("trial {}: fine plan entry {} differs from the schedule", trial, i)};
            }
        }
        std::size_t total = 0;
        for (const auto& a : r.schedule.assignments) total += a.subtasks.size();
        if (total != static_cast<std::size_t>(n) || coarse_set.size() != static_cast<std::size_t>(n)) {
            return {false, fmt::format("trial {}: subtask count changed", trial)};
        }
    }
    return {true, fmt::format("{} randomized plans conserve subtasks and keep the app order", kConservationPlans)};
}

std::vector<llm::ChatExchange> fine_prompts(const llm::Transcript& t) {
    std::vector<llm::ChatExchange> out;
    for (const auto& x : t.exchanges()) {
        if (x.template_name == "planner_fine" && x.attempt == 0) out.push_back(x);
    }
    return out;
}

Verdict ablation_wiring() {
    int compared = 0, judge_calls = 0;
    for (const char* path : {"suites/en.yaml", "suites/cn.yaml"}) {
        testing::SuiteRig rig(testing::fixture(path));
        auto reports = bench::run_ablations(rig.suite, {}, rig.handles);
        for (const auto* r : {&reports[2], &reports[3]}) {
            for (const auto& t : r->per_task) {
                judge_calls += t.judge_calls;
                for (const auto& x : t.transcript->exchanges()) judge_calls += x.role == Role::judge;
            }
        }
        for (std::size_t i = 0; i < reports[0].per_task.size(); ++i) {
            const auto& full = reports[0].per_task[i];
            const auto& bare = reports[1].per_task[i];
            if (!full.plan || !bare.plan) return {false, full.task_id + ": planning did not complete"};
            auto a = fine_prompts(*full.transcript);
            auto b = fine_prompts(*bare.transcript);
            if (a.size() != b.size() || a.size() != full.plan->fine.per_app.size()) {
                return {false, full.task_id + ": fine-planner call counts differ"};
            }
            for (std::size_t j = 0; j < a.size(); ++j) {
                auto section = planner::render_retrieved_pages(full.plan->fine.per_app[j].retrieved);
                auto stripped = user_prompt(a[j]);
                if (!section.empty()) {
                    auto pos = stripped.find(section);
                    if (pos == std::string::npos) return {false, full.task_id + ": retrieved section not in prompt"};
                    stripped.erase(pos, section.size());
                }
                if (stripped != user_prompt(b[j]) || a[j].request.front().content != b[j].request.front().content) {
                    return {false, fmt::format("{}: w/o M fine prompt {} differs beyond the retrieved section",
                                               full.task_id, j)};
                }
                ++compared;
            }
        }
    }
    if (judge_calls != 0) return {false, fmt::format("{} judge calls in judge-less configurations", judge_calls)};
    return {true, fmt::format("0 judge calls without the judge; {} fine prompts identical up to the retrieved pages",
                              compared)};
}

Verdict metric_arithmetic() {
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> wall(0.0, 20.0);
    const llm::CostModel cost{0.0025, 0.01};
    double worst = 0.0;
    for (int trial = 0; trial < kMetricReports; ++trial) {
        bench::SuiteReport report;
        const int n = static_cast<int>(rng() % 30);
        long long successes = 0, steps = 0;
        long double wall_sum = 0, cost_sum = 0;
        for (int i = 0; i < n; ++i) {
            bench::TaskOutcome t;
            t.task_id = "t" + std::to_string(i);
            t.success = rng() % 3 != 0;
            t.steps = static_cast<int>(rng() % 25);
            std::vector<llm::Usage> usages;
            for (int c = static_cast<int>(rng() % 12); c > 0; --c) {
                usages.push_back({static_cast<long long>(rng() % 5000), static_cast<long long>(rng() % 800)});
            }
            for (int s = 0; s < t.steps; ++s) t.wall_time_s += wall(rng);
            t.cost_usd = llm::accumulate_cost(usages, cost);
            successes += t.success;
            steps += t.steps;
            wall_sum += t.wall_time_s;
            long double c = 0;
            for (const auto& u : usages) {
                c += static_cast<long double>(u.prompt_tokens) / 1000 * 0.0025L +
                     static_cast<long double>(u.completion_tokens) / 1000 * 0.01L;
            }
            if (std::abs(static_cast<double>(c) - t.cost_usd) > kMetricTolerance) {
                return {false, fmt::format("trial {}: cost {} vs {}", trial, t.cost_usd, static_cast<double>(c))};
            }
            cost_sum += c;
            report.per_task.push_back(t);
        }
        bench::compute_metrics(report);
        const double sr = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
        const double mts = steps ? static_cast<double>(wall_sum / steps) : 0.0;
        const double mtc = steps ? static_cast<double>(cost_sum / steps) : 0.0;
        if (report.success_rate != sr) return {false, fmt::format("trial {}: SR {} vs {}", trial, report.success_rate, sr)};
        const double err = std::max(std::abs(report.mts_seconds - mts), std::abs(report.mtc_usd - mtc));
        worst = std::max(worst, err);
        if (err > kMetricTolerance) return {false, fmt::format("trial {}: MTS/MTC off by {}", trial, err)};
    }
    return {true, fmt::format("{} synthetic reports: SR exact, MTS/MTC max error {:.3g} <= {:.0e}", kMetricReports,
                              worst, kMetricTolerance)};
}

Verdict ablation_trend() {
    std::string detail;
    bool pass = true;
    for (const char* path : {"suites/en.yaml", "suites/cn.yaml"}) {
        testing::SuiteRig rig(testing::fixture(path));
        auto r = bench::run_ablations(rig.suite, {}, rig.handles);
        const double full = r[0].success_rate, no_m = r[1].success_rate, no_j = r[2].success_rate,
                     none = r[3].success_rate;
        pass = pass && full > no_m && full > no_j;
        detail += fmt::format("{}{}: full {:.3f}, w/o M {:.3f}, w/o J {:.3f}, w/o M & J {:.3f}", detail.empty() ? "" : "; ",
                              rig.suite.name, full, no_m, no_j, none);
    }
    return {pass, detail};
}

Verdict ui_round_trip() {
    std::mt19937_64 rng(1009);
    for (int i = 0; i < kUiTrees; ++i) {
        auto tree = testing::random_tree(rng, 1 + static_cast<int>(rng() % 80));
        auto xml = ui::serialize_ui_tree(tree);
        auto back = ui::parse_ui_xml(xml);
        if (!(back == tree)) return {false, fmt::format("tree {}: parse(serialize(t)) != t", i)};
        if (ui::serialize_ui_tree(back) != xml) return {false, fmt::format("tree {}: serialization not stable", i)};
        if (ui::extract_interactive(tree) != testing::brute_force_interactive(tree)) {
            return {false, fmt::format("tree {}: extraction differs from the brute-force filter", i)};
        }
    }
    return {true, fmt::format("{} random trees round-trip and match the brute-force extraction", kUiTrees)};
}

Verdict persistence() {
    std::mt19937_64 rng(1010);
    testing::TempDir dir;
    const std::vector<std::string> apps{"settings", "wechat", "play", "shop", "设置"};
    long long chunks = 0;
    for (int s = 0; s < kPersistedStores; ++s) {
        const std::size_t dim = 1 + rng() % 200;
        auto store = random_store(rng, apps, 300, dim);
        if (s % 10 == 0) store = memory::MemoryStore(dim);
        const auto path = dir.file(fmt::format("s{}.bin", s));
        memory::save_store(store, path);
        auto back = memory::load_store(path);
        if (!(back == store)) return {false, fmt::format("store {}: structure differs after reload", s)};
        for (const auto& [app, coll] : store.collections()) {
            const auto& other = back.collection(app);
            for (std::size_t i = 0; i < coll.size(); ++i) {
                if (std::memcmp(coll[i].vector.data(), other[i].vector.data(), dim * sizeof(double)) != 0) {
                    return {false, fmt::format("store {}: vector bits differ", s)};
                }
            }
            chunks += static_cast<long long>(coll.size());
        }
        if (memory::encode_store(back) != io::read_file(path)) return {false, fmt::format("store {}: re-encode differs", s)};
    }
    return {true, fmt::format("{} stores ({} chunks) reload bit-exact", kPersistedStores, chunks)};
}

Verdict end_to_end() {
    testing::TempDir dir;
    std::string first;
    const auto start = WallClock::now();
    for (int run = 0; run < 2; ++run) {
        const auto out_path = dir.file(fmt::format("t07-{}.jsonl", run));
        std::vector<std::string> args{"trailmap", "--clock", "tick", "run", "--suite",
                                      testing::fixture("suites/en.yaml"), "--task", "t07", "--transcript", out_path};
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, [](const char*) { return nullptr; });
        if (code != cli::kExitOk) return {false, fmt::format("run exited {}: {}", code, err.str())};
        auto transcript = io::read_file(out_path);
        if (run == 0) {
            first = transcript;
        } else if (transcript != first) {
            return {false, "transcript differs between two runs"};
        }
    }
    const double seconds = std::chrono::duration<double>(WallClock::now() - start).count();
    if (first != io::read_file(testing::golden_path("t07_transcript.jsonl"))) {
        return {false, "transcript differs from the golden file"};
    }
    return {true, fmt::format("t07 succeeds; transcript byte-identical to the golden across runs ({:.2f} s for 2 runs)",
                              seconds)};
}

} // namespace

int main() {
    spdlog::set_level(spdlog::level::off);
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"retrieval-oracle", retrieval_oracle},
        {"app-isolation", app_isolation},
        {"trajectory-alternation-and-budget", fuzz_episodes},
        {"loop-order", loop_order},
        {"coarse-to-fine-conservation", conservation},
        {"ablation-wiring", ablation_wiring},
        {"metric-arithmetic", metric_arithmetic},
        {"fixture-ablation-trend", ablation_trend},
        {"ui-round-trip-and-extraction", ui_round_trip},
        {"persistence-round-trip", persistence},
        {"end-to-end-golden", end_to_end},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = WallClock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(WallClock::now() - start).count();
        std::cout << fmt::format("{} {}: {} [{:.2f} s]\n", v.pass ? "PASS" : "FAIL", name, v.detail, seconds)
                  << std::flush;
        failed += v.pass ? 0 : 1;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                             criteria.size());
    return failed == 0 ? 0 : 1;
}
