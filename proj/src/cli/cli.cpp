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

#include "trailmap/cli/cli.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "trailmap/bench/report.hpp"
#include "trailmap/bench/runner.hpp"
#include "trailmap/core/io.hpp"
#include "trailmap/core/text.hpp"
#include "trailmap/core/yaml_fields.hpp"
#include "trailmap/device/simulator.hpp"
#include "trailmap/llm/http_backend.hpp"
#include "trailmap/llm/scripted_backend.hpp"
#include "trailmap/memory/ingest.hpp"
#include "trailmap/memory/retriever.hpp"

namespace trailmap::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

void merge(ConfigLayer& dst, const ConfigLayer& src) {
    take(dst.backend, src.backend);
    take(dst.scriptbook, src.scriptbook);
    take(dst.model, src.model);
    take(dst.base_url, src.base_url);
    take(dst.api_key, src.api_key);
    take(dst.embedder, src.embedder);
    take(dst.embed_dim, src.embed_dim);
    take(dst.store_path, src.store_path);
    take(dst.apps_dir, src.apps_dir);
    take(dst.use_memory, src.use_memory);
    take(dst.use_judge, src.use_judge);
    take(dst.max_steps, src.max_steps);
    take(dst.k, src.k);
    take(dst.parallelism, src.parallelism);
    take(dst.seed, src.seed);
    take(dst.format, src.format);
    take(dst.clock, src.clock);
}

std::optional<std::string> resolved_path(yaml::Fields& f, const std::string& key, const fs::path& base) {
    auto v = f.opt_str(key);
    if (!v || v->empty()) return v;
    fs::path p(*v);
    return (p.is_absolute() ? p : base / p).lexically_normal().string();
}

std::optional<int> opt_int(yaml::Fields& f, const std::string& key) {
    if (!f.has(key)) return std::nullopt;
    return f.integer(key, 0);
}

std::optional<bool> opt_bool(yaml::Fields& f, const std::string& key) {
    if (!f.has(key)) return std::nullopt;
    return f.boolean(key, false);
}

// Everything one command needs, built from a resolved configuration.
struct Runtime {
    CliConfig cfg;
    std::vector<device::AppGraphPtr> apps;
    std::unique_ptr<memory::Embedder> embedder;
    std::optional<memory::MemoryStore> store;

    llm::HttpConfig http() const {
        llm::HttpConfig h;
        h.base_url = cfg.base_url;
        h.model = cfg.model;
        h.api_key = cfg.api_key;
        return h;
    }

    std::shared_ptr<llm::ChatBackend> backend(const std::string& scriptbook) const {
        if (cfg.backend == "http") return std::make_shared<llm::HttpChatBackend>(http());
        if (scriptbook.empty()) throw ValidationError("scriptbook", "the scripted backend needs a scriptbook");
        return std::make_shared<llm::ScriptedBackend>(llm::load_scriptbook(scriptbook));
    }

    std::shared_ptr<Clock> clock() const {
        if (cfg.clock == "tick") return std::make_shared<TickClock>();
        return std::make_shared<SteadyClock>();
    }

    void load_apps() {
        if (cfg.apps_dir.empty()) throw ValidationError("apps_dir", "an app-graph directory is required");
        apps = device::load_app_dir(cfg.apps_dir);
    }

    void make_embedder(std::size_t dim) {
        if (cfg.embedder == "http") {
            auto h = http();
            h.model = "text-embedding-3-small";
            embedder = std::make_unique<memory::HttpEmbedder>(h, dim);
        } else {
            embedder = std::make_unique<memory::HashingEmbedder>(dim, 0);
        }
    }

    // Loads the configured store when the file exists; otherwise starts an
    // empty one of the configured dimension.
    void open_store(bool must_exist) {
        if (!cfg.store_path.empty() && fs::exists(cfg.store_path)) {
            store = memory::load_store(cfg.store_path);
        } else if (must_exist) {
            throw Error("memory store not found: " + (cfg.store_path.empty() ? "(none given)" : cfg.store_path));
        } else {
            store.emplace(static_cast<std::size_t>(cfg.embed_dim));
        }
        make_embedder(store->dim());
    }
};

std::string location(const device::Observation& o) { return o.app_id + " / " + o.page_id; }

void indent_block(std::string& out, const std::string& head, const std::string& body) {
    auto lines = text::split_lines(text::trim(body));
    std::string pad(head.size() + 1, ' ');
    for (std::size_t i = 0; i < lines.size(); ++i) out += (i == 0 ? head + " " : pad) + lines[i] + "\n";
    if (lines.empty()) out += head + "\n";
}

// --- explore -------------------------------------------------------------

struct ExploreArgs {
    std::string app_id;
    std::string policy = "random-walk";
    int episodes = 1;
    std::string actions_file;
    std::string out_dir = ".";
    std::vector<std::string> goal_pages;
};

std::vector<device::Action> walk_candidates(const device::Observation& obs) {
    std::vector<device::Action> out;
    for (const auto& e : obs.som.entries) {
        if (e.affordances.has(ui::Affordance::click)) out.push_back(device::action::Click{e.label});
        if (e.affordances.has(ui::Affordance::type)) out.push_back(device::action::Type{e.label, "test"});
        if (e.affordances.has(ui::Affordance::scroll)) {
            out.push_back(device::action::Scroll{e.label, device::ScrollDirection::down});
            out.push_back(device::action::Scroll{e.label, device::ScrollDirection::up});
        }
    }
    out.push_back(device::action::Back{});
    return out;
}

std::vector<device::Action> read_action_list(const std::string& path) {
    std::vector<device::Action> out;
    for (const auto& line : text::split_lines(io::read_file(path))) {
        auto t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(device::parse_action(t));
    }
    return out;
}

int cmd_explore(Runtime& rt, const ExploreArgs& a, std::ostream& out) {
    rt.load_apps();
    device::SimulatedDevice dev(rt.apps);
    const auto* app = dev.app(a.app_id);
    if (!app) throw Error("unknown app '" + a.app_id + "'");
    if (a.policy != "random-walk" && a.policy != "scripted") {
        throw ValidationError("policy", "expected random-walk or scripted");
    }
    if (a.episodes < 0) throw ValidationError("episodes", "must not be negative");
    for (const auto& p : a.goal_pages) {
        if (!app->page(p)) throw ValidationError("goal-page", "app '" + a.app_id + "' has no page '" + p + "'");
    }
    std::vector<device::Action> script;
    if (a.policy == "scripted") script = read_action_list(a.actions_file);
    const int max_steps = rt.cfg.max_steps.value_or(30);

    auto reached = [&](const device::Observation& o) {
        if (o.app_id != a.app_id) return false;
        for (const auto& p : a.goal_pages) {
            if (p == o.page_id) return true;
        }
        const auto* page = app->page(o.page_id);
        return page && page->terminal;
    };

    if (a.episodes > 0) fs::create_directories(a.out_dir);
    for (int ep = 0; ep < a.episodes; ++ep) {
        std::mt19937_64 rng(rt.cfg.seed + static_cast<std::uint64_t>(ep));
        device::Trajectory traj;
        traj.task = "Explore " + app->app_name;
        traj.app_id = a.app_id;
        auto obs = dev.reset(a.app_id);
        traj.start(obs);
        bool success = reached(obs);
        for (int step = 0; step < max_steps; ++step) {
            if (a.policy == "scripted" && static_cast<std::size_t>(step) >= script.size()) break;
            if (a.policy == "random-walk" && success) break;
            device::Action action;
            if (a.policy == "scripted") {
                action = script[static_cast<std::size_t>(step)];
            } else {
                auto candidates = walk_candidates(obs);
                action = candidates[rng() % candidates.size()];
            }
            if (device::is_finish(action)) break;
            auto r = dev.step(action);
            obs = r.observation;
            traj.append(action, obs);
            success = success || reached(obs);
            if (obs.app_id != a.app_id) break;
        }
        traj.success = success;
        auto name = a.policy == "scripted" ? fmt::format("{}-scripted-{}.json", a.app_id, ep)
                                           : fmt::format("{}-walk-s{}-{}.json", a.app_id, rt.cfg.seed, ep);
        auto path = (fs::path(a.out_dir) / name).string();
        device::save_trajectory(traj, path);
        out << fmt::format("{} ({} actions, {})\n", path, traj.actions.size(), success ? "success" : "no goal");
    }
    out << fmt::format("{} trajectories written\n", a.episodes);
    return kExitOk;
}

// --- ingest --------------------------------------------------------------

struct IngestArgs {
    std::vector<std::string> trajectories;
    std::string chunks_file;
    bool keep_failed = false;
};

int cmd_ingest(Runtime& rt, const IngestArgs& a, std::ostream& out) {
    if (rt.cfg.store_path.empty()) throw ValidationError("store", "ingest needs --store");
    if (a.trajectories.empty() && a.chunks_file.empty()) {
        throw ValidationError("trajectories", "give trajectory files or --chunks");
    }
    rt.open_store(false);
    std::map<std::string, int> added;
    int total = 0;
    if (!a.chunks_file.empty()) {
        auto chunks = memory::load_chunk_seed(a.chunks_file);
        for (const auto& c : chunks) {
            if (rt.store->contains(c.app_id, c.chunk_id)) {
                added.try_emplace(c.app_id, 0);
                continue;
            }
            bool inserted = rt.store->insert({c, rt.embedder->embed(memory::chunk_text(c))});
            added[c.app_id] += inserted ? 1 : 0;
            total += inserted ? 1 : 0;
        }
    }
    if (!a.trajectories.empty()) {
        llm::Gateway gw(rt.backend(rt.cfg.scriptbook), rt.clock());
        memory::IngestOptions opts;
        opts.filter_failed = !a.keep_failed;
        if (rt.cfg.clock == "tick") opts.now = [] { return memory::Timestamp{}; };
        for (const auto& path : a.trajectories) {
            auto traj = device::load_trajectory(path);
            int n = memory::ingest_trajectory(traj, *rt.store, gw, *rt.embedder, opts);
            added[traj.app_id] += n;
            total += n;
        }
    }
    memory::save_store(*rt.store, rt.cfg.store_path);
    for (const auto& [app, n] : added) out << fmt::format("{}: {} chunks added\n", app, n);
    out << fmt::format("total: {} chunks added, store now holds {}\n", total, rt.store->size());
    return kExitOk;
}

// --- plan / run ----------------------------------------------------------

struct TaskArgs {
    std::string text;
    std::string suite;
    std::string task_id;
    std::string start_app;
    std::string transcript_out;
};

struct ResolvedTask {
    planner::UserTask task;
    std::optional<bench::Goal> goal;
    std::optional<std::string> start_app;
    std::string scriptbook;
    std::optional<int> max_steps;
};

ResolvedTask resolve_task(Runtime& rt, const TaskArgs& a) {
    ResolvedTask r;
    r.scriptbook = rt.cfg.scriptbook;
    if (!a.suite.empty()) {
        if (a.task_id.empty()) throw ValidationError("task", "--suite needs --task");
        auto suite = bench::load_suite(a.suite);
        if (rt.cfg.apps_dir.empty()) rt.cfg.apps_dir = suite.apps_dir;
        const bench::TaskSpec* spec = nullptr;
        for (const auto& t : suite.tasks) {
            if (t.id == a.task_id) spec = &t;
        }
        if (!spec) throw ValidationError("task", "suite has no task '" + a.task_id + "'");
        r.task = {spec->id, spec->text};
        r.goal = spec->goal;
        r.start_app = spec->start_app;
        r.max_steps = spec->max_steps;
        if (r.scriptbook.empty()) r.scriptbook = spec->script;
        rt.load_apps();
        bench::validate_suite(suite, rt.apps);
        if (rt.cfg.store_path.empty() && !suite.memory_seed.empty() && rt.cfg.use_memory) {
            rt.store.emplace(static_cast<std::size_t>(rt.cfg.embed_dim));
            rt.make_embedder(rt.store->dim());
            memory::seed_store(memory::load_chunk_seed(suite.memory_seed), *rt.store, *rt.embedder);
        }
    } else {
        if (a.text.empty()) throw ValidationError("task", "give the task text or --suite with --task");
        r.task = {a.task_id.empty() ? "task" : a.task_id, a.text};
        rt.load_apps();
    }
    if (!a.start_app.empty()) r.start_app = a.start_app;
    if (!rt.store) {
        if (!rt.cfg.store_path.empty()) {
            rt.open_store(true);
        } else {
            rt.store.emplace(static_cast<std::size_t>(rt.cfg.embed_dim));
            rt.make_embedder(rt.store->dim());
        }
    }
    return r;
}

planner::PlanResult make_plan(Runtime& rt, const ResolvedTask& t, device::SimulatedDevice& dev, llm::Gateway& gw) {
    memory::StoreRetriever retriever(*rt.store, *rt.embedder);
    planner::PlanOptions opts{rt.cfg.use_memory, memory::RetrievalConfig{}};
    opts.retrieval.k = rt.cfg.k;
    return planner::plan_task(t.task, dev.installed_apps(), retriever, gw, opts);
}

int cmd_plan(Runtime& rt, const TaskArgs& a, std::ostream& out) {
    auto t = resolve_task(rt, a);
    device::SimulatedDevice dev(rt.apps);
    dev.reset(t.start_app);
    llm::Gateway gw(rt.backend(t.scriptbook), rt.clock());
    out << planner::render_plan_report(make_plan(rt, t, dev, gw));
    return kExitOk;
}

int cmd_run(Runtime& rt, const TaskArgs& a, std::ostream& out) {
    auto t = resolve_task(rt, a);
    device::SimulatedDevice dev(rt.apps);
    dev.reset(t.start_app);
    llm::Gateway gw(rt.backend(t.scriptbook), rt.clock());
    auto plan = make_plan(rt, t, dev, gw);
    out << planner::render_plan_report(plan);

    executor::ExecutorOptions opts;
    opts.max_steps = rt.cfg.max_steps.value_or(t.max_steps.value_or(30));
    opts.use_judge = rt.cfg.use_judge;
    if (t.goal) {
        auto goal = *t.goal;
        opts.goal = [goal](const device::Observation& o) { return bench::check_goal(goal, o); };
    }
    auto result = executor::run_episode(t.task, plan.fine, dev, gw, opts);
    out << "steps:\n" << render_steps(gw.transcript());
    if (!a.transcript_out.empty()) gw.transcript().save(a.transcript_out);
    if (result.termination == executor::Termination::hard_error) {
        throw Error("episode aborted: " + result.error);
    }
    auto usage = gw.total_usage();
    out << fmt::format("result: {} ({}, {} steps, {} turns, final screen {}, {} prompt + {} completion tokens)\n",
                       result.success ? "success" : "failure", executor::to_string(result.termination),
                       result.steps_taken, result.turns, location(dev.observe()), usage.prompt_tokens,
                       usage.completion_tokens);
    return result.success ? kExitOk : kExitTaskFailed;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
    std::string suite;
    std::string out_path;
    bool all_ablations = false;
};

int cmd_bench(Runtime& rt, const BenchArgs& a, std::ostream& out) {
    auto format = bench::parse_report_format(rt.cfg.format);
    if (!format) throw ValidationError("format", "expected text, csv or jsonl");
    auto suite = bench::load_suite(a.suite);
    if (rt.cfg.apps_dir.empty()) rt.cfg.apps_dir = suite.apps_dir;
    rt.load_apps();
    if (!rt.cfg.store_path.empty()) {
        rt.open_store(true);
    } else {
        rt.store.emplace(static_cast<std::size_t>(rt.cfg.embed_dim));
        rt.make_embedder(rt.store->dim());
        if (!suite.memory_seed.empty()) {
            memory::seed_store(memory::load_chunk_seed(suite.memory_seed), *rt.store, *rt.embedder);
        }
    }

    bench::SuiteHandles handles;
    handles.apps = rt.apps;
    handles.store = &*rt.store;
    handles.embedder = rt.embedder.get();
    handles.backend = [&rt](const bench::TaskSpec& t) {
        return rt.backend(rt.cfg.scriptbook.empty() ? t.script : rt.cfg.scriptbook);
    };
    handles.clock = [&rt] { return rt.clock(); };

    bench::SuiteConfig config;
    config.max_steps = rt.cfg.max_steps;
    config.retrieval.k = rt.cfg.k;
    config.parallelism = rt.cfg.parallelism;
    config.keep_transcripts = false;
    if (rt.cfg.use_memory && rt.cfg.use_judge) config.ablation = bench::Ablation::full;
    else if (rt.cfg.use_judge) config.ablation = bench::Ablation::no_memory;
    else if (rt.cfg.use_memory) config.ablation = bench::Ablation::no_judge;
    else config.ablation = bench::Ablation::no_memory_no_judge;
    config.notes.push_back(fmt::format("backend {}, embedder {}, k {}", rt.cfg.backend == "http"
                                           ? "http:" + rt.cfg.model : std::string("scripted"),
                                       rt.embedder->id(), rt.cfg.k));
    config.notes.push_back(fmt::format("cost model {:.4f}/{:.4f} USD per 1k prompt/completion tokens",
                                       config.cost.price_per_1k_prompt, config.cost.price_per_1k_completion));
    if (rt.cfg.clock == "tick") config.notes.push_back("wall times measured on a 1 ms tick clock");

    std::vector<bench::SuiteReport> reports;
    if (a.all_ablations) {
        reports = bench::run_ablations(suite, config, handles);
    } else {
        reports.push_back(bench::run_suite(suite, config, handles));
    }
    auto rendered = bench::render_reports(reports, *format);
    if (a.out_path.empty()) {
        out << rendered;
    } else {
        io::write_file(a.out_path, rendered);
        out << "report written to " << a.out_path << "\n";
    }
    return kExitOk;
}

// --- inspect-memory ------------------------------------------------------

struct InspectArgs {
    std::string app_id;
    std::string query;
};

int cmd_inspect(Runtime& rt, const InspectArgs& a, std::ostream& out) {
    if (rt.cfg.store_path.empty()) throw ValidationError("store", "inspect-memory needs --store");
    rt.open_store(true);
    memory::RetrievalConfig cfg;
    cfg.k = rt.cfg.k;
    auto hits = memory::retrieve(*rt.store, a.app_id, a.query, cfg, *rt.embedder);
    if (hits.empty()) {
        out << "no results\n";
        return kExitOk;
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
        const auto& c = hits[i].chunk;
        out << fmt::format("{}. {:.6f} {} {}\n   {}\n   path: {}\n", i + 1, hits[i].score, c.chunk_id, c.page_label,
                           c.page_description, c.action_path);
    }
    return kExitOk;
}

} // namespace

void CliConfig::validate(bool scripts_elsewhere) const {
    if (backend != "scripted" && backend != "http") throw ValidationError("backend", "expected scripted or http");
    if (backend == "scripted" && scriptbook.empty() && !scripts_elsewhere) {
        throw ValidationError("scriptbook", "the scripted backend needs a scriptbook");
    }
    if (embedder != "hashing" && embedder != "http") throw ValidationError("embedder", "expected hashing or http");
    if (embed_dim < 1) throw ValidationError("embed_dim", "must be at least 1");
    if (max_steps && *max_steps < 1) throw ValidationError("max_steps", "must be at least 1");
    if (k < 1) throw ValidationError("k", "must be at least 1");
    if (parallelism < 1) throw ValidationError("parallelism", "must be at least 1");
    if (!bench::parse_report_format(format)) throw ValidationError("format", "expected text, csv or jsonl");
    if (clock != "steady" && clock != "tick") throw ValidationError("clock", "expected steady or tick");
}

ConfigLayer read_config_file(const std::string& path) {
    auto doc = yaml::load(io::read_file(path), path);
    yaml::Fields f(doc, "");
    auto base = fs::path(path).parent_path();
    ConfigLayer c;
    c.backend = f.opt_str("backend");
    c.scriptbook = resolved_path(f, "scriptbook", base);
    c.model = f.opt_str("model");
    c.base_url = f.opt_str("base_url");
    c.embedder = f.opt_str("embedder");
    c.embed_dim = opt_int(f, "embed_dim");
    c.store_path = resolved_path(f, "store", base);
    c.apps_dir = resolved_path(f, "apps_dir", base);
    c.use_memory = opt_bool(f, "use_memory");
    c.use_judge = opt_bool(f, "use_judge");
    c.max_steps = opt_int(f, "max_steps");
    c.k = opt_int(f, "k");
    c.parallelism = opt_int(f, "parallelism");
    if (auto s = f.opt_str("seed")) {
        try {
            c.seed = std::stoull(*s);
        } catch (const std::exception&) {
            f.fail("seed", "expected a non-negative integer");
        }
    }
    c.format = f.opt_str("format");
    c.clock = f.opt_str("clock");
    f.finish();
    return c;
}

ConfigLayer read_env(const std::function<const char*(const char*)>& getenv_fn) {
    auto get = [&](const char* name) -> std::optional<std::string> {
        const char* v = getenv_fn(name);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    ConfigLayer c;
    c.backend = get("TRAILMAP_BACKEND");
    c.scriptbook = get("TRAILMAP_SCRIPTBOOK");
    c.model = get("TRAILMAP_MODEL");
    c.base_url = get("TRAILMAP_BASE_URL");
    c.api_key = get("TRAILMAP_API_KEY");
    c.store_path = get("TRAILMAP_STORE");
    c.apps_dir = get("TRAILMAP_APPS_DIR");
    return c;
}

CliConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env, const ConfigLayer& flags) {
    ConfigLayer m;
    merge(m, file);
    merge(m, env);
    merge(m, flags);
    CliConfig c;
    c.backend = m.backend.value_or(c.backend);
    c.scriptbook = m.scriptbook.value_or(c.scriptbook);
    c.model = m.model.value_or(c.model);
    c.base_url = m.base_url.value_or(c.base_url);
    c.api_key = m.api_key.value_or(c.api_key);
    c.embedder = m.embedder.value_or(c.embedder);
    c.embed_dim = m.embed_dim.value_or(c.embed_dim);
    c.store_path = m.store_path.value_or(c.store_path);
    c.apps_dir = m.apps_dir.value_or(c.apps_dir);
    c.use_memory = m.use_memory.value_or(c.use_memory);
    c.use_judge = m.use_judge.value_or(c.use_judge);
    if (m.max_steps) c.max_steps = m.max_steps;
    c.k = m.k.value_or(c.k);
    c.parallelism = m.parallelism.value_or(c.parallelism);
    c.seed = m.seed.value_or(c.seed);
    c.format = m.format.value_or(c.format);
    c.clock = m.clock.value_or(c.clock);
    return c;
}

std::string render_steps(const llm::Transcript& transcript) {
    std::string out;
    bool in_segment = false;
    int segment = 0;
    for (const auto& ev : transcript.events()) {
        if (const auto* m = std::get_if<llm::MarkerEvent>(&ev)) {
            if (m->kind != "segment") continue;
            in_segment = true;
            out += fmt::format("== segment {}: {}\n", ++segment, m->detail);
        } else if (!in_segment) {
            continue;
        } else if (const auto* x = std::get_if<llm::ChatExchange>(&ev)) {
            auto head = fmt::format("[{}{}]", llm::call_token(x->role), x->attempt > 0 ? " retry" : "");
            indent_block(out, head, x->response_text);
        } else if (const auto* e = std::get_if<llm::EnvEvent>(&ev)) {
            if (e->valid) {
                out += fmt::format("[ENV] {} -> {} / {}\n", e->action, e->app_id, e->page_id);
            } else {
                out += fmt::format("[ENV] {} rejected: {}\n", e->action, e->message);
            }
        }
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::function<const char*(const char*)>& getenv_fn) {
    CLI::App app{"trailmap: memory-augmented mobile task automation on simulated apps", "trailmap"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    ConfigLayer flags;
    bool no_memory = false;
    bool no_judge = false;
    std::string log_level = "warn";
    app.add_option("--config", config_path, "YAML configuration file");
    app.add_option("--backend", flags.backend, "LLM backend: scripted or http");
    app.add_option("--scriptbook", flags.scriptbook, "scriptbook for the scripted backend");
    app.add_option("--model", flags.model, "model name for the http backend");
    app.add_option("--base-url", flags.base_url, "base URL of an OpenAI-compatible API");
    app.add_option("--embedder", flags.embedder, "embedder: hashing or http");
    app.add_option("--embed-dim", flags.embed_dim, "embedding dimension for new stores");
    app.add_option("--store", flags.store_path, "memory store file");
    app.add_option("--apps-dir", flags.apps_dir, "directory of app-graph YAML files");
    app.add_flag("--no-memory", no_memory, "plan without retrieved pages");
    app.add_flag("--no-judge", no_judge, "execute without the judge");
    app.add_option("--max-steps", flags.max_steps, "step budget per episode");
    app.add_option("--k", flags.k, "pages retrieved per app");
    app.add_option("--seed", flags.seed, "seed for random exploration");
    app.add_option("--parallelism", flags.parallelism, "concurrent bench tasks");
    app.add_option("--format", flags.format, "report format: text, csv or jsonl");
    app.add_option("--clock", flags.clock, "steady, or tick for reproducible timings");
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

    ExploreArgs explore;
    auto* sc_explore = app.add_subcommand("explore", "collect trajectories in one app");
    sc_explore->add_option("--app", explore.app_id, "app id")->required();
    sc_explore->add_option("--policy", explore.policy, "random-walk or scripted");
    sc_explore->add_option("--episodes", explore.episodes, "number of trajectories");
    sc_explore->add_option("--actions", explore.actions_file, "action list for the scripted policy");
    sc_explore->add_option("--out", explore.out_dir, "output directory");
    sc_explore->add_option("--goal-page", explore.goal_pages, "page counting as success (repeatable)");

    IngestArgs ingest;
    auto* sc_ingest = app.add_subcommand("ingest", "summarize trajectories into the memory store");
    sc_ingest->add_option("trajectories", ingest.trajectories, "trajectory files");
    sc_ingest->add_option("--chunks", ingest.chunks_file, "YAML file of hand-written page chunks");
    sc_ingest->add_flag("--keep-failed", ingest.keep_failed, "also ingest unsuccessful trajectories");

    TaskArgs plan_args;
    auto* sc_plan = app.add_subcommand("plan", "print the coarse and fine plan for a task");
    TaskArgs run_args;
    auto* sc_run = app.add_subcommand("run", "plan and execute one task");
    for (auto [sc, ta] : {std::pair{sc_plan, &plan_args}, std::pair{sc_run, &run_args}}) {
        sc->add_option("text", ta->text, "task text");
        sc->add_option("--suite", ta->suite, "suite file to take the task from");
        sc->add_option("--task", ta->task_id, "task id (with --suite) or label");
        sc->add_option("--start-app", ta->start_app, "app to start in instead of the launcher");
    }
    sc_run->add_option("--transcript", run_args.transcript_out, "write the JSON-lines transcript here");

    BenchArgs bench_args;
    auto* sc_bench = app.add_subcommand("bench", "run a task suite and report metrics");
    sc_bench->add_option("suite", bench_args.suite, "suite file")->required();
    sc_bench->add_option("--out", bench_args.out_path, "report file (default stdout)");
    sc_bench->add_flag("--all-ablations", bench_args.all_ablations, "run full, w/o M, w/o J and w/o M & J");

    InspectArgs inspect;
    auto* sc_inspect = app.add_subcommand("inspect-memory", "list the chunks retrieved for a query");
    sc_inspect->add_option("--app", inspect.app_id, "app id")->required();
    sc_inspect->add_option("--query", inspect.query, "query text")->required();

    for (auto* sc : {sc_explore, sc_ingest, sc_plan, sc_run, sc_bench, sc_inspect}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("trailmap", sink);
    logger->set_level(spdlog::level::from_str(log_level));
    logger->set_pattern("%l: %v");
    auto previous = spdlog::default_logger();
    spdlog::set_default_logger(logger);
    struct Restore {
        std::shared_ptr<spdlog::logger> logger;
        ~Restore() { spdlog::set_default_logger(logger); }
    } restore{previous};

    try {
        if (no_memory) flags.use_memory = false;
        if (no_judge) flags.use_judge = false;
        ConfigLayer file;
        if (!config_path.empty()) file = read_config_file(config_path);
        Runtime rt;
        rt.cfg = resolve_config(file, read_env(getenv_fn), flags);
        rt.cfg.config_path = config_path;

        const bool needs_llm = sc_plan->parsed() || sc_run->parsed() ||
                               (sc_ingest->parsed() && !ingest.trajectories.empty());
        const bool scripts_elsewhere = sc_bench->parsed() || !needs_llm || !run_args.suite.empty() ||
                                       !plan_args.suite.empty();
        rt.cfg.validate(scripts_elsewhere);

        if (sc_explore->parsed()) return cmd_explore(rt, explore, out);
        if (sc_ingest->parsed()) return cmd_ingest(rt, ingest, out);
        if (sc_plan->parsed()) return cmd_plan(rt, plan_args, out);
        if (sc_run->parsed()) return cmd_run(rt, run_args, out);
        if (sc_bench->parsed()) return cmd_bench(rt, bench_args, out);
        if (sc_inspect->parsed()) return cmd_inspect(rt, inspect, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace trailmap::cli
