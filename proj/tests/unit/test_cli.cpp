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

#include "doctest.h"
#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <sys/wait.h>

#include "trailmap/cli/cli.hpp"
#include "trailmap/core/io.hpp"
#include "trailmap/device/trajectory.hpp"
#include "trailmap/memory/store.hpp"

using namespace trailmap;
using namespace trailmap::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, const std::map<std::string, std::string>& env = {}) {
    args.insert(args.begin(), "trailmap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    auto getenv_fn = [&env](const char* name) -> const char* {
        auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    };
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err, getenv_fn);
    return {code, out.str(), err.str()};
}

std::string apps_dir() { return testing::fixture("apps"); }

std::vector<std::string> files_in(const fs::path& dir) {
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("configuration precedence: defaults < file < env < flags") {
    ConfigLayer file, env, flags;
    auto base = resolve_config(file, env, flags);
    CHECK(base.backend == "scripted");
    CHECK(base.k == 3);
    CHECK(base.embed_dim == 128);
    file.k = 5;
    file.model = "file-model";
    file.store_path = "file.bin";
    env.model = "env-model";
    env.store_path = "env.bin";
    flags.store_path = "flag.bin";
    auto c = resolve_config(file, env, flags);
    CHECK(c.k == 5);
    CHECK(c.model == "env-model");
    CHECK(c.store_path == "flag.bin");
}

TEST_CASE("configuration sources") {
    testing::TempDir dir;
    io::write_file(dir.file("c.yaml"), "k: 4\nstore: mem.bin\nuse_judge: false\nseed: 9\n");
    auto f = read_config_file(dir.file("c.yaml"));
    CHECK(f.k == 4);
    CHECK(f.use_judge == false);
    CHECK(f.seed == 9u);
    CHECK(*f.store_path == dir.file("mem.bin"));
    io::write_file(dir.file("bad.yaml"), "k: 4\nspeed: fast\n");
    CHECK_THROWS_AS(read_config_file(dir.file("bad.yaml")), ParseError);
    std::map<std::string, std::string> vars{{"TRAILMAP_MODEL", "m"}, {"TRAILMAP_STORE", ""}};
    auto e = read_env([&](const char* n) -> const char* {
        auto it = vars.find(n);
        return it == vars.end() ? nullptr : it->second.c_str();
    });
    CHECK(e.model == "m");
    CHECK_FALSE(e.store_path);
    CliConfig bad;
    bad.k = 0;
    CHECK_THROWS_AS(bad.validate(true), ValidationError);
    CliConfig no_book;
    CHECK_THROWS_AS(no_book.validate(), ValidationError);
    CHECK_NOTHROW(no_book.validate(true));
}

TEST_CASE("flags override the environment end to end") {
    testing::TempDir dir;
    io::write_file(dir.file("c.yaml"), "k: 1\n");
    auto r = invoke({"--config", dir.file("c.yaml"), "--k", "2", "--store", dir.file("s.bin"), "ingest", "--chunks",
                     testing::fixture("memory_seed.yaml")},
                    {{"TRAILMAP_STORE", dir.file("env.bin")}});
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(dir.file("s.bin")));
    CHECK_FALSE(fs::exists(dir.file("env.bin")));
    auto q = invoke({"--config", dir.file("c.yaml"), "inspect-memory", "--app", "settings", "--query", "dark theme"},
                    {{"TRAILMAP_STORE", dir.file("s.bin")}});
    REQUIRE(q.code == kExitOk);
    CHECK(q.out.find("1. ") != std::string::npos);
    CHECK(q.out.find("2. ") == std::string::npos);
}

TEST_CASE("random-walk exploration is reproducible for a seed") {
    testing::TempDir a, b;
    for (const auto* dir : {&a, &b}) {
        auto r = invoke({"--apps-dir", apps_dir(), "--seed", "7", "explore", "--app", "settings", "--episodes", "3",
                         "--out", dir->path().string()});
        REQUIRE(r.code == kExitOk);
        CHECK(r.out.find("3 trajectories written") != std::string::npos);
    }
    auto names = files_in(a.path());
    REQUIRE(names.size() == 3);
    CHECK(names == files_in(b.path()));
    for (const auto& n : names) {
        CHECK(io::read_file((a.path() / n).string()) == io::read_file((b.path() / n).string()));
        auto t = device::load_trajectory((a.path() / n).string());
        CHECK(t.app_id == "settings");
        CHECK(t.observations.size() == t.actions.size() + 1);
    }
    testing::TempDir c;
    invoke({"--apps-dir", apps_dir(), "--seed", "8", "explore", "--app", "settings", "--episodes", "3", "--out",
            c.path().string()});
    bool differs = false;
    auto other = files_in(c.path());
    for (std::size_t i = 0; i < names.size(); ++i) {
        differs |= device::load_trajectory((a.path() / names[i]).string()).actions !=
                   device::load_trajectory((c.path() / other[i]).string()).actions;
    }
    CHECK(differs);
}

TEST_CASE("scripted exploration and mixed-app ingestion") {
    testing::TempDir dir;
    io::write_file(dir.file("settings.txt"), "# to dark theme\nclick(3)\nclick(3)\n");
    io::write_file(dir.file("wechat.txt"), "click(8)\nclick(4)\n");
    for (const char* app : {"settings", "wechat"}) {
        auto r = invoke({"--apps-dir", apps_dir(), "explore", "--app", app, "--policy", "scripted", "--actions",
                         dir.file(std::string(app) + ".txt"), "--out", dir.file("traj"), "--goal-page",
                         app == std::string("settings") ? "dark_theme" : "settings"});
        REQUIRE(r.code == kExitOk);
        CHECK(r.out.find("(2 actions, success)") != std::string::npos);
    }
    const std::string summarizer = testing::fixture("scripts/summarizer.yaml");
    auto r = invoke({"--scriptbook", summarizer, "--store", dir.file("s.bin"), "--clock", "tick", "ingest",
                     dir.file("traj/settings-scripted-0.json"), dir.file("traj/wechat-scripted-0.json")});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "settings: 3 chunks added\nwechat: 3 chunks added\ntotal: 6 chunks added, store now holds 6\n");
    auto store = memory::load_store(dir.file("s.bin"));
    CHECK(store.collection("settings").size() == 3);
    CHECK(store.collection("wechat").size() == 3);
    for (const auto& e : store.collection("settings")) CHECK(e.chunk.created_at == memory::Timestamp{});
    auto again = invoke({"--scriptbook", summarizer, "--store", dir.file("s.bin"), "ingest",
                         dir.file("traj/settings-scripted-0.json")});
    CHECK(again.out.find("total: 0 chunks added, store now holds 6") != std::string::npos);
}

TEST_CASE("inspect-memory") {
    testing::TempDir dir;
    REQUIRE(invoke({"--store", dir.file("s.bin"), "ingest", "--chunks", testing::fixture("memory_seed.yaml")}).code ==
            kExitOk);
    auto none = invoke({"--store", dir.file("s.bin"), "inspect-memory", "--app", "calculator", "--query", "add"});
    CHECK(none.code == kExitOk);
    CHECK(none.out == "no results\n");
    auto hits = invoke({"--store", dir.file("s.bin"), "inspect-memory", "--app", "wechat", "--query", "dark mode"});
    CHECK(hits.out.find("path: From Chats tap Me, then Settings, then General, then Dark Mode") != std::string::npos);
    auto missing = invoke({"--store", dir.file("none.bin"), "inspect-memory", "--app", "x", "--query", "y"});
    CHECK(missing.code == kExitError);
    CHECK(missing.err.find("memory store not found") != std::string::npos);
}

TEST_CASE("run exit codes") {
    const std::string suite = testing::fixture("suites/en.yaml");
    SUBCASE("success") {
        testing::TempDir dir;
        auto r = invoke({"--clock", "tick", "run", "--suite", suite, "--task", "t07", "--transcript",
                         dir.file("t07.jsonl")});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("result: success (finished, 10 steps") != std::string::npos);
        CHECK(r.out.find("steps:\n") != std::string::npos);
        CHECK(testing::golden_matches("t07_transcript.jsonl", io::read_file(dir.file("t07.jsonl"))));
    }
    SUBCASE("goal missed") {
        auto r = invoke({"--no-memory", "run", "--suite", suite, "--task", "t07"});
        CHECK(r.code == kExitTaskFailed);
        CHECK(r.out.find("result: failure") != std::string::npos);
    }
    SUBCASE("errors") {
        CHECK(invoke({"run", "--suite", suite, "--task", "t99"}).code == kExitError);
        CHECK(invoke({"run", "Turn on Wi-Fi", "--apps-dir", apps_dir()}).code == kExitError);
        CHECK(invoke({"--bogus"}).code == kExitError);
        CHECK(invoke({"--backend", "carrier-pigeon", "bench", suite}).code == kExitError);
        auto outage = invoke({"--scriptbook", testing::fixture("scripts/policy.yaml"), "--apps-dir", apps_dir(), "run",
                              "Turn on Wi-Fi"});
        CHECK(outage.code == kExitError);
        CHECK(outage.err.find("error: ") == 0);
    }
    SUBCASE("help") { CHECK(invoke({"--help"}).code == kExitOk); }
}

TEST_CASE("plan prints the report") {
    auto r = invoke({"plan", "--suite", testing::fixture("suites/en.yaml"), "--task", "t07"});
    REQUIRE(r.code == kExitOk);
    CHECK(testing::golden_matches("plan_report_t07.txt", r.out));
}

TEST_CASE("bench report") {
    testing::TempDir dir;
    auto r = invoke({"--clock", "tick", "--format", "csv", "bench", testing::fixture("suites/cn.yaml"), "--out",
                     dir.file("r.csv")});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "report written to " + dir.file("r.csv") + "\n");
    CHECK(testing::golden_matches("bench_cn_full.csv", io::read_file(dir.file("r.csv"))));
    auto text = invoke({"--clock", "tick", "bench", testing::fixture("suites/en.yaml")});
    CHECK(text.out.find("note: wall times measured on a 1 ms tick clock") != std::string::npos);
    CHECK(invoke({"--format", "xml", "bench", testing::fixture("suites/en.yaml")}).code == kExitError);
}

TEST_CASE("step log of a transcript") {
    llm::Transcript t;
    t.add(llm::EnvEvent{"click(1)", true, "", "settings", "home", ""});
    t.add(llm::MarkerEvent{"segment", "settings"});
    t.add(llm::EnvEvent{"click(9)", false, "no element labelled 9", "settings", "home", ""});
    auto s = render_steps(t);
    CHECK(s.find("click(9)") != std::string::npos);
    CHECK(s.find("no element labelled 9") != std::string::npos);
    CHECK(s.find("click(1)") == std::string::npos);
}

TEST_CASE("the installed binary reports exit codes") {
    const std::string bin = TRAILMAP_BINARY;
    const std::string suite = testing::fixture("suites/en.yaml");
    auto status = [](const std::string& cmd) {
        int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(bin + " --help") == kExitOk);
    CHECK(status(bin + " run --suite " + suite + " --task t01") == kExitOk);
    CHECK(status(bin + " --no-memory run --suite " + suite + " --task t07") == kExitTaskFailed);
    CHECK(status(bin + " run --suite " + suite) == kExitError);
}
