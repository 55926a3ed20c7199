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

#include <atomic>
#include <cerrno>
#include <sstream>

#include "trailmap/bench/runner.hpp"
#include "trailmap/cli/cli.hpp"
#include "trailmap/llm/http_backend.hpp"

namespace {
std::atomic<int> g_sockets{0};
} // namespace

// Every socket this process tries to open lands here and fails.
extern "C" int socket(int, int, int) {
    ++g_sockets;
    errno = EACCES;
    return -1;
}

using namespace trailmap;

TEST_CASE("the guard sees socket creation") {
    const int before = g_sockets;
    llm::HttpConfig cfg;
    cfg.base_url = "http://127.0.0.1:9/v1";
    cfg.max_attempts = 1;
    cfg.timeout = std::chrono::seconds(1);
    llm::HttpChatBackend backend(cfg);
    CHECK_THROWS_AS(backend.complete({llm::Role::planner, "t", {{"user", "hi"}}}), llm::TransportError);
    CHECK(g_sockets > before);
}

TEST_CASE("scripted suites and commands open no sockets") {
    g_sockets = 0;
    for (const char* suite : {"suites/en.yaml", "suites/cn.yaml"}) {
        testing::SuiteRig rig(testing::fixture(suite));
        auto reports = bench::run_ablations(rig.suite, {}, rig.handles);
        CHECK(reports.size() == 4);
    }
    testing::TempDir dir;
    const std::string en = testing::fixture("suites/en.yaml");
    std::vector<std::vector<std::string>> commands{
        {"trailmap", "run", "--suite", en, "--task", "t07"},
        {"trailmap", "plan", "--suite", en, "--task", "t04"},
        {"trailmap", "bench", en},
        {"trailmap", "--apps-dir", testing::fixture("apps"), "--seed", "3", "explore", "--app", "wechat", "--out",
         dir.file("walks")},
        {"trailmap", "--store", dir.file("s.bin"), "ingest", "--chunks", testing::fixture("memory_seed.yaml")},
        {"trailmap", "--store", dir.file("s.bin"), "inspect-memory", "--app", "shop", "--query", "cart"},
    };
    for (const auto& cmd : commands) {
        std::vector<const char*> argv;
        for (const auto& a : cmd) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, [](const char*) { return nullptr; });
        CAPTURE(err.str());
        CHECK(code == cli::kExitOk);
    }
    CHECK(g_sockets == 0);
}
