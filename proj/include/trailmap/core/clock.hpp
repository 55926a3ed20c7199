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

#include <atomic>
#include <chrono>

namespace trailmap {

using Duration = std::chrono::nanoseconds;

// Monotonic time source. Latency and per-step wall times are measured through
// this so tests and golden runs can substitute a deterministic clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Duration now() = 0;
};

class SteadyClock final : public Clock {
public:
    Duration now() override {
        return std::chrono::duration_cast<Duration>(
            std::chrono::steady_clock::now().time_since_epoch());
    }
};

// Advances by a fixed tick on every read.
class TickClock final : public Clock {
public:
    explicit TickClock(Duration tick = std::chrono::milliseconds(1)) : tick_(tick) {}

    Duration now() override { return Duration(ticks_.fetch_add(1) * tick_.count()); }

private:
    Duration tick_;
    std::atomic<long long> ticks_{0};
};

inline double to_seconds(Duration d) { return std::chrono::duration<double>(d).count(); }

} // namespace trailmap
