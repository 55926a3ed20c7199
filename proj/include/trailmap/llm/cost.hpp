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

#include <span>

#include "trailmap/core/error.hpp"
#include "trailmap/llm/message.hpp"

namespace trailmap::llm {

// USD per 1000 tokens.
struct CostModel {
    double price_per_1k_prompt = 0.0;
    double price_per_1k_completion = 0.0;

    // Throws ValidationError on a negative price.
    void validate() const;
};

double cost_of(const Usage& usage, const CostModel& model);
double accumulate_cost(std::span<const Usage> usages, const CostModel& model);

} // namespace trailmap::llm
