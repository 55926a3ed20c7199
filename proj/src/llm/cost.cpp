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

#include "trailmap/llm/cost.hpp"

namespace trailmap::llm {

void CostModel::validate() const {
    if (price_per_1k_prompt < 0.0) throw ValidationError("price_per_1k_prompt", "must be non-negative");
    if (price_per_1k_completion < 0.0) throw ValidationError("price_per_1k_completion", "must be non-negative");
}

double cost_of(const Usage& usage, const CostModel& model) {
    return static_cast<double>(usage.prompt_tokens) / 1000.0 * model.price_per_1k_prompt +
           static_cast<double>(usage.completion_tokens) / 1000.0 * model.price_per_1k_completion;
}

double accumulate_cost(std::span<const Usage> usages, const CostModel& model) {
    double total = 0.0;
    for (const auto& u : usages) total += cost_of(u, model);
    return total;
}

} // namespace trailmap::llm
