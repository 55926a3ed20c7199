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

#include <map>
#include <string>
#include <vector>

#include "trailmap/core/error.hpp"
#include "trailmap/llm/message.hpp"

namespace trailmap::llm {

using Bindings = std::map<std::string, std::string>;

// A prompt for one role. `user_template` uses {{name}} placeholders; the
// response must carry every field of `required_fields` as "NAME: value".
struct RoleTemplate {
    std::string name;
    Role role = Role::planner;
    std::string system_text;
    std::string user_template;
    std::vector<std::string> required_fields;
    std::vector<std::string> optional_fields;
};

class RenderError : public Error {
public:
    using Error::Error;
};

// Placeholders of a template in order of first appearance.
std::vector<std::string> placeholders(const std::string& user_template);

// [system, user] messages. Throws RenderError naming the first unbound
// placeholder; extra bindings are ignored.
Messages render(const RoleTemplate& t, const Bindings& bindings);

// Built-in prompt set. Bump kTemplateVersion whenever any text changes.
namespace templates {

inline constexpr int kTemplateVersion = 1;

const RoleTemplate& summarizer();
const RoleTemplate& planner_coarse();
const RoleTemplate& scheduler();
const RoleTemplate& planner_fine();
const RoleTemplate& decision_maker();
const RoleTemplate& judge();

const std::vector<const RoleTemplate*>& all();

} // namespace templates

} // namespace trailmap::llm
