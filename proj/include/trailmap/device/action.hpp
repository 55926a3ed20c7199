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

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace trailmap::device {

enum class ScrollDirection { up, down, left, right };

std::string_view to_string(ScrollDirection d);
std::optional<ScrollDirection> parse_direction(std::string_view s);

namespace action {

struct Click {
    int label = 0;
    bool operator==(const Click&) const = default;
};
struct Type {
    int label = 0;
    std::string text;
    bool operator==(const Type&) const = default;
};
struct Scroll {
    int label = 0;
    ScrollDirection direction = ScrollDirection::down;
    bool operator==(const Scroll&) const = default;
};
struct Back {
    bool operator==(const Back&) const = default;
};
struct Home {
    bool operator==(const Home&) const = default;
};
struct OpenApp {
    std::string app_name;
    bool operator==(const OpenApp&) const = default;
};
struct Finish {
    std::string summary;
    bool operator==(const Finish&) const = default;
};

} // namespace action

using Action = std::variant<action::Click, action::Type, action::Scroll, action::Back,
                            action::Home, action::OpenApp, action::Finish>;

// Canonical text form, shared by LLM responses and trajectory files:
//   click(3)  type(2, "hello")  scroll(4, down)  back()  home()
//   open_app("Settings")  finish("done")
// Strings are double-quoted with \" and \\ escapes.
std::string format_action(const Action& a);

// Inverse of format_action. Tolerates surrounding whitespace, a trailing
// period, and bracketed labels ("click [3]"). Throws ParseError.
Action parse_action(std::string_view text);

// SoM label the action refers to, if any.
std::optional<int> action_label(const Action& a);

inline bool is_finish(const Action& a) { return std::holds_alternative<action::Finish>(a); }

} // namespace trailmap::device
