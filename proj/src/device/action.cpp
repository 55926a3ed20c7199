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

#include "trailmap/device/action.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include <fmt/format.h>

#include "trailmap/core/error.hpp"
#include "trailmap/core/text.hpp"

namespace trailmap::device {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

// Splits "a, \"b, c\", d" into raw argument tokens; quoted tokens are unescaped.
struct Arg {
    std::string value;
    bool quoted = false;
};

std::vector<Arg> split_args(std::string_view s, std::string_view whole) {
    std::vector<Arg> args;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == s.size()) return args;
    while (true) {
        skip_ws();
        Arg arg;
        if (i < s.size() && s[i] == '"') {
            arg.quoted = true;
            ++i;
            bool closed = false;
            while (i < s.size()) {
                char c = s[i++];
                if (c == '\\' && i < s.size()) {
                    arg.value += s[i++];
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    arg.value += c;
                }
            }
            if (!closed) throw ParseError(fmt::format("unterminated string in action '{}'", whole));
            skip_ws();
        } else {
            auto start = i;
            while (i < s.size() && s[i] != ',') ++i;
            arg.value = text::trim(s.substr(start, i - start));
        }
        args.push_back(std::move(arg));
        if (i >= s.size()) break;
        if (s[i] != ',') throw ParseError(fmt::format("unexpected character in action '{}'", whole));
        ++i;
    }
    return args;
}

int parse_label(const Arg& arg, std::string_view whole) {
    std::string_view v = arg.value;
    if (v.starts_with('[') && v.ends_with(']')) v = v.substr(1, v.size() - 2);
    int label = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), label);
    if (arg.quoted || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(fmt::format("expected a numeric label in action '{}'", whole));
    }
    return label;
}

void expect_arity(const std::vector<Arg>& args, std::size_t n, std::string_view whole) {
    if (args.size() != n) {
        throw ParseError(fmt::format("action '{}' takes {} argument(s)", whole, n));
    }
}

} // namespace

std::string_view to_string(ScrollDirection d) {
    switch (d) {
    case ScrollDirection::up: return "up";
    case ScrollDirection::down: return "down";
    case ScrollDirection::left: return "left";
    case ScrollDirection::right: return "right";
    }
    return "down";
}

std::optional<ScrollDirection> parse_direction(std::string_view s) {
    auto v = text::to_lower(text::trim(s));
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    if (v == "up") return ScrollDirection::up;
    if (v == "down") return ScrollDirection::down;
    if (v == "left") return ScrollDirection::left;
    if (v == "right") return ScrollDirection::right;
    return std::nullopt;
}

std::string format_action(const Action& a) {
    return std::visit(
        overloaded{
            [](const action::Click& c) { return fmt::format("click({})", c.label); },
            [](const action::Type& t) { return fmt::format("type({}, {})", t.label, quote(t.text)); },
            [](const action::Scroll& s) {
                return fmt::format("scroll({}, {})", s.label, to_string(s.direction));
            },
            [](const action::Back&) { return std::string("back()"); },
            [](const action::Home&) { return std::string("home()"); },
            [](const action::OpenApp& o) { return fmt::format("open_app({})", quote(o.app_name)); },
            [](const action::Finish& f) { return fmt::format("finish({})", quote(f.summary)); },
        },
        a);
}

Action parse_action(std::string_view input) {
    std::string whole = text::trim(input);
    if (!whole.empty() && whole.back() == '.') whole.pop_back();
    std::string_view s = whole;

    auto name_end = s.find_first_of("( [");
    std::string name = text::to_lower(s.substr(0, name_end));
    std::string_view rest = name_end == s.npos ? std::string_view{} : s.substr(name_end);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);

    std::vector<Arg> args;
    if (!rest.empty()) {
        if (rest.front() == '(') {
            if (rest.back() != ')') throw ParseError(fmt::format("unbalanced parentheses in action '{}'", whole));
            args = split_args(rest.substr(1, rest.size() - 2), whole);
        } else if (rest.front() == '[') {
            args.push_back(Arg{std::string(rest), false}); // "click [3]"
        } else {
            throw ParseError(fmt::format("malformed action '{}'", whole));
        }
    }

    if (name == "click" || name == "tap") {
        expect_arity(args, 1, whole);
        return action::Click{parse_label(args[0], whole)};
    }
    if (name == "type" || name == "input") {
        expect_arity(args, 2, whole);
        return action::Type{parse_label(args[0], whole), args[1].value};
    }
    if (name == "scroll" || name == "swipe") {
        expect_arity(args, 2, whole);
        auto dir = parse_direction(args[1].value);
        if (!dir) throw ParseError(fmt::format("unknown scroll direction in action '{}'", whole));
        return action::Scroll{parse_label(args[0], whole), *dir};
    }
    if (name == "back") {
        expect_arity(args, 0, whole);
        return action::Back{};
    }
    if (name == "home") {
        expect_arity(args, 0, whole);
        return action::Home{};
    }
    if (name == "open_app") {
        expect_arity(args, 1, whole);
        return action::OpenApp{args[0].value};
    }
    if (name == "finish") {
        if (args.size() > 1) throw ParseError(fmt::format("action '{}' takes at most 1 argument", whole));
        return action::Finish{args.empty() ? std::string{} : args[0].value};
    }
    throw ParseError(fmt::format("unknown action '{}'", whole));
}

std::optional<int> action_label(const Action& a) {
    if (auto c = std::get_if<action::Click>(&a)) return c->label;
    if (auto t = std::get_if<action::Type>(&a)) return t->label;
    if (auto s = std::get_if<action::Scroll>(&a)) return s->label;
    return std::nullopt;
}

} // namespace trailmap::device
