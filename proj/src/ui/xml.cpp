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

#include "trailmap/ui/xml.hpp"

#include <charconv>
#include <cstring>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include <expat.h>
#include <fmt/format.h>

#include "trailmap/core/error.hpp"

namespace trailmap::ui {

namespace {

bool parse_int(std::string_view& s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{}) return false;
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return true;
}

bool consume(std::string_view& s, char c) {
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

struct ParseState {
    XML_Parser parser = nullptr;
    std::vector<UiNode> stack;
    std::vector<std::size_t> child_counts{0};
    std::vector<std::string> paths;
    std::optional<UiNode> root;
    bool saw_hierarchy = false;
    int depth = 0;
    std::string error;
    int error_line = 0;
    int error_column = 0;

    void fail(std::string message) {
        if (!error.empty()) return;
        error = std::move(message);
        error_line = static_cast<int>(XML_GetCurrentLineNumber(parser));
        error_column = static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1;
        XML_StopParser(parser, XML_FALSE);
    }
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto& st = *static_cast<ParseState*>(user);
    ++st.depth;
    if (!st.error.empty()) return;
    if (std::strcmp(name, "hierarchy") == 0) {
        if (st.depth != 1) return st.fail("'hierarchy' is only allowed as the document element");
        st.saw_hierarchy = true;
        return;
    }
    if (std::strcmp(name, "node") != 0) return st.fail(fmt::format("unexpected element <{}>", name));
    if (st.stack.empty() && st.root) return st.fail("more than one root node");

    std::string path = st.paths.empty() ? std::to_string(st.child_counts.back())
                                        : st.paths.back() + "." + std::to_string(st.child_counts.back());
    ++st.child_counts.back();

    UiNode node;
    std::optional<std::string> bounds_text;
    bool has_id = false;
    for (std::size_t i = 0; attrs[i]; i += 2) {
        std::string_view key = attrs[i];
        std::string value = attrs[i + 1];
        if (key == "id") {
            node.id = std::move(value);
            has_id = true;
        } else if (key == "class") {
            node.cls = std::move(value);
        } else if (key == "text") {
            node.text = std::move(value);
        } else if (key == "content-desc") {
            node.content_desc = std::move(value);
        } else if (key == "clickable") {
            node.clickable = value == "true";
        } else if (key == "scrollable") {
            node.scrollable = value == "true";
        } else if (key == "editable") {
            node.editable = value == "true";
        } else if (key == "enabled") {
            node.enabled = value == "true";
        } else if (key == "bounds") {
            bounds_text = std::move(value);
        }
    }
    if (!has_id) node.id = path;
    if (bounds_text && !parse_bounds(*bounds_text, node.bounds)) {
        return st.fail(fmt::format("node '{}': unparseable bounds \"{}\"", node.id, *bounds_text));
    }
    st.stack.push_back(std::move(node));
    st.paths.push_back(std::move(path));
    st.child_counts.push_back(0);
}

void on_end(void* user, const XML_Char* name) {
    auto& st = *static_cast<ParseState*>(user);
    --st.depth;
    if (!st.error.empty() || std::strcmp(name, "node") != 0) return;
    UiNode done = std::move(st.stack.back());
    st.stack.pop_back();
    st.paths.pop_back();
    st.child_counts.pop_back();
    if (st.stack.empty()) {
        st.root = std::move(done);
    } else {
        st.stack.back().children.push_back(std::move(done));
    }
}

void escape_attr(std::string& out, std::string_view value) {
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\t': out += "&#9;"; break;
        case '\n': out += "&#10;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

const char* boolean(bool b) { return b ? "true" : "false"; }

void write_node(std::string& out, const UiNode& n, int indent) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += "<node id=\"";
    escape_attr(out, n.id);
    out += "\" class=\"";
    escape_attr(out, n.cls);
    out += "\" text=\"";
    escape_attr(out, n.text);
    out += "\" content-desc=\"";
    escape_attr(out, n.content_desc);
    out += fmt::format("\" clickable=\"{}\" scrollable=\"{}\" editable=\"{}\" enabled=\"{}\" bounds=\"{}\"",
                       boolean(n.clickable), boolean(n.scrollable), boolean(n.editable),
                       boolean(n.enabled), format_bounds(n.bounds));
    if (n.children.empty()) {
        out += " />\n";
        return;
    }
    out += ">\n";
    for (const auto& c : n.children) write_node(out, c, indent + 1);
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += "</node>\n";
}

} // namespace

bool parse_bounds(std::string_view s, Bounds& out) {
    Bounds b;
    if (!consume(s, '[') || !parse_int(s, b.left) || !consume(s, ',') || !parse_int(s, b.top) ||
        !consume(s, ']') || !consume(s, '[') || !parse_int(s, b.right) || !consume(s, ',') ||
        !parse_int(s, b.bottom) || !consume(s, ']') || !s.empty()) {
        return false;
    }
    if (!b.well_ordered()) return false;
    out = b;
    return true;
}

std::string format_bounds(const Bounds& b) {
    return fmt::format("[{},{}][{},{}]", b.left, b.top, b.right, b.bottom);
}

UiTree parse_ui_xml(std::string_view text) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate("UTF-8"), &XML_ParserFree);
    if (!parser) throw Error("failed to allocate XML parser");

    ParseState st;
    st.parser = parser.get();
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), &on_start, &on_end);

    auto status = XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE);
    if (!st.error.empty()) throw ParseError(st.error, st.error_line, st.error_column);
    if (status != XML_STATUS_OK) {
        auto code = XML_GetErrorCode(parser.get());
        throw ParseError(std::string("malformed XML: ") + XML_ErrorString(code),
                         static_cast<int>(XML_GetCurrentLineNumber(parser.get())),
                         static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1);
    }
    if (!st.root) throw ParseError("document contains no node element", 1, 1);

    UiTree tree{std::move(*st.root)};
    std::unordered_set<std::string> seen;
    for_each_node(tree.root, [&](const UiNode& n) {
        if (!seen.insert(n.id).second) throw ParseError("duplicate node id '" + n.id + "'");
    });
    return tree;
}

std::string serialize_ui_tree(const UiTree& tree) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<hierarchy>\n";
    write_node(out, tree.root, 1);
    out += "</hierarchy>\n";
    return out;
}

} // namespace trailmap::ui
