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

#include "trailmap/device/app_graph.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include <fmt/format.h>

#include "trailmap/core/error.hpp"
#include "trailmap/core/io.hpp"
#include "trailmap/core/yaml_fields.hpp"
#include "trailmap/ui/xml.hpp"

namespace trailmap::device {

namespace {

constexpr int kScreenWidth = 1080;
constexpr int kScreenHeight = 2400;
constexpr int kRowTop = 240;
constexpr int kRowPitch = 160;
constexpr int kRowHeight = 140;

ui::UiNode build_element(const YAML::Node& node, const std::string& path, std::size_t index,
                         const ui::Bounds* parent) {
    yaml::Fields f(node, path);
    ui::UiNode n;
    n.id = f.str("id");
    n.cls = f.str("class", "TextView");
    n.text = f.str("text", "");
    n.content_desc = f.str("content_desc", "");
    n.clickable = f.boolean("clickable", false);
    n.scrollable = f.boolean("scrollable", false);
    n.editable = f.boolean("editable", false);
    n.enabled = f.boolean("enabled", true);
    if (auto b = f.opt_str("bounds")) {
        if (!ui::parse_bounds(*b, n.bounds)) f.fail("bounds", "expected \"[l,t][r,b]\" with l<=r and t<=b");
    } else if (parent) {
        n.bounds = *parent;
    } else {
        int top = kRowTop + static_cast<int>(index) * kRowPitch;
        n.bounds = {0, top, kScreenWidth, top + kRowHeight};
    }
    auto children = f.list("children");
    for (std::size_t i = 0; i < children.size(); ++i) {
        n.children.push_back(build_element(children[i], f.item_path("children", i), i, &n.bounds));
    }
    f.finish();
    return n;
}

ui::UiTree build_tree(const std::string& title, const std::vector<YAML::Node>& elements,
                      const std::string& path) {
    ui::UiNode root;
    root.id = "__root";
    root.cls = "FrameLayout";
    root.enabled = true;
    root.bounds = {0, 0, kScreenWidth, kScreenHeight};

    ui::UiNode heading;
    heading.id = "__title";
    heading.cls = "TextView";
    heading.text = title;
    heading.enabled = true;
    heading.bounds = {0, 80, kScreenWidth, 220};
    root.children.push_back(std::move(heading));

    for (std::size_t i = 0; i < elements.size(); ++i) {
        root.children.push_back(build_element(elements[i], path + "[" + std::to_string(i) + "]", i, nullptr));
    }
    ui::UiTree tree{std::move(root)};
    try {
        ui::validate(tree);
    } catch (const ValidationError& e) {
        throw ValidationError(path, e.what());
    }
    return tree;
}

Effect::Kind parse_kind(yaml::Fields& f) {
    auto kind = f.str("kind");
    if (kind == "navigate") return Effect::Kind::navigate;
    if (kind == "set_state") return Effect::Kind::set_state;
    if (kind == "back") return Effect::Kind::back;
    if (kind == "open_app") return Effect::Kind::open_app;
    if (kind == "noop") return Effect::Kind::noop;
    f.fail("kind", "expected one of navigate, set_state, back, open_app, noop");
}

PageDef build_page(const YAML::Node& node, const std::string& path) {
    yaml::Fields f(node, path);
    PageDef page;
    page.page_id = f.str("id");
    page.title = f.str("title", page.page_id);
    page.terminal = f.boolean("terminal", false);
    page.ui_tree = build_tree(page.title, f.list("elements"), f.child_path("elements"));

    auto variants = f.list("variants");
    for (std::size_t i = 0; i < variants.size(); ++i) {
        auto vpath = f.item_path("variants", i);
        yaml::Fields vf(variants[i], vpath);
        auto dir = parse_direction(vf.str("direction"));
        if (!dir) vf.fail("direction", "expected up, down, left or right");
        if (page.scroll_variants.count(*dir)) vf.fail("direction", "duplicate scroll variant");
        page.scroll_variants[*dir] = build_tree(page.title, vf.list("elements"), vf.child_path("elements"));
        vf.finish();
    }

    auto effects = f.list("effects");
    for (std::size_t i = 0; i < effects.size(); ++i) {
        yaml::Fields ef(effects[i], f.item_path("effects", i));
        auto element_id = ef.str("element_id");
        Effect effect;
        effect.kind = parse_kind(ef);
        switch (effect.kind) {
        case Effect::Kind::navigate:
        case Effect::Kind::open_app:
            effect.target = ef.str("target");
            break;
        case Effect::Kind::set_state:
            effect.key = ef.str("key");
            effect.value_template = ef.str("value", "");
            break;
        default:
            break;
        }
        if (page.element_effects.count(element_id)) ef.fail("element_id", "element already has an effect");
        page.element_effects.emplace(element_id, std::move(effect));
        ef.finish();
    }
    f.finish();
    return page;
}

} // namespace

std::string_view to_string(Effect::Kind k) {
    switch (k) {
    case Effect::Kind::navigate: return "navigate";
    case Effect::Kind::set_state: return "set_state";
    case Effect::Kind::back: return "back";
    case Effect::Kind::open_app: return "open_app";
    case Effect::Kind::noop: return "noop";
    }
    return "noop";
}

const PageDef* AppGraph::page(const std::string& id) const {
    auto it = pages.find(id);
    return it == pages.end() ? nullptr : &it->second;
}

void validate(const AppGraph& app) {
    if (app.app_id.empty()) throw ValidationError("app_id", "must not be empty");
    if (!app.pages.count(app.start_page)) {
        throw ValidationError("start_page", "page '" + app.start_page + "' does not exist");
    }
    for (const auto& [id, page] : app.pages) {
        for (const auto& [element_id, effect] : page.element_effects) {
            bool found = page.ui_tree.find(element_id) != nullptr;
            for (const auto& [dir, tree] : page.scroll_variants) found = found || tree.find(element_id);
            if (!found) {
                throw ValidationError("pages." + id, "effect references unknown element '" + element_id + "'");
            }
            if (effect.kind == Effect::Kind::navigate && !app.pages.count(effect.target)) {
                throw ValidationError("pages." + id,
                                      "navigate target page '" + effect.target + "' does not exist");
            }
        }
    }
}

AppGraph load_app_graph(const std::string& yaml_text) {
    auto doc = yaml::load(yaml_text, "app graph");
    yaml::Fields f(doc, "");
    AppGraph app;
    app.app_id = f.str("app_id");
    app.app_name = f.str("app_name");
    app.start_page = f.str("start_page");
    app.initial_state = f.str_map("initial_state");
    auto pages = f.list("pages", true);
    for (std::size_t i = 0; i < pages.size(); ++i) {
        auto page = build_page(pages[i], f.item_path("pages", i));
        if (app.pages.count(page.page_id)) {
            throw ValidationError(f.item_path("pages", i), "duplicate page id '" + page.page_id + "'");
        }
        app.pages.emplace(page.page_id, std::move(page));
    }
    f.finish();
    validate(app);
    return app;
}

AppGraph load_app_graph_file(const std::string& path) {
    return load_app_graph(io::read_file(path));
}

std::vector<AppGraphPtr> load_app_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("app directory not found: " + dir);
    std::vector<AppGraphPtr> apps;
    for (const auto& entry : fs::directory_iterator(dir)) {
        auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) {
            try {
                apps.push_back(std::make_shared<const AppGraph>(load_app_graph_file(entry.path().string())));
            } catch (const Error& e) {
                throw Error(entry.path().filename().string() + ": " + e.what());
            }
        }
    }
    std::sort(apps.begin(), apps.end(), [](const auto& a, const auto& b) { return a->app_id < b->app_id; });
    return apps;
}

} // namespace trailmap::device
