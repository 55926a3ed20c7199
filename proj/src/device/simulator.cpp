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

#include "trailmap/device/simulator.hpp"

#include <set>

#include <fmt/format.h>

#include "trailmap/core/text.hpp"

namespace trailmap::device {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

AppGraph build_launcher(const std::vector<AppGraphPtr>& apps) {
    AppGraph launcher;
    launcher.app_id = std::string(kLauncherAppId);
    launcher.app_name = "Launcher";
    launcher.start_page = std::string(kLauncherPageId);

    PageDef home;
    home.page_id = std::string(kLauncherPageId);
    home.title = "Home";
    ui::UiNode root;
    root.id = "__root";
    root.cls = "FrameLayout";
    root.enabled = true;
    root.bounds = {0, 0, 1080, 2400};
    for (std::size_t i = 0; i < apps.size(); ++i) {
        const auto& app = *apps[i];
        ui::UiNode icon;
        icon.id = "app_" + app.app_id;
        icon.cls = "TextView";
        icon.text = app.app_name;
        icon.content_desc = app.app_name;
        icon.clickable = true;
        icon.enabled = true;
        int left = static_cast<int>(i % 4) * 270;
        int top = 300 + static_cast<int>(i / 4) * 300;
        icon.bounds = {left, top, left + 270, top + 280};
        root.children.push_back(std::move(icon));
        home.element_effects.emplace("app_" + app.app_id, Effect{Effect::Kind::open_app, app.app_id, {}, {}});
    }
    home.ui_tree = ui::UiTree{std::move(root)};
    launcher.pages.emplace(home.page_id, std::move(home));
    return launcher;
}

std::string interpolate(const std::string& s, const std::map<std::string, std::string>& vars) {
    static constexpr std::string_view open = "{state:";
    if (s.find(open) == std::string::npos) return s;
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto start = s.find(open, pos);
        if (start == std::string::npos) break;
        auto close = s.find('}', start);
        if (close == std::string::npos) break;
        out.append(s, pos, start - pos);
        std::string spec = s.substr(start + open.size(), close - start - open.size());
        std::string fallback;
        if (auto bar = spec.find('|'); bar != std::string::npos) {
            fallback = spec.substr(bar + 1);
            spec.resize(bar);
        }
        auto it = vars.find(spec);
        out += it == vars.end() ? fallback : it->second;
        pos = close + 1;
    }
    out.append(s, pos, std::string::npos);
    return out;
}

void interpolate_tree(ui::UiNode& n, const std::map<std::string, std::string>& vars) {
    n.text = interpolate(n.text, vars);
    n.content_desc = interpolate(n.content_desc, vars);
    for (auto& c : n.children) interpolate_tree(c, vars);
}

} // namespace

SimulatedDevice::SimulatedDevice(std::vector<AppGraphPtr> apps) : apps_(std::move(apps)) {
    std::set<std::string> ids;
    for (const auto& app : apps_) {
        if (!app) throw PreconditionError("null app graph");
        if (app->app_id == kLauncherAppId) throw ValidationError("app_id", "'launcher' is reserved");
        if (!ids.insert(app->app_id).second) {
            throw ValidationError("app_id", "app '" + app->app_id + "' is installed twice");
        }
    }
    for (const auto& app : apps_) {
        for (const auto& [page_id, page] : app->pages) {
            for (const auto& [element_id, effect] : page.element_effects) {
                if (effect.kind == Effect::Kind::open_app && !ids.count(effect.target)) {
                    throw ValidationError(app->app_id + ".pages." + page_id,
                                          "open_app target '" + effect.target + "' is not installed");
                }
            }
        }
    }
    launcher_ = build_launcher(apps_);
}

const AppGraph* SimulatedDevice::app(const std::string& app_id) const {
    if (app_id == kLauncherAppId) return &launcher_;
    for (const auto& a : apps_) {
        if (a->app_id == app_id) return a.get();
    }
    return nullptr;
}

std::vector<InstalledApp> SimulatedDevice::installed_apps() const {
    std::vector<InstalledApp> out;
    for (const auto& a : apps_) out.push_back({a->app_id, a->app_name});
    return out;
}

const PageDef& SimulatedDevice::current_page_def() const {
    return *app(state_.current_app)->page(state_.current_page);
}

const ui::UiTree& SimulatedDevice::current_tree() const {
    const auto& page = current_page_def();
    if (state_.variant) {
        if (auto it = page.scroll_variants.find(*state_.variant); it != page.scroll_variants.end()) {
            return it->second;
        }
    }
    return page.ui_tree;
}

Observation SimulatedDevice::reset(const std::optional<std::string>& app_id) {
    if (apps_.empty()) throw PreconditionError("reset requires at least one installed app");
    if (app_id && (*app_id == kLauncherAppId || !app(*app_id))) {
        throw PreconditionError("unknown app '" + *app_id + "'");
    }
    state_ = DeviceState{};
    for (const auto& a : apps_) {
        for (const auto& [k, v] : a->initial_state) state_.state_vars[k] = v;
    }
    state_.current_app = std::string(kLauncherAppId);
    state_.current_page = std::string(kLauncherPageId);
    if (app_id) open(*app_id);
    started_ = true;
    last_ = observe();
    return *last_;
}

Observation SimulatedDevice::observe() const {
    if (!started_) throw EnvironmentError("device has not been reset");
    ui::UiTree tree = current_tree();
    interpolate_tree(tree.root, state_.state_vars);
    return make_observation(state_.current_app, state_.current_page, std::move(tree), state_.state_vars);
}

StepResult SimulatedDevice::accept(std::string message) {
    ++state_.step_counter;
    last_ = observe();
    return StepResult{*last_, StepOutcome::ok, std::move(message), state_.terminal};
}

StepResult SimulatedDevice::reject(std::string message) const {
    return StepResult{*last_, StepOutcome::invalid_action, std::move(message), false};
}

void SimulatedDevice::open(const std::string& app_id) {
    const AppGraph* a = app(app_id);
    state_.current_app = a->app_id;
    state_.current_page = a->start_page;
    state_.variant.reset();
    state_.back_stack.clear();
}

void SimulatedDevice::go_back() {
    if (!state_.back_stack.empty()) {
        auto loc = std::move(state_.back_stack.back());
        state_.back_stack.pop_back();
        state_.current_page = loc.page_id;
        state_.variant = loc.variant;
    } else if (state_.current_app != kLauncherAppId) {
        open(std::string(kLauncherAppId));
    }
}

void SimulatedDevice::apply_effect(const Effect& effect, const std::string& typed) {
    switch (effect.kind) {
    case Effect::Kind::navigate:
        state_.back_stack.push_back({state_.current_app, state_.current_page, state_.variant});
        state_.current_page = effect.target;
        state_.variant.reset();
        break;
    case Effect::Kind::set_state:
        state_.state_vars[effect.key] = text::replace_all(effect.value_template, "{text}", typed);
        break;
    case Effect::Kind::back:
        go_back();
        break;
    case Effect::Kind::open_app:
        open(effect.target);
        break;
    case Effect::Kind::noop:
        break;
    }
}

StepResult SimulatedDevice::step(const Action& action) {
    if (!started_) throw EnvironmentError("device has not been reset");
    if (state_.terminal) throw EnvironmentError("episode already finished; reset before stepping");

    auto resolve = [&](int label, ui::Affordance needed) -> const ui::SomEntry* {
        const auto* entry = last_->som.find(label);
        return entry && entry->affordances.has(needed) ? entry : nullptr;
    };
    auto missing = [&](int label, const char* verb) {
        const auto* entry = last_->som.find(label);
        if (!entry) {
            return reject(fmt::format("invalid action: no element with label {} on this page (valid labels 1..{})",
                                      label, last_->som.size()));
        }
        return reject(fmt::format("invalid action: element [{}] cannot be {}", label, verb));
    };
    auto fire = [&](const ui::SomEntry& entry, const std::string& typed) {
        const auto& effects = current_page_def().element_effects;
        if (auto it = effects.find(entry.node_id); it != effects.end()) apply_effect(it->second, typed);
    };

    return std::visit(
        overloaded{
            [&](const action::Click& c) {
                const auto* e = resolve(c.label, ui::Affordance::click);
                if (!e) return missing(c.label, "clicked");
                fire(*e, "");
                return accept();
            },
            [&](const action::Type& t) {
                const auto* e = resolve(t.label, ui::Affordance::type);
                if (!e) return missing(t.label, "typed into");
                fire(*e, t.text);
                return accept();
            },
            [&](const action::Scroll& s) {
                const auto* e = resolve(s.label, ui::Affordance::scroll);
                if (!e) return missing(s.label, "scrolled");
                const auto& page = current_page_def();
                if (page.scroll_variants.count(s.direction)) {
                    state_.variant = s.direction;
                } else {
                    state_.variant.reset();
                }
                return accept();
            },
            [&](const action::Back&) {
                go_back();
                return accept();
            },
            [&](const action::Home&) {
                open(std::string(kLauncherAppId));
                return accept();
            },
            [&](const action::OpenApp& o) {
                for (const auto& a : apps_) {
                    if (text::iequals(a->app_name, o.app_name) || a->app_id == o.app_name) {
                        open(a->app_id);
                        return accept();
                    }
                }
                return reject("invalid action: app '" + o.app_name + "' is not installed");
            },
            [&](const action::Finish&) {
                state_.terminal = true;
                return accept();
            },
        },
        action);
}

} // namespace trailmap::device
