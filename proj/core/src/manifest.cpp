/*
 * Copyright (C) 2026 The apktriage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "apktriage/manifest.hpp"

#include <expat.h>

#include <memory>
#include <optional>

#include "apktriage/error.hpp"

namespace apktriage {

namespace {

constexpr char kNsSeparator = '\x01';

std::pair<std::optional<std::string>, std::string> split_name(const char* raw) {
    std::string_view name(raw);
    if (auto sep = name.find(kNsSeparator); sep != std::string_view::npos) {
        return {std::string(name.substr(0, sep)), std::string(name.substr(sep + 1))};
    }
    return {std::nullopt, std::string(name)};
}

struct TreeBuilder {
    std::vector<XmlNode> open;
    std::optional<XmlNode> root;

    static void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
        auto* self = static_cast<TreeBuilder*>(user);
        XmlNode node;
        std::tie(node.ns, node.name) = split_name(name);
        for (const XML_Char** a = attrs; *a != nullptr; a += 2) {
            auto [ns, local] = split_name(a[0]);
            node.attributes.push_back({std::move(ns), std::move(local), a[1]});
        }
        self->open.push_back(std::move(node));
    }

    static void on_end(void* user, const XML_Char*) {
        auto* self = static_cast<TreeBuilder*>(user);
        XmlNode done = std::move(self->open.back());
        self->open.pop_back();
        if (self->open.empty()) {
            self->root = std::move(done);
        } else {
            self->open.back().children.push_back(std::move(done));
        }
    }
};

bool is_identifier_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_identifier_char(char c) { return is_identifier_start(c) || (c >= '0' && c <= '9'); }

// [A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*
bool valid_package(std::string_view pkg) {
    bool segment_start = true;
    for (char c : pkg) {
        if (segment_start) {
            if (!is_identifier_start(c)) return false;
            segment_start = false;
        } else if (c == '.') {
            segment_start = true;
        } else if (!is_identifier_char(c)) {
            return false;
        }
    }
    return !segment_start;
}

std::optional<ComponentKind> component_kind(std::string_view element) {
    if (element == "activity") return ComponentKind::Activity;
    if (element == "service") return ComponentKind::Service;
    if (element == "receiver") return ComponentKind::Receiver;
    if (element == "provider") return ComponentKind::Provider;
    return std::nullopt;
}

void collect_actions(const XmlNode& node, bool in_filter, std::set<std::string>& actions) {
    for (const auto& child : node.children) {
        if (in_filter && child.name == "action") {
            if (const auto* name = child.attribute("name"); name && !name->empty()) actions.insert(*name);
        }
        collect_actions(child, in_filter || child.name == "intent-filter", actions);
    }
}

}  // namespace

std::string_view to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::Activity: return "activity";
    case ComponentKind::Service: return "service";
    case ComponentKind::Receiver: return "receiver";
    case ComponentKind::Provider: return "provider";
    }
    return "unknown";
}

XmlTree parse_xml_text(std::string_view text) {
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreateNS(nullptr, kNsSeparator), &XML_ParserFree);
    if (!parser) throw Error(ErrorKind::ManifestUnparsable, "cannot allocate XML parser");

    TreeBuilder builder;
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
    if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
        throw Error(ErrorKind::ManifestUnparsable,
                    std::string("XML error at line ") +
                        std::to_string(XML_GetCurrentLineNumber(parser.get())) + ", column " +
                        std::to_string(XML_GetCurrentColumnNumber(parser.get())) + ": " +
                        XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    if (!builder.root) throw Error(ErrorKind::ManifestUnparsable, "document has no root element");
    return XmlTree{std::move(*builder.root)};
}

ManifestInfo manifest_from_axml(const XmlTree& tree) {
    const XmlNode& root = tree.root;
    if (root.name != "manifest") {
        throw Error(ErrorKind::ManifestUnparsable, "root element is <" + root.name + ">, expected <manifest>");
    }
    const std::string* package = root.attribute("package");
    if (package == nullptr) throw Error(ErrorKind::ManifestUnparsable, "missing package attribute");
    if (!valid_package(*package)) {
        throw Error(ErrorKind::ManifestUnparsable, "invalid package name '" + *package + "'");
    }

    ManifestInfo info;
    info.package = *package;
    for (const auto& child : root.children) {
        if (child.name == "uses-permission" || child.name == "uses-permission-sdk-23") {
            if (const auto* name = child.attribute("name"); name && !name->empty()) {
                info.declared_permissions.insert(*name);
            }
        } else if (child.name == "application") {
            for (const auto& comp : child.children) {
                if (auto kind = component_kind(comp.name)) {
                    const auto* name = comp.attribute("name");
                    info.components.push_back({*kind, name ? *name : std::string()});
                }
            }
        }
    }
    collect_actions(root, false, info.intent_actions);
    return info;
}

ManifestInfo parse_manifest_xml(std::string_view text) { return manifest_from_axml(parse_xml_text(text)); }

}  // namespace apktriage
