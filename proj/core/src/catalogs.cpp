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

#include "apktriage/catalogs.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apktriage/descriptor.hpp"
#include "apktriage/error.hpp"

#ifndef APKTRIAGE_SOURCE_CATALOG_DIR
#define APKTRIAGE_SOURCE_CATALOG_DIR "catalogs"
#endif

namespace apktriage {

using nlohmann::json;

namespace {

constexpr std::string_view kGroupPrefix = "android.permission-group.";

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::CatalogInvalid, where + ": " + what);
}

json parse_json(std::string_view doc) {
    try {
        return json::parse(doc);
    } catch (const json::parse_error& e) {
        invalid("json", e.what());
    }
}

std::string require_version(const json& root) {
    if (!root.is_object()) invalid("document", "top level must be an object");
    auto it = root.find("version");
    if (it == root.end()) invalid("version", "missing mandatory field");
    if (it->is_string()) {
        if (it->get<std::string>().empty()) invalid("version", "must not be empty");
        return it->get<std::string>();
    }
    if (it->is_number_integer()) return it->dump();
    invalid("version", "must be a string or integer");
}

const json& require_array(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) invalid(where + "." + key, "missing or not an array");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) invalid(where + "." + key, "missing or not a string");
    std::string value = it->get<std::string>();
    if (value.empty()) invalid(where + "." + key, "must not be empty");
    return value;
}

std::vector<std::string> string_list(const json& arr, const std::string& where) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string() || arr[i].get<std::string>().empty()) {
            invalid(where + "[" + std::to_string(i) + "]", "must be a non-empty string");
        }
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

bool valid_feature_id(std::string_view id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

std::string plain_feature_id(std::string_view dotted) {
    std::string id(dotted);
    for (char& c : id) {
        if (c == '.') {
            c = '_';
        } else if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return id;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

FeatureCatalog load_plain_catalog(std::string_view doc) {
    FeatureCatalog catalog;
    catalog.version = "plain";
    std::set<std::string> ids;
    std::istringstream lines{std::string(doc)};
    std::string line;
    for (int lineno = 1; std::getline(lines, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string dotted = trim(line);
        if (dotted.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        FeatureSpec spec;
        spec.dotted = dotted;
        try {
            spec.descriptor = dotted_to_descriptor(dotted);
        } catch (const Error& e) {
            invalid(where, e.detail());
        }
        spec.id = plain_feature_id(dotted);
        if (!valid_feature_id(spec.id)) invalid(where, "cannot derive a feature id from '" + dotted + "'");
        if (!ids.insert(spec.id).second) invalid(where, "duplicate feature '" + dotted + "'");
        catalog.features.push_back(std::move(spec));
    }
    return catalog;
}

FeatureCatalog load_json_catalog(std::string_view doc) {
    const json root = parse_json(doc);
    FeatureCatalog catalog;
    catalog.version = require_version(root);
    const json& features = require_array(root, "features", "document");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const std::string where = "features[" + std::to_string(i) + "]";
        const json& item = features[i];
        if (!item.is_object()) invalid(where, "must be an object");
        FeatureSpec spec;
        spec.id = require_string(item, "id", where);
        spec.dotted = require_string(item, "dotted", where);
        if (!valid_feature_id(spec.id)) invalid(where + ".id", "'" + spec.id + "' is not a lowercase slug");
        if (!ids.insert(spec.id).second) invalid(where + ".id", "duplicate id '" + spec.id + "'");

        if (item.contains("descriptor")) {
            spec.descriptor = require_string(item, "descriptor", where);
        } else {
            try {
                spec.descriptor = dotted_to_descriptor(spec.dotted);
            } catch (const Error& e) {
                invalid(where + ".dotted", e.detail());
            }
        }
        if (!is_class_descriptor(spec.descriptor)) {
            invalid(where + ".descriptor", "'" + spec.descriptor + "' is not a class descriptor");
        }
        if (item.contains("severity")) {
            auto sev = parse_severity(require_string(item, "severity", where));
            if (!sev) invalid(where + ".severity", "expected low, medium or high");
            spec.severity = *sev;
        }
        if (item.contains("relevant_categories")) {
            const json& cats = require_array(item, "relevant_categories", where);
            for (auto& c : string_list(cats, where + ".relevant_categories")) {
                spec.relevant_categories.insert(std::move(c));
            }
        }
        catalog.features.push_back(std::move(spec));
    }
    return catalog;
}

TokenKind tag_token(std::string_view token) {
    if (token.starts_with(kGroupPrefix)) return TokenKind::PermissionGroup;
    if (token.find(".action.") != std::string_view::npos) return TokenKind::IntentAction;
    return TokenKind::Permission;
}

VerdictPolicy load_policy(const json& obj) {
    if (!obj.is_object()) invalid("verdict_policy", "must be an object");
    VerdictPolicy policy;
    if (auto it = obj.find("high_flag"); it != obj.end()) {
        std::optional<VerdictLevel> level = it->is_string() ? parse_verdict_level(it->get<std::string>())
                                                            : std::nullopt;
        if (!level) invalid("verdict_policy.high_flag", "expected Benign, Suspicious or MaliciousSuspect");
        policy.high_flag = *level;
    }
    auto positive = [&](const char* key, int& target) {
        if (auto it = obj.find(key); it != obj.end()) {
            if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > 1'000'000) {
                invalid(std::string("verdict_policy.") + key, "must be a positive integer");
            }
            target = it->get<int>();
        }
    };
    positive("flag_count_threshold", policy.flag_count_threshold);
    positive("over_threshold", policy.over_threshold);
    return policy;
}

}  // namespace

std::string_view to_string(Severity severity) {
    switch (severity) {
    case Severity::Low: return "low";
    case Severity::Medium: return "medium";
    case Severity::High: return "high";
    }
    return "medium";
}

std::string_view to_string(VerdictLevel level) {
    switch (level) {
    case VerdictLevel::Benign: return "Benign";
    case VerdictLevel::Suspicious: return "Suspicious";
    case VerdictLevel::MaliciousSuspect: return "MaliciousSuspect";
    }
    return "Benign";
}

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Permission: return "permission";
    case TokenKind::PermissionGroup: return "permission_group";
    case TokenKind::IntentAction: return "intent_action";
    }
    return "permission";
}

std::optional<Severity> parse_severity(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "low") return Severity::Low;
    if (lower == "medium") return Severity::Medium;
    if (lower == "high") return Severity::High;
    return std::nullopt;
}

std::optional<VerdictLevel> parse_verdict_level(std::string_view text) {
    for (auto level : {VerdictLevel::Benign, VerdictLevel::Suspicious, VerdictLevel::MaliciousSuspect}) {
        if (to_string(level) == text) return level;
    }
    return std::nullopt;
}

const FeatureSpec* FeatureCatalog::find(std::string_view id) const {
    auto it = std::find_if(features.begin(), features.end(), [&](const FeatureSpec& f) { return f.id == id; });
    return it == features.end() ? nullptr : &*it;
}

const CategoryRule* CategoryRuleSet::find(std::string_view name) const {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const CategoryRule& r) { return r.name == name; });
    return it == rules.end() ? nullptr : &*it;
}

FeatureCatalog load_feature_catalog(std::string_view doc) {
    const auto first = doc.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && doc[first] == '{') return load_json_catalog(doc);
    return load_plain_catalog(doc);
}

CategoryRuleSet load_category_rules(std::string_view doc) {
    const json root = parse_json(doc);
    CategoryRuleSet rules;
    rules.version = require_version(root);

    if (auto it = root.find("group_map"); it != root.end()) {
        if (!it->is_object()) invalid("group_map", "must be an object");
        for (const auto& [group, members] : it->items()) {
            const std::string where = "group_map." + group;
            if (!group.starts_with(kGroupPrefix)) invalid(where, "group names must start with " + std::string(kGroupPrefix));
            if (!members.is_array()) invalid(where, "must be an array");
            auto list = string_list(members, where);
            if (list.empty()) invalid(where, "group has no member permissions");
            rules.group_map[group].insert(list.begin(), list.end());
        }
    }

    const json& categories = require_array(root, "categories", "document");
    std::set<std::string> names;
    for (std::size_t i = 0; i < categories.size(); ++i) {
        const std::string where = "categories[" + std::to_string(i) + "]";
        const json& item = categories[i];
        if (!item.is_object()) invalid(where, "must be an object");
        CategoryRule rule;
        rule.name = require_string(item, "name", where);
        if (rule.name == "Uncategorized") invalid(where + ".name", "'Uncategorized' is reserved");
        if (!names.insert(rule.name).second) invalid(where + ".name", "duplicate category '" + rule.name + "'");

        std::map<std::string, TokenKind> tokens;
        if (item.contains("tokens")) {
            for (auto& t : string_list(require_array(item, "tokens", where), where + ".tokens")) {
                const TokenKind kind = tag_token(t);
                tokens[std::move(t)] = kind;
            }
        }
        if (item.contains("actions")) {
            for (auto& t : string_list(require_array(item, "actions", where), where + ".actions")) {
                tokens[std::move(t)] = TokenKind::IntentAction;
            }
        }
        if (tokens.empty()) invalid(where + ".tokens", "category '" + rule.name + "' has no tokens");
        for (auto& [value, kind] : tokens) {
            if (kind == TokenKind::PermissionGroup && !rules.group_map.contains(value)) {
                invalid(where + ".tokens", "group '" + value + "' missing from group_map");
            }
            rule.tokens.push_back({value, kind});
        }
        rules.rules.push_back(std::move(rule));
    }

    if (auto it = root.find("verdict_policy"); it != root.end()) rules.verdict_policy = load_policy(*it);
    return rules;
}

ApiPermissionMap load_api_map(std::string_view doc) {
    const json root = parse_json(doc);
    ApiPermissionMap map;
    map.version = require_version(root);
    const json& entries = require_array(root, "entries", "document");
    std::set<std::pair<std::string, std::string>> keys;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        const json& item = entries[i];
        if (!item.is_object()) invalid(where, "must be an object");
        ApiPermissionEntry entry;
        const std::string cls = require_string(item, "class", where);
        if (is_class_descriptor(cls)) {
            entry.class_descriptor = cls;
        } else {
            try {
                entry.class_descriptor = dotted_to_descriptor(cls);
            } catch (const Error& e) {
                invalid(where + ".class", e.detail());
            }
        }
        entry.method_name = require_string(item, "method", where);
        for (auto& p : string_list(require_array(item, "permissions", where), where + ".permissions")) {
            entry.required_permissions.insert(std::move(p));
        }
        if (entry.required_permissions.empty()) invalid(where + ".permissions", "must not be empty");
        if (!keys.emplace(entry.class_descriptor, entry.method_name).second) {
            invalid(where, "duplicate entry " + entry.class_descriptor + "->" + entry.method_name);
        }
        map.mapped_permissions.insert(entry.required_permissions.begin(), entry.required_permissions.end());
        map.entries.push_back(std::move(entry));
    }
    return map;
}

void validate_catalog_against_rules(const FeatureCatalog& catalog, const CategoryRuleSet& rules) {
    for (const auto& feature : catalog.features) {
        for (const auto& category : feature.relevant_categories) {
            if (rules.find(category) == nullptr) {
                invalid("feature " + feature.id, "relevant category '" + category + "' is not a rule");
            }
        }
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path.string());
    return buf.str();
}

std::filesystem::path default_catalog_dir() {
    if (const char* env = std::getenv("APKTRIAGE_CATALOG_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    std::error_code ec;
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        auto installed = exe.parent_path().parent_path() / "share" / "apktriage" / "catalogs";
        if (std::filesystem::is_directory(installed, ec)) return installed;
    }
    return APKTRIAGE_SOURCE_CATALOG_DIR;
}

Catalogs load_catalogs(const CatalogPaths& paths) {
    const auto dir = default_catalog_dir();
    auto load = [](const std::filesystem::path& path, auto loader) {
        const std::string text = read_text_file(path);
        try {
            return loader(text);
        } catch (const Error& e) {
            throw Error(e.kind(), path.string() + ": " + e.detail());
        }
    };
    Catalogs catalogs{
        load(paths.features.value_or(dir / "features.json"), load_feature_catalog),
        load(paths.categories.value_or(dir / "categories.json"), load_category_rules),
        load(paths.api_map.value_or(dir / "api_map.json"), load_api_map),
    };
    validate_catalog_against_rules(catalogs.features, catalogs.rules);
    return catalogs;
}

}  // namespace apktriage
