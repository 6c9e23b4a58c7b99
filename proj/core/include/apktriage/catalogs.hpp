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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace apktriage {

enum class Severity { Low, Medium, High };
enum class VerdictLevel { Benign, Suspicious, MaliciousSuspect };

std::string_view to_string(Severity severity);
std::string_view to_string(VerdictLevel level);
std::optional<Severity> parse_severity(std::string_view text);
std::optional<VerdictLevel> parse_verdict_level(std::string_view text);

// ---------------------------------------------------------------- features

struct FeatureSpec {
    std::string id;
    std::string dotted;
    std::string descriptor;
    Severity severity = Severity::Medium;
    /// Empty means relevant to every category (never flagged).
    std::set<std::string> relevant_categories;

    friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

struct FeatureCatalog {
    std::string version;
    std::vector<FeatureSpec> features;

    const FeatureSpec* find(std::string_view id) const;
};

// ---------------------------------------------------------------- categories

enum class TokenKind { Permission, PermissionGroup, IntentAction };

std::string_view to_string(TokenKind kind);

struct CategoryToken {
    std::string value;
    TokenKind kind = TokenKind::Permission;

    friend auto operator<=>(const CategoryToken&, const CategoryToken&) = default;
    friend bool operator==(const CategoryToken&, const CategoryToken&) = default;
};

struct CategoryRule {
    std::string name;
    /// Unique by value, sorted.
    std::vector<CategoryToken> tokens;
};

/// Thresholds turning flags and permission gaps into a verdict.
struct VerdictPolicy {
    VerdictLevel high_flag = VerdictLevel::MaliciousSuspect;
    int flag_count_threshold = 3;
    int over_threshold = 2;

    friend bool operator==(const VerdictPolicy&, const VerdictPolicy&) = default;
};

struct CategoryRuleSet {
    std::string version;
    std::vector<CategoryRule> rules;
    std::map<std::string, std::set<std::string>> group_map;
    VerdictPolicy verdict_policy;

    const CategoryRule* find(std::string_view name) const;
};

// ---------------------------------------------------------------- api map

struct ApiPermissionEntry {
    std::string class_descriptor;
    /// Method simple name, or "*" for every method of the class.
    std::string method_name;
    std::set<std::string> required_permissions;
};

struct ApiPermissionMap {
    std::string version;
    std::vector<ApiPermissionEntry> entries;
    /// Union of every entry's required_permissions.
    std::set<std::string> mapped_permissions;
};

// ---------------------------------------------------------------- loading

/// Accepts the JSON form {version, features:[...]} or a plain list of dotted
/// class names (one per line, '#' comments). Throws Error(CatalogInvalid).
FeatureCatalog load_feature_catalog(std::string_view doc);

/// JSON {version, group_map, categories:[{name, tokens, actions?}], verdict_policy?}.
/// Tokens are tagged by shape: "android.permission-group." prefix is a group,
/// anything containing ".action." (or listed under "actions") is an intent
/// action, the rest are permissions. Throws Error(CatalogInvalid).
CategoryRuleSet load_category_rules(std::string_view doc);

/// JSON {version, entries:[{class, method, permissions}]}; class may be dotted
/// or a descriptor. Throws Error(CatalogInvalid).
ApiPermissionMap load_api_map(std::string_view doc);

/// relevant_categories of every feature must name a rule. Throws Error(CatalogInvalid).
void validate_catalog_against_rules(const FeatureCatalog& catalog, const CategoryRuleSet& rules);

struct Catalogs {
    FeatureCatalog features;
    CategoryRuleSet rules;
    ApiPermissionMap api_map;
};

struct CatalogPaths {
    std::optional<std::filesystem::path> features;
    std::optional<std::filesystem::path> categories;
    std::optional<std::filesystem::path> api_map;
};

/// APKTRIAGE_CATALOG_DIR if set, else the installed share directory next to
/// the executable, else the source tree's catalogs/ directory.
std::filesystem::path default_catalog_dir();

/// Loads all three knowledge bases, falling back to default_catalog_dir() for
/// any path not given, and cross-validates features against rules.
Catalogs load_catalogs(const CatalogPaths& paths = {});

/// Whole-file read. Throws Error(Io).
std::string read_text_file(const std::filesystem::path& path);

}  // namespace apktriage
