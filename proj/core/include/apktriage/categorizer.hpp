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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apktriage/catalogs.hpp"
#include "apktriage/manifest.hpp"
#include "apktriage/ratio.hpp"

namespace apktriage {

inline constexpr std::string_view kUncategorized = "Uncategorized";

struct CategoryScore {
    std::string name;
    /// matched_tokens.size() / token_count, exact.
    Ratio score;
    std::set<std::string> matched_tokens;
    std::size_t token_count = 0;

    friend bool operator==(const CategoryScore&, const CategoryScore&) = default;
};

struct Assignment {
    std::string assigned;
    Ratio score;
    std::optional<std::string> declared;
    std::optional<bool> declared_agreement;
    /// Every category, in score_categories order.
    std::vector<CategoryScore> ranking;
    /// Non-fatal diagnostics (e.g. an unknown declared category).
    std::vector<std::string> warnings;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Scores each rule by the fraction of its tokens found in the manifest's
/// permissions and intent actions; a permission-group token matches when any
/// member permission is declared. Sorted by score desc, matched count desc,
/// rule size desc, name asc.
std::vector<CategoryScore> score_categories(const ManifestInfo& manifest, const CategoryRuleSet& rules);

/// Picks the top-ranked category when it reaches min_score, otherwise
/// "Uncategorized". A declared category naming a known rule overrides the
/// pick and records whether it agreed; an unknown one only adds a warning.
Assignment assign_category(std::vector<CategoryScore> scores, const std::optional<std::string>& declared,
                           const Ratio& min_score, const CategoryRuleSet& rules);

}  // namespace apktriage
