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

#include "apktriage/categorizer.hpp"

#include <algorithm>

namespace apktriage {

std::vector<CategoryScore> score_categories(const ManifestInfo& manifest, const CategoryRuleSet& rules) {
    auto in_evidence = [&](const std::string& value) {
        return manifest.declared_permissions.contains(value) || manifest.intent_actions.contains(value);
    };

    std::vector<CategoryScore> scores;
    scores.reserve(rules.rules.size());
    for (const auto& rule : rules.rules) {
        CategoryScore score;
        score.name = rule.name;
        score.token_count = rule.tokens.size();
        for (const auto& token : rule.tokens) {
            bool matched = false;
            if (token.kind == TokenKind::PermissionGroup) {
                const auto it = rules.group_map.find(token.value);
                matched = it != rules.group_map.end() &&
                          std::any_of(it->second.begin(), it->second.end(), in_evidence);
            } else {
                matched = in_evidence(token.value);
            }
            if (matched) score.matched_tokens.insert(token.value);
        }
        score.score = Ratio(static_cast<std::int64_t>(score.matched_tokens.size()),
                            static_cast<std::int64_t>(std::max<std::size_t>(score.token_count, 1)));
        scores.push_back(std::move(score));
    }

    std::sort(scores.begin(), scores.end(), [](const CategoryScore& a, const CategoryScore& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.matched_tokens.size() != b.matched_tokens.size()) {
            return a.matched_tokens.size() > b.matched_tokens.size();
        }
        if (a.token_count != b.token_count) return a.token_count > b.token_count;
        return a.name < b.name;
    });
    return scores;
}

Assignment assign_category(std::vector<CategoryScore> scores, const std::optional<std::string>& declared,
                           const Ratio& min_score, const CategoryRuleSet& rules) {
    Assignment out;
    std::string winner(kUncategorized);
    Ratio winner_score;
    if (!scores.empty()) {
        winner_score = scores.front().score;
        if (scores.front().score >= min_score) winner = scores.front().name;
    }
    out.assigned = winner;
    out.score = winner_score;

    if (declared) {
        out.declared = declared;
        out.declared_agreement = (*declared == winner);
        if (rules.find(*declared) != nullptr) {
            out.assigned = *declared;
            const auto it = std::find_if(scores.begin(), scores.end(),
                                         [&](const CategoryScore& s) { return s.name == *declared; });
            if (it != scores.end()) out.score = it->score;
        } else {
            out.warnings.push_back("UnknownDeclaredCategory: '" + *declared +
                                   "' names no category rule; using rule-based assignment");
        }
    }
    out.ranking = std::move(scores);
    return out;
}

}  // namespace apktriage
