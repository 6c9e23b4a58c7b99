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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "apktriage/categorizer.hpp"
#include "apktriage/manifest.hpp"
#include "test_support.hpp"

using namespace apktriage;
using apktriage::testing::shipped_catalogs;

namespace {

const CategoryRuleSet& rules() { return shipped_catalogs().rules; }

std::string perm(const std::string& s) { return "android.permission." + s; }

ManifestInfo with_perms(std::initializer_list<const char*> names) {
    ManifestInfo m;
    m.package = "t.app";
    for (const char* n : names) m.declared_permissions.insert(perm(n));
    return m;
}

Ratio score_of(const std::vector<CategoryScore>& scores, const std::string& name) {
    for (const auto& s : scores) {
        if (s.name == name) return s.score;
    }
    ADD_FAILURE() << name;
    return {};
}

// Every permission, group member and action the shipped rules can see, plus noise.
std::vector<std::string> evidence_universe() {
    std::set<std::string> u{perm("VIBRATE"), perm("NFC"), "android.intent.action.MAIN"};
    for (const auto& r : rules().rules) {
        for (const auto& t : r.tokens) {
            if (t.kind == TokenKind::PermissionGroup) {
                u.insert(rules().group_map.at(t.value).begin(), rules().group_map.at(t.value).end());
            } else {
                u.insert(t.value);
            }
        }
    }
    return {u.begin(), u.end()};
}

ManifestInfo random_manifest(std::mt19937& rng, const std::vector<std::string>& universe) {
    ManifestInfo m;
    m.package = "r.app";
    const int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
        const auto& v = universe[rng() % universe.size()];
        if (v.find(".action.") != std::string::npos) {
            m.intent_actions.insert(v);
        } else {
            m.declared_permissions.insert(v);
        }
    }
    return m;
}

}  // namespace

TEST(Categorizer, CommunicationFullMatch) {
    const auto scores =
        score_categories(with_perms({"WRITE_SMS", "SEND_SMS", "CALL_PHONE", "READ_SMS"}), rules());
    EXPECT_EQ(scores.front().name, "Communication");
    EXPECT_EQ(scores.front().score, Ratio(1, 1));
    EXPECT_EQ(scores.front().matched_tokens.size(), 4u);
}

TEST(Categorizer, GamesRanking) {
    const auto scores = score_categories(with_perms({"INTERNET", "READ_PHONE_STATE"}), rules());
    EXPECT_EQ(scores.front().name, "Games");
    EXPECT_EQ(score_of(scores, "Games"), Ratio(1, 1));
    EXPECT_EQ(score_of(scores, "Travel & Local"), Ratio(1, 2));
    EXPECT_EQ(score_of(scores, "Media"), Ratio(1, 4));
}

TEST(Categorizer, EmptyEvidenceSortsByName) {
    const auto scores = score_categories(with_perms({}), rules());
    // All zero: tie-break by rule size desc, then name.
    std::vector<std::string> names;
    for (const auto& s : scores) {
        EXPECT_EQ(s.score, Ratio(0, 1));
        names.push_back(s.name);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"Social App", "Communication", "Media", "Utility", "Education",
                                               "Games", "Travel & Local", "Widgets"}));
    EXPECT_EQ(assign_category(scores, std::nullopt, Ratio(1, 2), rules()).assigned, kUncategorized);
}

TEST(Categorizer, InternetOnlyTieBreak) {
    const auto scores = score_categories(with_perms({"INTERNET"}), rules());
    EXPECT_EQ(scores[0].name, "Games");
    EXPECT_EQ(scores[1].name, "Travel & Local");
    const auto a = assign_category(scores, std::nullopt, Ratio(1, 2), rules());
    EXPECT_EQ(a.assigned, "Games");
    EXPECT_EQ(a.score, Ratio(1, 2));
    EXPECT_EQ(assign_category(scores, std::nullopt, Ratio::parse("0.6"), rules()).assigned, kUncategorized);
}

TEST(Categorizer, DeclaredOverrideReportsDisagreement) {
    const auto scores =
        score_categories(with_perms({"CAMERA", "RECORD_AUDIO", "MODIFY_AUDIO_SETTINGS", "INTERNET"}), rules());
    const auto a = assign_category(scores, std::string("Games"), Ratio(1, 2), rules());
    EXPECT_EQ(a.assigned, "Games");
    EXPECT_EQ(a.declared, "Games");
    EXPECT_EQ(a.declared_agreement, false);
    EXPECT_EQ(a.ranking.front().name, "Media");
    EXPECT_EQ(a.score, Ratio(1, 2));
    EXPECT_TRUE(a.warnings.empty());

    const auto agree = assign_category(scores, std::string("Media"), Ratio(1, 2), rules());
    EXPECT_EQ(agree.declared_agreement, true);
}

TEST(Categorizer, UnknownDeclaredCategoryWarns) {
    const auto scores = score_categories(with_perms({"INTERNET", "READ_PHONE_STATE"}), rules());
    const auto a = assign_category(scores, std::string("Racing"), Ratio(1, 2), rules());
    EXPECT_EQ(a.assigned, "Games");
    EXPECT_EQ(a.declared_agreement, false);
    ASSERT_EQ(a.warnings.size(), 1u);
    EXPECT_TRUE(a.warnings[0].starts_with("UnknownDeclaredCategory"));
}

TEST(Categorizer, GroupsAndActionsMatch) {
    ManifestInfo m = with_perms({"ACCESS_COARSE_LOCATION", "INTERNET"});
    EXPECT_EQ(score_categories(m, rules()).front().name, "Travel & Local");
    m = with_perms({});
    m.intent_actions = {"android.appwidget.action.APPWIDGET_UPDATE", "android.appwidget.action.APPWIDGET_CONFIGURE"};
    EXPECT_EQ(score_categories(m, rules()).front().name, "Widgets");
    // Actions only count as actions, never as declared permissions.
    m = with_perms({});
    m.declared_permissions = {"android.appwidget.action.APPWIDGET_UPDATE"};
    m.intent_actions = {perm("INTERNET")};
    EXPECT_EQ(score_of(score_categories(m, rules()), "Widgets"), Ratio(1, 2));
}

TEST(CategorizerProperty, ScoresMatchBruteForce) {
    const auto universe = evidence_universe();
    std::mt19937 rng(101);
    for (int i = 0; i < 500; ++i) {
        const ManifestInfo m = random_manifest(rng, universe);
        const auto scores = score_categories(m, rules());
        for (const auto& rule : rules().rules) {
            int matched = 0;
            for (const auto& t : rule.tokens) {
                bool hit = false;
                if (t.kind == TokenKind::PermissionGroup) {
                    for (const auto& member : rules().group_map.at(t.value)) hit |= m.declared_permissions.count(member) > 0;
                } else if (t.kind == TokenKind::IntentAction) {
                    hit = m.intent_actions.count(t.value) > 0;
                } else {
                    hit = m.declared_permissions.count(t.value) > 0;
                }
                matched += hit;
            }
            const Ratio s = score_of(scores, rule.name);
            EXPECT_EQ(s, Ratio(matched, static_cast<std::int64_t>(rule.tokens.size())));
            EXPECT_GE(s, Ratio(0, 1));
            EXPECT_LE(s, Ratio(1, 1));
            EXPECT_EQ(s == Ratio(1, 1), matched == static_cast<int>(rule.tokens.size()));
        }
    }
}

TEST(CategorizerProperty, Monotonicity) {
    const auto universe = evidence_universe();
    std::mt19937 rng(202);
    for (int i = 0; i < 300; ++i) {
        ManifestInfo m = random_manifest(rng, universe);
        const auto before = score_categories(m, rules());
        m.declared_permissions.insert(universe[rng() % universe.size()]);
        const auto after = score_categories(m, rules());
        for (const auto& s : before) EXPECT_GE(score_of(after, s.name), s.score) << s.name;
    }
}

TEST(CategorizerProperty, RuleOrderInvariance) {
    const auto universe = evidence_universe();
    std::mt19937 rng(303);
    CategoryRuleSet shuffled = rules();
    for (int i = 0; i < 200; ++i) {
        const ManifestInfo m = random_manifest(rng, universe);
        std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
        const auto declared = (i % 3 == 0) ? std::optional<std::string>("Media") : std::nullopt;
        EXPECT_EQ(assign_category(score_categories(m, rules()), declared, Ratio(1, 2), rules()),
                  assign_category(score_categories(m, shuffled), declared, Ratio(1, 2), shuffled));
    }
}

TEST(CategorizerProperty, DuplicatePermissionsDoNotMatter) {
    const auto universe = evidence_universe();
    std::mt19937 rng(404);
    for (int i = 0; i < 200; ++i) {
        const ManifestInfo m = random_manifest(rng, universe);
        std::string xml = "<manifest package=\"d.app\">";
        for (const auto& p : m.declared_permissions) {
            xml += "<uses-permission name=\"" + p + "\"/><uses-permission-sdk-23 name=\"" + p + "\"/>";
        }
        xml += "</manifest>";
        ManifestInfo parsed = parse_manifest_xml(xml);
        parsed.intent_actions = m.intent_actions;
        EXPECT_EQ(assign_category(score_categories(parsed, rules()), std::nullopt, Ratio(1, 2), rules()),
                  assign_category(score_categories(m, rules()), std::nullopt, Ratio(1, 2), rules()));
    }
}

TEST(CategorizerProperty, DeclaredOverrideKeepsRanking) {
    const auto universe = evidence_universe();
    std::mt19937 rng(505);
    for (int i = 0; i < 200; ++i) {
        const auto scores = score_categories(random_manifest(rng, universe), rules());
        const auto plain = assign_category(scores, std::nullopt, Ratio(1, 2), rules());
        const auto& name = rules().rules[rng() % rules().rules.size()].name;
        const auto declared = assign_category(scores, name, Ratio(1, 2), rules());
        EXPECT_EQ(declared.ranking, plain.ranking);
        EXPECT_EQ(declared.assigned, name);
        EXPECT_EQ(*declared.declared_agreement, plain.assigned == name);
    }
}
