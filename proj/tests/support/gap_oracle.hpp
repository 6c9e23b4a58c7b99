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

#include <algorithm>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "apktriage/catalogs.hpp"
#include "apktriage/dex.hpp"

namespace apktriage::testing {

struct GapCase {
    std::set<std::string> declared;
    std::set<MethodSig> api_refs;
};

struct OracleGap {
    std::set<std::string> used, over, under;
    int unmapped = 0;
};

// Exhaustive evaluation: every ref is compared against every map entry.
inline OracleGap brute_force_gap(const GapCase& c, const ApiPermissionMap& map) {
    OracleGap g;
    std::set<std::string> mapped;
    for (const auto& e : map.entries) mapped.insert(e.required_permissions.begin(), e.required_permissions.end());
    for (const auto& ref : c.api_refs) {
        bool any = false;
        for (const auto& e : map.entries) {
            if (e.class_descriptor == ref.class_descriptor && (e.method_name == "*" || e.method_name == ref.name)) {
                g.used.insert(e.required_permissions.begin(), e.required_permissions.end());
                any = true;
            }
        }
        g.unmapped += !any;
    }
    std::set<std::string> declared_mapped;
    std::set_intersection(c.declared.begin(), c.declared.end(), mapped.begin(), mapped.end(),
                          std::inserter(declared_mapped, declared_mapped.end()));
    std::set_difference(declared_mapped.begin(), declared_mapped.end(), g.used.begin(), g.used.end(),
                        std::inserter(g.over, g.over.end()));
    std::set_difference(g.used.begin(), g.used.end(), c.declared.begin(), c.declared.end(),
                        std::inserter(g.under, g.under.end()));
    return g;
}

// Up to 6 declared permissions and 6 api refs drawn from the map (wildcard
// entries get a concrete method name), plus occasional unmapped noise.
inline GapCase random_gap_case(std::mt19937& rng, const ApiPermissionMap& map) {
    std::vector<std::string> perms(map.mapped_permissions.begin(), map.mapped_permissions.end());
    perms.push_back("android.permission.VIBRATE_EXTRA");
    perms.push_back("android.permission.NFC");
    GapCase c;
    const int n_decl = static_cast<int>(rng() % 7);
    for (int i = 0; i < n_decl; ++i) c.declared.insert(perms[rng() % perms.size()]);
    const int n_refs = static_cast<int>(rng() % 7);
    for (int i = 0; i < n_refs; ++i) {
        if (rng() % 6 == 0) {
            c.api_refs.insert({"Lcom/noise/N" + std::to_string(rng() % 3) + ";", "call"});
            continue;
        }
        const auto& e = map.entries[rng() % map.entries.size()];
        c.api_refs.insert({e.class_descriptor, e.method_name == "*" ? "m" + std::to_string(rng() % 3) : e.method_name});
    }
    return c;
}

}  // namespace apktriage::testing
