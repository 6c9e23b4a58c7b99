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

#include "apktriage/mismatch.hpp"

#include <algorithm>
#include <map>

#include "apktriage/categorizer.hpp"

namespace apktriage {

namespace {

std::string join(const std::set<std::string>& items, std::string_view sep) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += sep;
        out += item;
    }
    return out;
}

std::string join_ids(const std::vector<const FlaggedFeature*>& flags) {
    std::string out;
    for (const auto* f : flags) {
        if (!out.empty()) out += ", ";
        out += f->feature_id;
    }
    return out;
}

}  // namespace

std::string_view to_string(GapStatus status) {
    switch (status) {
    case GapStatus::Exact: return "Exact";
    case GapStatus::OverPrivileged: return "OverPrivileged";
    case GapStatus::UnderPrivileged: return "UnderPrivileged";
    case GapStatus::Both: return "Both";
    }
    return "Exact";
}

std::vector<FlaggedFeature> flag_features(const FeatureReport& report, const FeatureCatalog& catalog,
                                          std::string_view assigned) {
    std::vector<FlaggedFeature> flags;
    if (assigned == kUncategorized) return flags;
    for (const auto& [id, count] : report.counts) {
        const FeatureSpec* spec = catalog.find(id);
        if (spec == nullptr || count < 1 || spec->relevant_categories.empty() ||
            spec->relevant_categories.contains(std::string(assigned))) {
            continue;
        }
        flags.push_back({id, spec->severity,
                         spec->dotted + " is expected in {" + join(spec->relevant_categories, ", ") +
                             "} but the app is categorized as " + std::string(assigned),
                         count});
    }
    std::sort(flags.begin(), flags.end(), [](const FlaggedFeature& a, const FlaggedFeature& b) {
        if (a.severity != b.severity) return a.severity > b.severity;
        return a.feature_id < b.feature_id;
    });
    return flags;
}

PermissionGap permission_gap(const std::set<MethodSig>& api_refs, const ManifestInfo& manifest,
                             const ApiPermissionMap& map) {
    std::map<std::pair<std::string_view, std::string_view>, const ApiPermissionEntry*> exact;
    std::map<std::string_view, const ApiPermissionEntry*> wildcard;
    for (const auto& entry : map.entries) {
        if (entry.method_name == "*") {
            wildcard[entry.class_descriptor] = &entry;
        } else {
            exact[{entry.class_descriptor, entry.method_name}] = &entry;
        }
    }

    PermissionGap gap;
    for (const auto& ref : api_refs) {
        bool mapped = false;
        if (auto it = exact.find({ref.class_descriptor, ref.name}); it != exact.end()) {
            gap.used.insert(it->second->required_permissions.begin(), it->second->required_permissions.end());
            mapped = true;
        }
        if (auto it = wildcard.find(ref.class_descriptor); it != wildcard.end()) {
            gap.used.insert(it->second->required_permissions.begin(), it->second->required_permissions.end());
            mapped = true;
        }
        if (!mapped) ++gap.unmapped_ref_count;
    }

    const auto& declared = manifest.declared_permissions;
    for (const auto& p : declared) {
        if (map.mapped_permissions.contains(p) && !gap.used.contains(p)) gap.over.insert(p);
    }
    for (const auto& p : gap.used) {
        if (!declared.contains(p)) gap.under.insert(p);
    }

    if (gap.over.empty() && gap.under.empty()) {
        gap.status = GapStatus::Exact;
    } else if (!gap.over.empty() && !gap.under.empty()) {
        gap.status = GapStatus::Both;
    } else {
        gap.status = gap.over.empty() ? GapStatus::UnderPrivileged : GapStatus::OverPrivileged;
    }
    return gap;
}

Verdict verdict(const std::vector<FlaggedFeature>& flags, const PermissionGap& gap, const VerdictPolicy& policy) {
    Verdict out;
    auto raise = [&](VerdictLevel level, std::string reason) {
        out.level = std::max(out.level, level);
        out.reasons.push_back(std::move(reason));
    };

    std::vector<const FlaggedFeature*> high;
    std::vector<const FlaggedFeature*> all;
    for (const auto& f : flags) {
        all.push_back(&f);
        if (f.severity == Severity::High) high.push_back(&f);
    }

    if (!high.empty()) {
        raise(policy.high_flag, std::to_string(high.size()) + " high-severity feature(s) flagged: " + join_ids(high));
    }
    if (static_cast<int>(flags.size()) >= policy.flag_count_threshold) {
        raise(VerdictLevel::MaliciousSuspect, std::to_string(flags.size()) + " flagged features (threshold " +
                                                  std::to_string(policy.flag_count_threshold) + ")");
    }
    if (!flags.empty()) {
        raise(VerdictLevel::Suspicious,
              std::to_string(flags.size()) + " feature(s) irrelevant to the assigned category: " + join_ids(all));
    }
    if ((gap.status == GapStatus::OverPrivileged || gap.status == GapStatus::Both) &&
        static_cast<int>(gap.over.size()) >= policy.over_threshold) {
        raise(VerdictLevel::Suspicious, std::to_string(gap.over.size()) + " declared but unused permissions: " +
                                            join(gap.over, ", "));
    }
    return out;
}

}  // namespace apktriage
