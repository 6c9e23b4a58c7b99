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

#include <set>
#include <string>
#include <vector>

#include "apktriage/catalogs.hpp"
#include "apktriage/dex.hpp"
#include "apktriage/manifest.hpp"
#include "apktriage/smali_scan.hpp"

namespace apktriage {

struct FlaggedFeature {
    std::string feature_id;
    Severity severity = Severity::Medium;
    std::string reason;
    int occurrence_count = 0;

    friend bool operator==(const FlaggedFeature&, const FlaggedFeature&) = default;
};

enum class GapStatus { Exact, OverPrivileged, UnderPrivileged, Both };

std::string_view to_string(GapStatus status);

struct PermissionGap {
    std::set<std::string> used;
    std::set<std::string> over;
    std::set<std::string> under;
    int unmapped_ref_count = 0;
    GapStatus status = GapStatus::Exact;

    friend bool operator==(const PermissionGap&, const PermissionGap&) = default;
};

struct Verdict {
    VerdictLevel level = VerdictLevel::Benign;
    std::vector<std::string> reasons;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Features that were hit, carry a non-empty relevant_categories, and do not
/// list the assigned category. "Uncategorized" flags nothing. Sorted by
/// severity desc, then id.
std::vector<FlaggedFeature> flag_features(const FeatureReport& report, const FeatureCatalog& catalog,
                                          std::string_view assigned);

/// used  = permissions required by API refs found in the map;
/// over  = (declared ∩ mapped) − used;
/// under = used − declared.
PermissionGap permission_gap(const std::set<MethodSig>& api_refs, const ManifestInfo& manifest,
                             const ApiPermissionMap& map);

/// Applies the policy thresholds. Under-privilege never raises the level.
Verdict verdict(const std::vector<FlaggedFeature>& flags, const PermissionGap& gap,
                const VerdictPolicy& policy = {});

}  // namespace apktriage
