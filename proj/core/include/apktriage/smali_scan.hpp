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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apktriage/catalogs.hpp"
#include "apktriage/dex.hpp"
#include "apktriage/ingest.hpp"

namespace apktriage {

// Declaration order is the sort order within a (feature, file, line) key.
enum class HitKind { TypeRef, Invoke, StringLiteral, DexRef };

std::string_view to_string(HitKind kind);

struct FeatureHit {
    std::string feature_id;
    std::string file;
    /// 1-based; absent for DexRef hits.
    std::optional<int> line;
    HitKind kind = HitKind::TypeRef;

    friend auto operator<=>(const FeatureHit&, const FeatureHit&) = default;
    friend bool operator==(const FeatureHit&, const FeatureHit&) = default;
};

struct ScanResult {
    std::vector<FeatureHit> hits;
    std::set<MethodSig> api_refs;
};

struct FeatureReport {
    /// Sorted by (feature_id, file, line, kind).
    std::vector<FeatureHit> hits;
    /// Only features with at least one hit appear.
    std::map<std::string, int> counts;
    std::set<MethodSig> api_refs;

    friend bool operator==(const FeatureReport&, const FeatureReport&) = default;
};

/// Parses `Lpkg/Cls;->name(` out of an invoke-* line; nullopt if the line is
/// not an invoke or has no callee reference.
std::optional<MethodSig> parse_invoke(std::string_view line);

/// Tags one smali file line by line:
///  - a line containing a feature descriptor yields a TypeRef hit, or an
///    Invoke hit when the line is an invoke-* whose callee class is that
///    descriptor;
///  - a const-string line whose literal equals the feature's dotted name
///    yields a StringLiteral hit;
///  - every invoke-* line contributes its callee to api_refs.
/// At most one hit per (feature, kind) per line. Hits are in line order.
ScanResult scan_file(const SmaliFile& file, const FeatureCatalog& catalog);

/// Scans a whole bundle (smali text or DEX constant pools) into a sorted,
/// counted report. Output is independent of file order.
FeatureReport scan_bundle(const AppBundle& bundle, const FeatureCatalog& catalog);

/// Sorts hits canonically and fills counts.
FeatureReport make_feature_report(std::vector<FeatureHit> hits, std::set<MethodSig> api_refs);

}  // namespace apktriage
