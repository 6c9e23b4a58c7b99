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
#include <string>
#include <string_view>
#include <vector>

#include "apktriage/categorizer.hpp"
#include "apktriage/ingest.hpp"
#include "apktriage/mismatch.hpp"
#include "apktriage/smali_scan.hpp"

namespace apktriage {

std::string_view tool_version();

struct CatalogVersions {
    std::string features;
    std::string categories;
    std::string api_map;

    friend bool operator==(const CatalogVersions&, const CatalogVersions&) = default;
};

struct FeatureLocation {
    std::string file;
    std::optional<int> line;
    HitKind kind = HitKind::TypeRef;

    friend bool operator==(const FeatureLocation&, const FeatureLocation&) = default;
};

struct ReportFeature {
    std::string feature_id;
    std::string dotted;
    int count = 0;
    std::vector<FeatureLocation> locations;
    bool flagged = false;
    Severity severity = Severity::Medium;

    friend bool operator==(const ReportFeature&, const ReportFeature&) = default;
};

struct ReportPermissions {
    std::vector<std::string> declared;
    std::vector<std::string> used;
    std::vector<std::string> over;
    std::vector<std::string> under;
    int unmapped_ref_count = 0;
    GapStatus status = GapStatus::Exact;

    friend bool operator==(const ReportPermissions&, const ReportPermissions&) = default;
};

/// Final per-app result. All lists are in canonical order so equal reports
/// serialize to identical bytes.
struct Report {
    std::string tool_version;
    CatalogVersions catalog_versions;
    std::string app_id;
    InputKind source = InputKind::ApktoolDir;
    Assignment assignment;
    std::vector<ReportFeature> features;
    std::vector<FlaggedFeature> flags;
    ReportPermissions permissions;
    Verdict verdict;

    friend bool operator==(const Report&, const Report&) = default;
};

Report build_report(const AppBundle& bundle, const FeatureReport& features, const FeatureCatalog& catalog,
                    const Assignment& assignment, const std::vector<FlaggedFeature>& flags,
                    const PermissionGap& gap, const Verdict& verdict, const CatalogVersions& versions);

enum class Format { Json, Text };

/// Json: sorted keys, no insignificant whitespace, trailing LF.
/// Text: a one-line header, then Features / Flags / Permission gap / Verdict.
std::string render(const Report& report, Format format);

/// Inverse of render(report, Format::Json). Throws Error(Usage) on malformed input.
Report parse_report_json(std::string_view json_text);

/// 0 for Benign, 10 for Suspicious, 11 for MaliciousSuspect.
int exit_code_for(VerdictLevel level);

}  // namespace apktriage
