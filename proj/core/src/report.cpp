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

#include "apktriage/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "apktriage/error.hpp"

#ifndef APKTRIAGE_VERSION
#define APKTRIAGE_VERSION "0.0.0"
#endif

namespace apktriage {

using nlohmann::json;

namespace {

template <typename Enum, std::size_t N>
Enum enum_from(std::string_view text, const Enum (&values)[N], const char* what) {
    for (Enum v : values) {
        if (to_string(v) == text) return v;
    }
    throw Error(ErrorKind::Usage, std::string("unknown ") + what + " '" + std::string(text) + "'");
}

constexpr HitKind kHitKinds[] = {HitKind::TypeRef, HitKind::Invoke, HitKind::StringLiteral, HitKind::DexRef};
constexpr GapStatus kGapStatuses[] = {GapStatus::Exact, GapStatus::OverPrivileged, GapStatus::UnderPrivileged,
                                      GapStatus::Both};
constexpr InputKind kInputKinds[] = {InputKind::ApktoolDir, InputKind::RawApk};
constexpr Severity kSeverities[] = {Severity::Low, Severity::Medium, Severity::High};
constexpr VerdictLevel kLevels[] = {VerdictLevel::Benign, VerdictLevel::Suspicious,
                                    VerdictLevel::MaliciousSuspect};

json ratio_json(const Ratio& r) { return {{"num", r.num()}, {"den", r.den()}, {"value", r.value()}}; }

Ratio ratio_from(const json& j) { return Ratio(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

json optional_json(const std::optional<std::string>& value) { return value ? json(*value) : json(nullptr); }

json to_json(const Report& r) {
    json ranking = json::array();
    for (const auto& s : r.assignment.ranking) {
        ranking.push_back({{"name", s.name},
                           {"score", ratio_json(s.score)},
                           {"matched_tokens", s.matched_tokens},
                           {"token_count", s.token_count}});
    }
    const auto& a = r.assignment;
    json assignment = {
        {"assigned", a.assigned},
        {"score", ratio_json(a.score)},
        {"declared", optional_json(a.declared)},
        {"declared_agreement", a.declared_agreement ? json(*a.declared_agreement) : json(nullptr)},
        {"ranking", ranking},
        {"warnings", a.warnings},
    };

    json features = json::array();
    for (const auto& f : r.features) {
        json locations = json::array();
        for (const auto& loc : f.locations) {
            json l = {{"file", loc.file}, {"kind", to_string(loc.kind)}};
            if (loc.line) l["line"] = *loc.line;
            locations.push_back(std::move(l));
        }
        features.push_back({{"feature_id", f.feature_id},
                            {"dotted", f.dotted},
                            {"count", f.count},
                            {"locations", locations},
                            {"flagged", f.flagged},
                            {"severity", to_string(f.severity)}});
    }

    json flags = json::array();
    for (const auto& f : r.flags) {
        flags.push_back({{"feature_id", f.feature_id},
                         {"severity", to_string(f.severity)},
                         {"reason", f.reason},
                         {"occurrence_count", f.occurrence_count}});
    }

    const auto& p = r.permissions;
    return {
        {"tool_version", r.tool_version},
        {"catalog_versions",
         {{"features", r.catalog_versions.features},
          {"categories", r.catalog_versions.categories},
          {"api_map", r.catalog_versions.api_map}}},
        {"app_id", r.app_id},
        {"source", to_string(r.source)},
        {"assignment", assignment},
        {"features", features},
        {"flags", flags},
        {"permissions",
         {{"declared", p.declared},
          {"used", p.used},
          {"over", p.over},
          {"under", p.under},
          {"unmapped_ref_count", p.unmapped_ref_count},
          {"status", to_string(p.status)}}},
        {"verdict", {{"level", to_string(r.verdict.level)}, {"reasons", r.verdict.reasons}}},
    };
}

Report from_json(const json& j) {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    const auto& cv = j.at("catalog_versions");
    r.catalog_versions = {cv.at("features").get<std::string>(), cv.at("categories").get<std::string>(),
                          cv.at("api_map").get<std::string>()};
    r.app_id = j.at("app_id").get<std::string>();
    r.source = enum_from(j.at("source").get<std::string>(), kInputKinds, "source");

    const auto& a = j.at("assignment");
    r.assignment.assigned = a.at("assigned").get<std::string>();
    r.assignment.score = ratio_from(a.at("score"));
    if (!a.at("declared").is_null()) r.assignment.declared = a.at("declared").get<std::string>();
    if (!a.at("declared_agreement").is_null()) r.assignment.declared_agreement = a.at("declared_agreement").get<bool>();
    r.assignment.warnings = a.at("warnings").get<std::vector<std::string>>();
    for (const auto& s : a.at("ranking")) {
        r.assignment.ranking.push_back({s.at("name").get<std::string>(), ratio_from(s.at("score")),
                                        s.at("matched_tokens").get<std::set<std::string>>(),
                                        s.at("token_count").get<std::size_t>()});
    }

    for (const auto& f : j.at("features")) {
        ReportFeature feature;
        feature.feature_id = f.at("feature_id").get<std::string>();
        feature.dotted = f.at("dotted").get<std::string>();
        feature.count = f.at("count").get<int>();
        feature.flagged = f.at("flagged").get<bool>();
        feature.severity = enum_from(f.at("severity").get<std::string>(), kSeverities, "severity");
        for (const auto& l : f.at("locations")) {
            FeatureLocation loc;
            loc.file = l.at("file").get<std::string>();
            if (l.contains("line")) loc.line = l.at("line").get<int>();
            loc.kind = enum_from(l.at("kind").get<std::string>(), kHitKinds, "hit kind");
            feature.locations.push_back(std::move(loc));
        }
        r.features.push_back(std::move(feature));
    }

    for (const auto& f : j.at("flags")) {
        r.flags.push_back({f.at("feature_id").get<std::string>(),
                           enum_from(f.at("severity").get<std::string>(), kSeverities, "severity"),
                           f.at("reason").get<std::string>(), f.at("occurrence_count").get<int>()});
    }

    const auto& p = j.at("permissions");
    r.permissions.declared = p.at("declared").get<std::vector<std::string>>();
    r.permissions.used = p.at("used").get<std::vector<std::string>>();
    r.permissions.over = p.at("over").get<std::vector<std::string>>();
    r.permissions.under = p.at("under").get<std::vector<std::string>>();
    r.permissions.unmapped_ref_count = p.at("unmapped_ref_count").get<int>();
    r.permissions.status = enum_from(p.at("status").get<std::string>(), kGapStatuses, "gap status");

    const auto& v = j.at("verdict");
    r.verdict.level = enum_from(v.at("level").get<std::string>(), kLevels, "verdict level");
    r.verdict.reasons = v.at("reasons").get<std::vector<std::string>>();
    return r;
}

std::string fixed2(const Ratio& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", r.value());
    return buf;
}

template <typename Range>
std::string list_or_none(const Range& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out.empty() ? "(none)" : out;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << r.app_id << "  " << r.assignment.assigned << "(" << fixed2(r.assignment.score) << ")  "
        << to_string(r.verdict.level) << "\n";
    if (r.assignment.declared) {
        out << "Declared category: " << *r.assignment.declared
            << (r.assignment.declared_agreement.value_or(false) ? " (agrees with rules)" : " (disagrees with rules)")
            << "\n";
    }
    for (const auto& w : r.assignment.warnings) out << "Warning: " << w << "\n";

    if (r.features.empty()) {
        out << "Features: none\n";
    } else {
        out << "Features:\n";
        for (const auto& f : r.features) {
            out << "  " << f.feature_id << "  count=" << f.count << "  severity=" << to_string(f.severity)
                << (f.flagged ? "  FLAGGED" : "") << "\n";
            for (const auto& loc : f.locations) {
                out << "    " << loc.file;
                if (loc.line) out << ":" << *loc.line;
                out << "  " << to_string(loc.kind) << "\n";
            }
        }
    }

    if (r.flags.empty()) {
        out << "Flags: none\n";
    } else {
        out << "Flags:\n";
        for (const auto& f : r.flags) {
            out << "  [" << to_string(f.severity) << "] " << f.feature_id << " x" << f.occurrence_count << ": "
                << f.reason << "\n";
        }
    }

    const auto& p = r.permissions;
    out << "Permission gap: " << to_string(p.status) << "\n"
        << "  declared: " << list_or_none(p.declared) << "\n"
        << "  used:     " << list_or_none(p.used) << "\n"
        << "  over:     " << list_or_none(p.over) << "\n"
        << "  under:    " << list_or_none(p.under) << "\n"
        << "  unmapped api refs: " << p.unmapped_ref_count << "\n";

    out << "Verdict: " << to_string(r.verdict.level) << "\n";
    for (const auto& reason : r.verdict.reasons) out << "  - " << reason << "\n";
    return out.str();
}

}  // namespace

std::string_view tool_version() { return APKTRIAGE_VERSION; }

int exit_code_for(VerdictLevel level) {
    switch (level) {
    case VerdictLevel::Benign: return 0;
    case VerdictLevel::Suspicious: return 10;
    case VerdictLevel::MaliciousSuspect: return 11;
    }
    return 0;
}

Report build_report(const AppBundle& bundle, const FeatureReport& features, const FeatureCatalog& catalog,
                    const Assignment& assignment, const std::vector<FlaggedFeature>& flags,
                    const PermissionGap& gap, const Verdict& verdict, const CatalogVersions& versions) {
    Report r;
    r.tool_version = std::string(tool_version());
    r.catalog_versions = versions;
    r.app_id = bundle.app_id;
    r.source = bundle.source;
    r.assignment = assignment;
    r.flags = flags;
    r.verdict = verdict;

    for (const auto& [id, count] : features.counts) {
        ReportFeature f;
        f.feature_id = id;
        f.count = count;
        if (const FeatureSpec* spec = catalog.find(id)) {
            f.dotted = spec->dotted;
            f.severity = spec->severity;
        }
        f.flagged = std::any_of(flags.begin(), flags.end(), [&](const FlaggedFeature& x) { return x.feature_id == id; });
        r.features.push_back(std::move(f));
    }
    // hits are already sorted by (feature_id, file, line, kind)
    for (const auto& hit : features.hits) {
        auto it = std::find_if(r.features.begin(), r.features.end(),
                               [&](const ReportFeature& f) { return f.feature_id == hit.feature_id; });
        if (it != r.features.end()) it->locations.push_back({hit.file, hit.line, hit.kind});
    }

    r.permissions.declared.assign(bundle.manifest.declared_permissions.begin(),
                                  bundle.manifest.declared_permissions.end());
    r.permissions.used.assign(gap.used.begin(), gap.used.end());
    r.permissions.over.assign(gap.over.begin(), gap.over.end());
    r.permissions.under.assign(gap.under.begin(), gap.under.end());
    r.permissions.unmapped_ref_count = gap.unmapped_ref_count;
    r.permissions.status = gap.status;
    return r;
}

std::string render(const Report& report, Format format) {
    if (format == Format::Text) return render_text(report);
    return to_json(report).dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
}

Report parse_report_json(std::string_view json_text) {
    try {
        return from_json(json::parse(json_text));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Usage, std::string("malformed report JSON: ") + e.what());
    }
}

}  // namespace apktriage
