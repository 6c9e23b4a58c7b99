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

#include "apktriage/smali_scan.hpp"

#include <algorithm>
#include <unordered_set>

namespace apktriage {

namespace {

std::string_view ltrim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    return first == std::string_view::npos ? std::string_view{} : s.substr(first);
}

// Contents between the first and last double quote, if the line has two.
std::optional<std::string_view> quoted_literal(std::string_view line) {
    const auto open = line.find('"');
    const auto close = line.rfind('"');
    if (open == std::string_view::npos || close == open) return std::nullopt;
    return line.substr(open + 1, close - open - 1);
}

}  // namespace

std::string_view to_string(HitKind kind) {
    switch (kind) {
    case HitKind::TypeRef: return "type_ref";
    case HitKind::Invoke: return "invoke";
    case HitKind::StringLiteral: return "string_literal";
    case HitKind::DexRef: return "dex_ref";
    }
    return "type_ref";
}

std::optional<MethodSig> parse_invoke(std::string_view line) {
    line = ltrim(line);
    if (!line.starts_with("invoke-")) return std::nullopt;
    const auto arrow = line.find(";->");
    if (arrow == std::string_view::npos) return std::nullopt;
    const auto space = line.find_last_of(" \t,}", arrow);
    const std::size_t start = space == std::string_view::npos ? 0 : space + 1;
    const auto paren = line.find('(', arrow + 3);
    if (paren == std::string_view::npos || start >= arrow) return std::nullopt;
    MethodSig sig{std::string(line.substr(start, arrow + 1 - start)),
                  std::string(line.substr(arrow + 3, paren - arrow - 3))};
    if (sig.name.empty() || (sig.class_descriptor.front() != 'L' && sig.class_descriptor.front() != '[')) {
        return std::nullopt;
    }
    return sig;
}

ScanResult scan_file(const SmaliFile& file, const FeatureCatalog& catalog) {
    ScanResult result;
    std::string_view text = file.text;
    int lineno = 0;
    for (std::size_t pos = 0; pos < text.size();) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;

        const auto invoke = parse_invoke(line);
        if (invoke) result.api_refs.insert(*invoke);
        const bool const_string = line.find("const-string") != std::string_view::npos;
        const auto literal = const_string ? quoted_literal(line) : std::nullopt;

        for (const auto& feature : catalog.features) {
            if (line.find(feature.descriptor) != std::string_view::npos) {
                const bool callee = invoke && invoke->class_descriptor == feature.descriptor;
                result.hits.push_back({feature.id, file.path, lineno, callee ? HitKind::Invoke : HitKind::TypeRef});
            }
            if (literal && *literal == feature.dotted) {
                result.hits.push_back({feature.id, file.path, lineno, HitKind::StringLiteral});
            }
        }
    }
    return result;
}

FeatureReport make_feature_report(std::vector<FeatureHit> hits, std::set<MethodSig> api_refs) {
    FeatureReport report;
    std::sort(hits.begin(), hits.end());
    for (const auto& hit : hits) ++report.counts[hit.feature_id];
    report.hits = std::move(hits);
    report.api_refs = std::move(api_refs);
    return report;
}

FeatureReport scan_bundle(const AppBundle& bundle, const FeatureCatalog& catalog) {
    std::vector<FeatureHit> hits;
    std::set<MethodSig> api_refs;

    if (const auto* files = std::get_if<SmaliFiles>(&bundle.code)) {
        for (const auto& file : *files) {
            auto result = scan_file(file, catalog);
            hits.insert(hits.end(), std::make_move_iterator(result.hits.begin()),
                        std::make_move_iterator(result.hits.end()));
            api_refs.merge(result.api_refs);
        }
    } else {
        for (const auto& [name, pool] : std::get<DexPools>(bundle.code)) {
            const std::unordered_set<std::string_view> types(pool.type_descriptors.begin(),
                                                             pool.type_descriptors.end());
            const std::unordered_set<std::string_view> strings(pool.strings.begin(), pool.strings.end());
            for (const auto& feature : catalog.features) {
                // One hit per evidence kind: the type pool, then the string pool.
                if (types.contains(feature.descriptor)) {
                    hits.push_back({feature.id, name, std::nullopt, HitKind::DexRef});
                }
                if (strings.contains(feature.dotted)) {
                    hits.push_back({feature.id, name, std::nullopt, HitKind::DexRef});
                }
            }
            api_refs.insert(pool.method_refs.begin(), pool.method_refs.end());
        }
    }
    return make_feature_report(std::move(hits), std::move(api_refs));
}

}  // namespace apktriage
