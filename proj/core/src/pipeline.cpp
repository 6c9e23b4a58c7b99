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

#include "apktriage/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include <json.hpp>

#include "apktriage/categorizer.hpp"
#include "apktriage/mismatch.hpp"
#include "apktriage/smali_scan.hpp"

namespace fs = std::filesystem;

namespace apktriage {

CatalogVersions versions_of(const Catalogs& catalogs) {
    return {catalogs.features.version, catalogs.rules.version, catalogs.api_map.version};
}

Report analyze_bundle(const AppBundle& bundle, const Catalogs& catalogs, const AnalyzeOptions& options) {
    const FeatureReport features = scan_bundle(bundle, catalogs.features);
    const auto declared = bundle.declared_market_category ? bundle.declared_market_category
                                                          : options.declared_category;
    const Assignment assignment = assign_category(score_categories(bundle.manifest, catalogs.rules), declared,
                                                  options.min_score, catalogs.rules);
    const auto flags = flag_features(features, catalogs.features, assignment.assigned);
    const auto gap = permission_gap(features.api_refs, bundle.manifest, catalogs.api_map);
    const auto result = verdict(flags, gap, catalogs.rules.verdict_policy);
    return build_report(bundle, features, catalogs.features, assignment, flags, gap, result, versions_of(catalogs));
}

Report analyze_path(const fs::path& input, const Catalogs& catalogs, const AnalyzeOptions& options) {
    return analyze_bundle(load_bundle(input, options.declared_category), catalogs, options);
}

int exit_code_for(const Error& error) { return error.is_parse_error() ? 2 : 1; }

CorpusResult analyze_corpus(const fs::path& dir, const Catalogs& catalogs, const AnalyzeOptions& options,
                            unsigned jobs) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::Io, dir.string() + ": not a directory");

    std::vector<fs::path> inputs;
    try {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().filename().string().starts_with(".")) continue;
            if (entry.is_directory() || entry.is_regular_file()) inputs.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        throw Error(ErrorKind::Io, e.what());
    }
    std::sort(inputs.begin(), inputs.end());

    CorpusResult result;
    result.entries.resize(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
            CorpusEntry& entry = result.entries[i];
            entry.input = inputs[i].filename().string();
            try {
                entry.report = analyze_path(inputs[i], catalogs, options);
                entry.app_id = entry.report->app_id;
                entry.exit_code = exit_code_for(entry.report->verdict.level);
            } catch (const Error& e) {
                entry.app_id = entry.input;
                entry.error_kind = e.kind();
                entry.error = e.what();
                entry.exit_code = exit_code_for(e);
            } catch (const std::exception& e) {
                entry.app_id = entry.input;
                entry.error_kind = ErrorKind::Io;
                entry.error = e.what();
                entry.exit_code = 1;
            }
        }
    };

    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(inputs.size(), 1)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }

    std::sort(result.entries.begin(), result.entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
        return std::tie(a.app_id, a.input) < std::tie(b.app_id, b.input);
    });
    for (const auto& e : result.entries) result.exit_code = std::max(result.exit_code, e.exit_code);
    return result;
}

namespace {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_summary(const CorpusResult& result, SummaryFormat format) {
    if (format == SummaryFormat::Csv) {
        std::string out = "app_id,category,score,flags,verdict\n";
        for (const auto& e : result.entries) {
            if (e.report) {
                out += csv_field(e.app_id) + "," + csv_field(e.report->assignment.assigned) + "," +
                       e.report->assignment.score.str() + "," + std::to_string(e.report->flags.size()) + "," +
                       std::string(to_string(e.report->verdict.level)) + "\n";
            } else {
                out += csv_field(e.app_id) + ",,,," + "error:" + std::string(to_string(*e.error_kind)) + "\n";
            }
        }
        return out;
    }

    using nlohmann::json;
    json apps = json::array();
    std::map<std::string, int> by_category;
    std::map<std::string, int> by_verdict;
    for (const auto& e : result.entries) {
        json row = {{"app_id", e.app_id}, {"input", e.input}, {"exit_code", e.exit_code}};
        if (e.report) {
            const auto& r = *e.report;
            row["category"] = r.assignment.assigned;
            row["score"] = r.assignment.score.str();
            row["flags"] = r.flags.size();
            row["verdict"] = to_string(r.verdict.level);
            ++by_category[r.assignment.assigned];
            ++by_verdict[std::string(to_string(r.verdict.level))];
        } else {
            row["error"] = e.error;
            row["error_kind"] = to_string(*e.error_kind);
            ++by_verdict["Error"];
        }
        apps.push_back(std::move(row));
    }
    json summary = {
        {"apps", apps},
        {"by_category", by_category},
        {"by_verdict", by_verdict},
        {"total", result.entries.size()},
        {"exit_code", result.exit_code},
    };
    return summary.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace apktriage
