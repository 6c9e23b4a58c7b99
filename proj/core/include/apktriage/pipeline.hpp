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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "apktriage/catalogs.hpp"
#include "apktriage/error.hpp"
#include "apktriage/ingest.hpp"
#include "apktriage/ratio.hpp"
#include "apktriage/report.hpp"

namespace apktriage {

struct AnalyzeOptions {
    std::optional<std::string> declared_category;
    Ratio min_score{1, 2};
};

/// Scan, categorize, flag, gap-check and assemble the report for one bundle.
Report analyze_bundle(const AppBundle& bundle, const Catalogs& catalogs, const AnalyzeOptions& options);

/// load_bundle + analyze_bundle.
Report analyze_path(const std::filesystem::path& input, const Catalogs& catalogs, const AnalyzeOptions& options);

CatalogVersions versions_of(const Catalogs& catalogs);

struct CorpusEntry {
    /// Child name inside the corpus directory.
    std::string input;
    /// Report app_id, or the input name when analysis failed.
    std::string app_id;
    std::optional<Report> report;
    std::optional<ErrorKind> error_kind;
    std::string error;
    int exit_code = 0;
};

struct CorpusResult {
    /// Sorted by (app_id, input).
    std::vector<CorpusEntry> entries;
    int exit_code = 0;
};

/// Every non-hidden child (directory or file) of `dir` is one app. Apps are
/// analyzed on `jobs` worker threads; the result does not depend on `jobs`.
CorpusResult analyze_corpus(const std::filesystem::path& dir, const Catalogs& catalogs,
                            const AnalyzeOptions& options, unsigned jobs);

enum class SummaryFormat { Json, Csv };

/// Counts by category and verdict plus one row per app.
std::string render_summary(const CorpusResult& result, SummaryFormat format);

/// Exit code for a failed analysis: 2 for parse errors, 1 otherwise.
int exit_code_for(const Error& error);

}  // namespace apktriage
