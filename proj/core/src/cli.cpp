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

#include "apktriage/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "apktriage/catalogs.hpp"
#include "apktriage/error.hpp"
#include "apktriage/pipeline.hpp"
#include "apktriage/report.hpp"

namespace fs = std::filesystem;

namespace apktriage {

namespace {

struct CommonFlags {
    std::string catalog;
    std::string categories;
    std::string api_map;
    std::string declared_category;
    std::string min_score = "1/2";
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--catalog", flags.catalog, "Feature catalog (JSON or plain list)");
    cmd.add_option("--categories", flags.categories, "Category rule set (JSON)");
    cmd.add_option("--api-map", flags.api_map, "API to permission map (JSON)");
    cmd.add_option("--declared-category", flags.declared_category, "Store category declared for the app");
    cmd.add_option("--min-score", flags.min_score, "Minimum rule coverage to assign a category (e.g. 1/2, 0.6)");
    cmd.add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

Catalogs load_from(const CommonFlags& flags) {
    CatalogPaths paths;
    if (!flags.catalog.empty()) paths.features = flags.catalog;
    if (!flags.categories.empty()) paths.categories = flags.categories;
    if (!flags.api_map.empty()) paths.api_map = flags.api_map;
    return load_catalogs(paths);
}

AnalyzeOptions options_from(const CommonFlags& flags) {
    AnalyzeOptions options;
    if (!flags.declared_category.empty()) options.declared_category = flags.declared_category;
    options.min_score = Ratio::parse(flags.min_score);
    if (options.min_score > Ratio(1, 1)) throw Error(ErrorKind::Usage, "--min-score must lie in [0, 1]");
    return options;
}

void write_file(const fs::path& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
    f << data;
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

Format format_of(const CommonFlags& flags) { return flags.format == "text" ? Format::Text : Format::Json; }

int run_analyze(const std::string& input, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
    const AnalyzeOptions options = options_from(flags);
    const Catalogs catalogs = load_from(flags);
    const Report report = analyze_path(input, catalogs, options);
    for (const auto& w : report.assignment.warnings) err << "warning: " << w << "\n";
    const std::string rendered = render(report, format_of(flags));
    if (flags.out.empty()) {
        out << rendered;
    } else {
        write_file(flags.out, rendered);
    }
    return exit_code_for(report.verdict.level);
}

int run_corpus(const std::string& dir, const CommonFlags& flags, unsigned jobs, const std::string& summary,
               std::ostream& out, std::ostream& err) {
    const AnalyzeOptions options = options_from(flags);
    const Catalogs catalogs = load_from(flags);
    const CorpusResult result = analyze_corpus(dir, catalogs, options, jobs);
    const Format format = format_of(flags);
    const std::string ext = format == Format::Json ? ".json" : ".txt";

    if (!flags.out.empty()) {
        std::error_code ec;
        fs::create_directories(flags.out, ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create " + flags.out + ": " + ec.message());
    }
    std::map<std::string, int> seen;
    for (const auto& entry : result.entries) {
        if (!entry.report) {
            err << "error: " << entry.input << ": " << entry.error << "\n";
            continue;
        }
        for (const auto& w : entry.report->assignment.warnings) err << "warning: " << entry.input << ": " << w << "\n";
        const std::string rendered = render(*entry.report, format);
        if (flags.out.empty()) {
            out << rendered;
        } else {
            std::string name = entry.app_id;
            if (seen[entry.app_id]++ > 0) name += "." + entry.input;
            write_file(fs::path(flags.out) / (name + ext), rendered);
        }
    }
    out << render_summary(result, summary == "csv" ? SummaryFormat::Csv : SummaryFormat::Json);
    return result.exit_code;
}

int run_validate(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
    int code = 0;
    std::optional<FeatureCatalog> features;
    std::optional<CategoryRuleSet> rules;
    for (const auto& file : files) {
        try {
            const std::string text = read_text_file(file);
            const auto first = text.find_first_not_of(" \t\r\n");
            std::string kind = "feature catalog";
            std::string version;
            std::size_t items = 0;
            if (first != std::string::npos && text[first] == '{') {
                const auto doc = nlohmann::json::parse(text, nullptr, false);
                if (doc.is_object() && doc.contains("categories")) kind = "category rules";
                if (doc.is_object() && doc.contains("entries")) kind = "api map";
            }
            if (kind == "category rules") {
                rules = load_category_rules(text);
                version = rules->version;
                items = rules->rules.size();
            } else if (kind == "api map") {
                const auto map = load_api_map(text);
                version = map.version;
                items = map.entries.size();
            } else {
                features = load_feature_catalog(text);
                version = features->version;
                items = features->features.size();
            }
            out << "ok: " << file << ": " << kind << " version " << version << ", " << items << " entries\n";
        } catch (const Error& e) {
            err << "invalid: " << file << ": " << e.what() << "\n";
            code = std::max(code, exit_code_for(e));
        }
    }
    if (features && rules) {
        try {
            validate_catalog_against_rules(*features, *rules);
            out << "ok: feature catalog categories all name rules\n";
        } catch (const Error& e) {
            err << "invalid: cross-check: " << e.what() << "\n";
            code = std::max(code, exit_code_for(e));
        }
    }
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Static triage of Android apps: feature tagging, categorization, permission gaps", "apktriage"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    CommonFlags analyze_flags;
    std::string analyze_input;
    auto* analyze = app.add_subcommand("analyze", "Analyze one apktool directory or APK");
    analyze->add_option("path", analyze_input, "apktool output directory or .apk file")->required();
    add_common(*analyze, analyze_flags);
    analyze->add_option("--out", analyze_flags.out, "Write the report to FILE instead of stdout");

    CommonFlags corpus_flags;
    std::string corpus_dir;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string summary = "json";
    auto* corpus = app.add_subcommand("corpus", "Analyze every app under a directory");
    corpus->add_option("dir", corpus_dir, "Directory whose children are apps")->required();
    add_common(*corpus, corpus_flags);
    corpus->add_option("--out", corpus_flags.out, "Write per-app reports into DIR instead of stdout");
    corpus->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    corpus->add_option("--summary", summary, "Summary format")->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> validate_files;
    auto* catalog = app.add_subcommand("catalog", "Catalog utilities");
    catalog->require_subcommand(1);
    auto* validate = catalog->add_subcommand("validate", "Load and validate catalog files");
    validate->add_option("files", validate_files, "Catalog files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return run_analyze(analyze_input, analyze_flags, out, err);
        if (*corpus) return run_corpus(corpus_dir, corpus_flags, jobs, summary, out, err);
        if (*validate) return run_validate(validate_files, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace apktriage
