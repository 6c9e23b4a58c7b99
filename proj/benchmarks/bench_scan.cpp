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

#include <benchmark/benchmark.h>

#include <string>

#include "apktriage/catalogs.hpp"
#include "apktriage/ingest.hpp"
#include "apktriage/pipeline.hpp"
#include "apktriage/smali_scan.hpp"

namespace {

using namespace apktriage;

const Catalogs& catalogs() {
    static const Catalogs c = [] {
        CatalogPaths p;
        p.features = APKTRIAGE_CATALOG_DIR "/features.json";
        p.categories = APKTRIAGE_CATALOG_DIR "/categories.json";
        p.api_map = APKTRIAGE_CATALOG_DIR "/api_map.json";
        return load_catalogs(p);
    }();
    return c;
}

SmaliFile synthetic_file(int methods) {
    std::string text = ".class public Lcom/bench/Work;\n.super Ljava/lang/Object;\n";
    for (int i = 0; i < methods; ++i) {
        text += ".method public m" + std::to_string(i) + "()V\n    .registers 4\n";
        text += "    const-string v0, \"hello " + std::to_string(i) + "\"\n";
        text += "    invoke-static {}, Landroid/telephony/SmsManager;->getDefault()Landroid/telephony/SmsManager;\n";
        text += "    move-result-object v1\n";
        text += "    invoke-virtual {v2}, Ljava/net/URL;->openConnection()Ljava/net/URLConnection;\n";
        text += "    new-instance v3, Ljava/lang/StringBuilder;\n";
        text += "    return-void\n.end method\n";
    }
    return {"smali/com/bench/Work.smali", text};
}

void BM_ScanFile(benchmark::State& state) {
    const SmaliFile file = synthetic_file(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(scan_file(file, catalogs().features));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * file.text.size()));
}
BENCHMARK(BM_ScanFile)->Arg(10)->Arg(100)->Arg(1000);

void BM_ScanBundle(benchmark::State& state) {
    const AppBundle bundle = load_bundle(APKTRIAGE_FIXTURE_DIR "/apps/sms_in_games");
    for (auto _ : state) benchmark::DoNotOptimize(scan_bundle(bundle, catalogs().features));
}
BENCHMARK(BM_ScanBundle);

void BM_AnalyzeApk(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_path(APKTRIAGE_FIXTURE_DIR "/apps/recorder.apk", catalogs(), {}));
    }
}
BENCHMARK(BM_AnalyzeApk);

void BM_AnalyzeCorpus(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_corpus(APKTRIAGE_FIXTURE_DIR "/corpus", catalogs(), {},
                                                static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_AnalyzeCorpus)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
