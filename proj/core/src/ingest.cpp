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

#include "apktriage/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "apktriage/axml.hpp"
#include "apktriage/catalogs.hpp"
#include "apktriage/error.hpp"
#include "apktriage/zip.hpp"

namespace fs = std::filesystem;

namespace apktriage {

namespace {

constexpr const char* kManifestName = "AndroidManifest.xml";

bool is_smali_root(const fs::directory_entry& entry) {
    return entry.is_directory() && entry.path().filename().string().starts_with("smali");
}

// Every *.smali under smali*/ roots, relative to `root`, sorted.
std::vector<fs::path> list_smali(const fs::path& root, bool stop_at_first) {
    std::vector<fs::path> found;
    std::vector<fs::path> roots;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (is_smali_root(entry)) roots.push_back(entry.path());
    }
    std::sort(roots.begin(), roots.end());
    for (const auto& dir : roots) {
        for (const auto& entry : fs::recursive_directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".smali") {
                found.push_back(fs::relative(entry.path(), root));
                if (stop_at_first) return found;
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    return found;
}

std::vector<std::uint8_t> read_binary(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path.string());
    return data;
}

bool has_zip_magic(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && magic[0] == 'P' && magic[1] == 'K' && magic[2] == 0x03 && magic[3] == 0x04;
}

bool looks_binary_xml(std::string_view bytes) {
    return bytes.size() >= 8 && bytes[0] == 0x03 && bytes[1] == 0x00;
}

ManifestInfo decode_manifest_bytes(std::span<const std::uint8_t> bytes) {
    try {
        return manifest_from_axml(decode_axml(bytes));
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(kManifestName) + ": " + e.detail());
    }
}

std::string app_id_for(const ManifestInfo& manifest, const std::string& fallback) {
    return manifest.package.empty() ? fallback : manifest.package;
}

AppBundle load_apktool_dir(const fs::path& root, std::optional<std::string> declared) {
    const fs::path manifest_path = root / kManifestName;
    if (!fs::is_regular_file(manifest_path)) {
        throw Error(ErrorKind::ManifestMissing, manifest_path.string() + " not found");
    }
    const std::string manifest_text = read_text_file(manifest_path);

    AppBundle bundle;
    bundle.source = InputKind::ApktoolDir;
    if (looks_binary_xml(manifest_text)) {
        bundle.manifest = decode_manifest_bytes(std::span(
            reinterpret_cast<const std::uint8_t*>(manifest_text.data()), manifest_text.size()));
    } else {
        try {
            bundle.manifest = parse_manifest_xml(manifest_text);
        } catch (const Error& e) {
            throw Error(e.kind(), manifest_path.string() + ": " + e.detail());
        }
    }
    bundle.app_id = app_id_for(bundle.manifest, fs::absolute(root).lexically_normal().filename().string());
    if (bundle.app_id.empty()) bundle.app_id = root.string();

    SmaliFiles files;
    for (const auto& rel : list_smali(root, false)) {
        files.push_back({rel.generic_string(), read_text_file(root / rel)});
    }
    bundle.code = std::move(files);
    bundle.declared_market_category = std::move(declared);
    return bundle;
}

}  // namespace

std::string_view to_string(InputKind kind) {
    return kind == InputKind::ApktoolDir ? "apktool_dir" : "raw_apk";
}

std::optional<unsigned> dex_entry_index(std::string_view name) {
    if (!name.starts_with("classes") || !name.ends_with(".dex")) return std::nullopt;
    std::string_view digits = name.substr(7, name.size() - 7 - 4);
    if (digits.empty()) return 1u;
    if (digits.front() == '0') return std::nullopt;
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 2) return std::nullopt;
    return n;
}

InputKind detect_layout(const fs::path& path) {
    std::error_code ec;
    const auto status = fs::status(path, ec);
    if (ec || !fs::exists(status)) throw Error(ErrorKind::Io, path.string() + ": no such file or directory");

    std::vector<std::string> failed;
    if (fs::is_directory(status)) {
        const bool manifest = fs::is_regular_file(path / kManifestName);
        bool smali = false;
        try {
            smali = !list_smali(path, true).empty();
        } catch (const fs::filesystem_error& e) {
            throw Error(ErrorKind::Io, e.what());
        }
        if (manifest && smali) return InputKind::ApktoolDir;
        std::string why = "not an apktool directory (";
        if (!manifest) why += "no AndroidManifest.xml at root";
        if (!manifest && !smali) why += "; ";
        if (!smali) why += "no .smali files under smali*/";
        failed.push_back(why + ")");
        failed.push_back("not a raw APK (not a regular file)");
    } else if (fs::is_regular_file(status)) {
        if (has_zip_magic(path)) return InputKind::RawApk;
        failed.push_back("not an apktool directory (not a directory)");
        failed.push_back("not a raw APK (missing ZIP magic 50 4B 03 04)");
    } else {
        failed.push_back("not an apktool directory (not a directory)");
        failed.push_back("not a raw APK (not a regular file)");
    }
    throw Error(ErrorKind::NotAnApp, path.string() + ": " + failed[0] + " and " + failed[1]);
}

AppBundle load_apk_bytes(std::span<const std::uint8_t> bytes, const std::string& fallback_id,
                         std::optional<std::string> declared) {
    const auto entries = read_zip_entries(bytes);

    const ZipEntry* manifest = nullptr;
    std::map<unsigned, const ZipEntry*> dex_entries;
    for (const auto& entry : entries) {
        if (entry.name == kManifestName) {
            manifest = &entry;
        } else if (auto n = dex_entry_index(entry.name)) {
            dex_entries.emplace(*n, &entry);
        }
    }
    if (manifest == nullptr) throw Error(ErrorKind::ManifestMissing, "APK has no AndroidManifest.xml entry");

    AppBundle bundle;
    bundle.source = InputKind::RawApk;
    bundle.manifest = decode_manifest_bytes(manifest->data);
    bundle.app_id = app_id_for(bundle.manifest, fallback_id);

    DexPools pools;
    for (const auto& [n, entry] : dex_entries) {
        try {
            pools.push_back({entry->name, extract_dex_pool(entry->data)});
        } catch (const Error& e) {
            throw Error(e.kind(), entry->name + ": " + e.detail());
        }
    }
    bundle.code = std::move(pools);
    bundle.declared_market_category = std::move(declared);
    return bundle;
}

AppBundle load_bundle(const fs::path& path, std::optional<std::string> declared) {
    try {
        switch (detect_layout(path)) {
        case InputKind::ApktoolDir:
            return load_apktool_dir(path, std::move(declared));
        case InputKind::RawApk: {
            const auto bytes = read_binary(path);
            return load_apk_bytes(bytes, path.stem().string(), std::move(declared));
        }
        }
    } catch (const fs::filesystem_error& e) {
        throw Error(ErrorKind::Io, e.what());
    }
    throw Error(ErrorKind::NotAnApp, path.string());
}

}  // namespace apktriage
