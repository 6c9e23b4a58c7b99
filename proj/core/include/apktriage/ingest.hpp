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
#include <variant>
#include <vector>

#include "apktriage/dex.hpp"
#include "apktriage/manifest.hpp"

namespace apktriage {

enum class InputKind { ApktoolDir, RawApk };

std::string_view to_string(InputKind kind);

struct SmaliFile {
    /// Relative to the apktool root, '/'-separated (e.g. "smali/a/B.smali").
    std::string path;
    std::string text;

    friend bool operator==(const SmaliFile&, const SmaliFile&) = default;
};

struct NamedDexPool {
    /// ZIP entry name, e.g. "classes2.dex".
    std::string name;
    DexPool pool;

    friend bool operator==(const NamedDexPool&, const NamedDexPool&) = default;
};

using SmaliFiles = std::vector<SmaliFile>;
using DexPools = std::vector<NamedDexPool>;

/// SmaliFiles sorted by path, or DEX pools ordered classes.dex, classes2.dex, ...
using CodeIndex = std::variant<SmaliFiles, DexPools>;

/// A normalized, immutable view of one application.
struct AppBundle {
    std::string app_id;
    InputKind source = InputKind::ApktoolDir;
    ManifestInfo manifest;
    CodeIndex code;
    std::optional<std::string> declared_market_category;

    friend bool operator==(const AppBundle&, const AppBundle&) = default;
};

/// Classifies the input: a directory with AndroidManifest.xml at its root and
/// at least one .smali file under a smali*/ subdirectory, or a regular file
/// starting with the ZIP local header magic. Throws Error(NotAnApp | Io).
InputKind detect_layout(const std::filesystem::path& path);

/// Loads and parses one application. Throws Error(NotAnApp | Io |
/// ManifestMissing | ManifestUnparsable | ZipCorrupt | AxmlCorrupt | DexCorrupt).
AppBundle load_bundle(const std::filesystem::path& path,
                      std::optional<std::string> declared_category = std::nullopt);

/// Builds a bundle from an in-memory APK image; `fallback_id` is used when the
/// manifest has no usable package.
AppBundle load_apk_bytes(std::span<const std::uint8_t> bytes, const std::string& fallback_id,
                         std::optional<std::string> declared_category = std::nullopt);

/// classes.dex -> 1, classes<N>.dex (N >= 2) -> N, anything else -> nullopt.
std::optional<unsigned> dex_entry_index(std::string_view entry_name);

}  // namespace apktriage
