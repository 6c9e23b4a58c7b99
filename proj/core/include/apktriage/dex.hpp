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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apktriage {

/// An invoked or referenced method, identified by its declaring class
/// descriptor (e.g. "Landroid/telephony/SmsManager;") and simple name.
struct MethodSig {
    std::string class_descriptor;
    std::string name;

    friend auto operator<=>(const MethodSig&, const MethodSig&) = default;
    friend bool operator==(const MethodSig&, const MethodSig&) = default;
};

struct DexCounts {
    std::uint32_t strings = 0;
    std::uint32_t types = 0;
    std::uint32_t methods = 0;

    friend bool operator==(const DexCounts&, const DexCounts&) = default;
};

/// Constant pools of one DEX file. Strings are UTF-8 (converted from MUTF-8).
struct DexPool {
    std::vector<std::string> strings;
    std::vector<std::string> type_descriptors;
    std::vector<MethodSig> method_refs;
    DexCounts counts;

    friend bool operator==(const DexPool&, const DexPool&) = default;
};

/// Parses the header, string_ids, type_ids and method_ids of a DEX file
/// (versions 035 through 039, little-endian only). Throws Error(DexCorrupt).
DexPool extract_dex_pool(std::span<const std::uint8_t> bytes);

/// Decodes one MUTF-8 string (no terminator) into UTF-8. Invalid sequences and
/// unpaired surrogates become U+FFFD; C0 80 becomes U+0000.
std::string decode_mutf8(std::span<const std::uint8_t> bytes);

}  // namespace apktriage
