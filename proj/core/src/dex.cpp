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

#include "apktriage/dex.hpp"

#include <cstring>
#include <string>
#include <string_view>

#include "byte_reader.hpp"

namespace apktriage {

namespace {

constexpr std::size_t kHeaderSize = 0x70;
constexpr std::uint32_t kEndianConstant = 0x12345678;
constexpr std::string_view kDescriptorLeads = "L[ZBSCIJFDV";

// Offsets into header_item.
constexpr std::size_t kFileSizeOff = 0x20;
constexpr std::size_t kEndianTagOff = 0x28;
constexpr std::size_t kStringIdsOff = 0x38;
constexpr std::size_t kTypeIdsOff = 0x40;
constexpr std::size_t kMethodIdsOff = 0x58;

void check_magic(const detail::ByteReader& in) {
    if (in.size() < kHeaderSize) in.fail("file shorter than DEX header");
    auto magic = in.slice(0, 8, "magic");
    if (std::memcmp(magic.data(), "dex\n0", 5) != 0 || magic[5] != '3' || magic[6] < '5' ||
        magic[6] > '9' || magic[7] != 0) {
        in.fail("bad magic");
    }
    if (in.u32(kEndianTagOff) != kEndianConstant) in.fail("unsupported endian tag");
    if (const std::uint32_t declared = in.u32(kFileSizeOff); declared > in.size()) {
        in.fail("truncated: header declares " + std::to_string(declared) + " bytes, have " + std::to_string(in.size()));
    }
}

std::pair<std::uint32_t, std::uint32_t> table(const detail::ByteReader& in, std::size_t at,
                                              std::size_t item_size, const char* what) {
    const std::uint32_t count = in.u32(at);
    const std::uint32_t offset = in.u32(at + 4);
    in.require(offset, static_cast<std::size_t>(count) * item_size, what);
    return {count, offset};
}

std::string read_string_data(const detail::ByteReader& in, std::size_t pos) {
    // uleb128 utf16_size, unused beyond validation of the encoding
    for (int i = 0; i < 5; ++i) {
        if (!(in.u8(pos++) & 0x80)) break;
        if (i == 4) in.fail("malformed uleb128 in string data");
    }
    const auto bytes = in.bytes();
    std::size_t end = pos;
    while (end < bytes.size() && bytes[end] != 0) ++end;
    if (end >= bytes.size()) in.fail("unterminated string data at offset " + std::to_string(pos));
    return decode_mutf8(bytes.subspan(pos, end - pos));
}

}  // namespace

std::string decode_mutf8(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint32_t> units;
    units.reserve(bytes.size());
    constexpr std::uint32_t kReplacement = 0xFFFD;
    for (std::size_t i = 0; i < bytes.size();) {
        const std::uint8_t b0 = bytes[i];
        auto cont = [&](std::size_t k) { return i + k < bytes.size() && (bytes[i + k] & 0xC0) == 0x80; };
        if (b0 < 0x80) {
            units.push_back(b0);
            i += 1;
        } else if ((b0 & 0xE0) == 0xC0 && cont(1)) {
            units.push_back(((b0 & 0x1Fu) << 6) | (bytes[i + 1] & 0x3Fu));
            i += 2;
        } else if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
            units.push_back(((b0 & 0x0Fu) << 12) | ((bytes[i + 1] & 0x3Fu) << 6) | (bytes[i + 2] & 0x3Fu));
            i += 3;
        } else {
            units.push_back(kReplacement);
            i += 1;
        }
    }
    return detail::utf16_to_utf8(units);
}

DexPool extract_dex_pool(std::span<const std::uint8_t> bytes) {
    const detail::ByteReader in(bytes, ErrorKind::DexCorrupt);
    check_magic(in);

    const auto [string_count, string_off] = table(in, kStringIdsOff, 4, "string_ids");
    const auto [type_count, type_off] = table(in, kTypeIdsOff, 4, "type_ids");
    const auto [method_count, method_off] = table(in, kMethodIdsOff, 8, "method_ids");

    DexPool pool;
    pool.counts = {string_count, type_count, method_count};

    pool.strings.reserve(string_count);
    for (std::uint32_t i = 0; i < string_count; ++i) {
        pool.strings.push_back(read_string_data(in, in.u32(string_off + 4 * std::size_t{i})));
    }

    pool.type_descriptors.reserve(type_count);
    for (std::uint32_t i = 0; i < type_count; ++i) {
        const std::uint32_t idx = in.u32(type_off + 4 * std::size_t{i});
        if (idx >= string_count) in.fail("type_id " + std::to_string(i) + " string index out of range");
        const std::string& desc = pool.strings[idx];
        if (desc.empty() || kDescriptorLeads.find(desc.front()) == std::string_view::npos) {
            in.fail("type_id " + std::to_string(i) + " is not a type descriptor: '" + desc + "'");
        }
        pool.type_descriptors.push_back(desc);
    }

    pool.method_refs.reserve(method_count);
    for (std::uint32_t i = 0; i < method_count; ++i) {
        const std::size_t at = method_off + 8 * std::size_t{i};
        const std::uint16_t class_idx = in.u16(at);
        const std::uint32_t name_idx = in.u32(at + 4);
        if (class_idx >= type_count) in.fail("method_id " + std::to_string(i) + " class index out of range");
        if (name_idx >= string_count) in.fail("method_id " + std::to_string(i) + " name index out of range");
        pool.method_refs.push_back({pool.type_descriptors[class_idx], pool.strings[name_idx]});
    }
    return pool;
}

}  // namespace apktriage
