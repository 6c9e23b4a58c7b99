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

#include "apktriage/zip.hpp"

#include <zlib.h>

#include <algorithm>
#include <limits>
#include <string>

#include "byte_reader.hpp"

namespace apktriage {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034B50;
constexpr std::uint32_t kCentralDirSig = 0x02014B50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054B50;
constexpr std::size_t kEocdSize = 22;
constexpr std::size_t kCentralEntrySize = 46;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::uint64_t kMaxEntrySize = 512ull << 20;

std::size_t find_eocd(const detail::ByteReader& in) {
    if (in.size() < kEocdSize) in.fail("archive shorter than end-of-central-directory record");
    const std::size_t last = in.size() - kEocdSize;
    const std::size_t floor = last > 0xFFFF ? last - 0xFFFF : 0;
    for (std::size_t pos = last + 1; pos-- > floor;) {
        if (in.u32(pos) == kEndOfCentralDirSig && pos + kEocdSize + in.u16(pos + 20) <= in.size()) {
            return pos;
        }
    }
    in.fail("end-of-central-directory record not found");
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> compressed, std::uint64_t expected,
                                      const std::string& name, const detail::ByteReader& in) {
    std::vector<std::uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) in.fail("zlib init failed");
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());
    // One extra byte of output space lets us detect streams longer than declared.
    std::uint8_t overflow = 0;
    zs.next_out = out.empty() ? &overflow : out.data();
    zs.avail_out = out.empty() ? 1 : static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) {
        in.fail("inflate failed for entry '" + name + "'");
    }
    return out;
}

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t done = 0;
    while (done < bytes.size()) {
        const auto chunk = static_cast<uInt>(
            std::min<std::size_t>(bytes.size() - done, std::numeric_limits<uInt>::max()));
        crc = crc32(crc, bytes.data() + done, chunk);
        done += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<ZipEntry> read_zip_entries(std::span<const std::uint8_t> bytes) {
    const detail::ByteReader in(bytes, ErrorKind::ZipCorrupt);
    const std::size_t eocd = find_eocd(in);

    const std::uint16_t total_entries = in.u16(eocd + 10);
    const std::uint32_t cd_size = in.u32(eocd + 12);
    const std::uint32_t cd_offset = in.u32(eocd + 16);
    if (total_entries == 0xFFFF || cd_size == 0xFFFFFFFF || cd_offset == 0xFFFFFFFF) {
        in.fail("zip64 unsupported");
    }
    in.require(cd_offset, cd_size, "central directory");

    std::vector<ZipEntry> entries;
    entries.reserve(total_entries);
    std::size_t pos = cd_offset;
    for (std::uint16_t i = 0; i < total_entries; ++i) {
        in.require(pos, kCentralEntrySize, "central directory entry");
        if (in.u32(pos) != kCentralDirSig) in.fail("central directory signature mismatch");
        const std::uint16_t flags = in.u16(pos + 8);
        const std::uint16_t method = in.u16(pos + 10);
        const std::uint32_t crc = in.u32(pos + 16);
        const std::uint32_t csize = in.u32(pos + 20);
        const std::uint32_t usize = in.u32(pos + 24);
        const std::uint16_t name_len = in.u16(pos + 28);
        const std::uint16_t extra_len = in.u16(pos + 30);
        const std::uint16_t comment_len = in.u16(pos + 32);
        const std::uint32_t local_offset = in.u32(pos + 42);
        auto name_bytes = in.slice(pos + kCentralEntrySize, name_len, "entry name");

        ZipEntry entry;
        entry.name.assign(name_bytes.begin(), name_bytes.end());
        entry.crc32 = crc;
        entry.uncompressed_size = usize;

        if (csize == 0xFFFFFFFF || usize == 0xFFFFFFFF || local_offset == 0xFFFFFFFF) {
            in.fail("zip64 unsupported");
        }
        if (flags & 0x1) in.fail("encrypted entry '" + entry.name + "' unsupported");
        if (usize > kMaxEntrySize) in.fail("entry '" + entry.name + "' too large");

        in.require(local_offset, kLocalHeaderSize, "local header");
        if (in.u32(local_offset) != kLocalHeaderSig) {
            in.fail("local header signature mismatch for '" + entry.name + "'");
        }
        const std::size_t data_offset =
            local_offset + kLocalHeaderSize + in.u16(local_offset + 26) + in.u16(local_offset + 28);
        auto payload = in.slice(data_offset, csize, "entry data");

        switch (method) {
        case 0:
            if (csize != usize) in.fail("stored entry '" + entry.name + "' size mismatch");
            entry.method = ZipMethod::Stored;
            entry.data.assign(payload.begin(), payload.end());
            break;
        case 8:
            entry.method = ZipMethod::Deflate;
            entry.data = inflate_raw(payload, usize, entry.name, in);
            break;
        default:
            in.fail("unsupported compression method " + std::to_string(method) + " for '" + entry.name + "'");
        }
        if (crc32_of(entry.data) != entry.crc32) in.fail("CRC mismatch for '" + entry.name + "'");

        entries.push_back(std::move(entry));
        pos += kCentralEntrySize + name_len + extra_len + comment_len;
    }
    return entries;
}

}  // namespace apktriage
