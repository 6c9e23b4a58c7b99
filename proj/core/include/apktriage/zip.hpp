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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace apktriage {

enum class ZipMethod { Stored, Deflate };

struct ZipEntry {
    std::string name;
    std::uint64_t uncompressed_size = 0;
    std::uint32_t crc32 = 0;
    ZipMethod method = ZipMethod::Stored;
    std::vector<std::uint8_t> data;
};

/// Reads every entry of a classic (non-ZIP64) archive in central-directory
/// order. Deflated entries are inflated and every entry's CRC-32 is checked.
/// Throws Error(ZipCorrupt).
std::vector<ZipEntry> read_zip_entries(std::span<const std::uint8_t> bytes);

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

}  // namespace apktriage
