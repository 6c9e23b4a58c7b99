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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "apktriage/error.hpp"

namespace apktriage::detail {

// Bounds-checked little-endian reads over an immutable buffer. Every failed
// read throws Error(kind) so each format reports its own corruption class.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> bytes, ErrorKind kind) : bytes_(bytes), kind_(kind) {}

    std::size_t size() const noexcept { return bytes_.size(); }
    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    void require(std::size_t offset, std::size_t length, const char* what) const {
        if (offset > bytes_.size() || length > bytes_.size() - offset) {
            fail(std::string(what) + " out of bounds at offset " + std::to_string(offset));
        }
    }

    std::uint8_t u8(std::size_t offset) const {
        require(offset, 1, "u8");
        return bytes_[offset];
    }

    std::uint16_t u16(std::size_t offset) const {
        require(offset, 2, "u16");
        return static_cast<std::uint16_t>(bytes_[offset] | (bytes_[offset + 1] << 8));
    }

    std::uint32_t u32(std::size_t offset) const {
        require(offset, 4, "u32");
        return static_cast<std::uint32_t>(bytes_[offset]) |
               (static_cast<std::uint32_t>(bytes_[offset + 1]) << 8) |
               (static_cast<std::uint32_t>(bytes_[offset + 2]) << 16) |
               (static_cast<std::uint32_t>(bytes_[offset + 3]) << 24);
    }

    std::span<const std::uint8_t> slice(std::size_t offset, std::size_t length, const char* what) const {
        require(offset, length, what);
        return bytes_.subspan(offset, length);
    }

    [[noreturn]] void fail(const std::string& message) const { throw Error(kind_, message); }

private:
    std::span<const std::uint8_t> bytes_;
    ErrorKind kind_;
};

// Appends the UTF-8 encoding of a code point; invalid scalars become U+FFFD.
inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Joins UTF-16 code units into UTF-8, pairing surrogates; lone halves map to U+FFFD.
template <typename Units>
std::string utf16_to_utf8(const Units& units) {
    std::string out;
    out.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        const std::uint32_t u = units[i];
        if (u >= 0xD800 && u <= 0xDBFF && i + 1 < units.size() && units[i + 1] >= 0xDC00 &&
            units[i + 1] <= 0xDFFF) {
            const std::uint32_t low = units[i + 1];
            append_utf8(out, 0x10000 + ((u - 0xD800) << 10) + (low - 0xDC00));
            ++i;
        } else {
            append_utf8(out, u);
        }
    }
    return out;
}

}  // namespace apktriage::detail
