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

#include "apktriage/axml.hpp"

#include <cstdio>
#include <string>

#include "byte_reader.hpp"

namespace apktriage {

namespace {

constexpr std::uint16_t kStringPool = 0x0001;
constexpr std::uint16_t kXmlDocument = 0x0003;
constexpr std::uint16_t kStartNamespace = 0x0100;
constexpr std::uint16_t kEndNamespace = 0x0101;
constexpr std::uint16_t kStartElement = 0x0102;
constexpr std::uint16_t kEndElement = 0x0103;
constexpr std::uint16_t kCdata = 0x0104;
constexpr std::uint16_t kResourceMap = 0x0180;

constexpr std::uint32_t kUtf8Flag = 0x100;
constexpr std::uint32_t kNoIndex = 0xFFFFFFFF;

constexpr std::uint8_t kTypeReference = 0x01;
constexpr std::uint8_t kTypeString = 0x03;
constexpr std::uint8_t kTypeIntDec = 0x10;
constexpr std::uint8_t kTypeIntHex = 0x11;
constexpr std::uint8_t kTypeIntBoolean = 0x12;

struct Chunk {
    std::size_t start;
    std::uint16_t type;
    std::uint16_t header_size;
    std::uint32_t size;

    std::size_t end() const { return start + size; }
    std::size_t body() const { return start + header_size; }
};

Chunk read_chunk(const detail::ByteReader& in, std::size_t pos, std::size_t limit) {
    if (pos + 8 > limit) in.fail("truncated chunk header at offset " + std::to_string(pos));
    Chunk c{pos, in.u16(pos), in.u16(pos + 2), in.u32(pos + 4)};
    if (c.header_size < 8 || c.size < c.header_size) {
        in.fail("malformed chunk header at offset " + std::to_string(pos));
    }
    if (c.size > limit - pos) {
        in.fail("chunk at offset " + std::to_string(pos) + " overruns buffer");
    }
    return c;
}

class StringPool {
public:
    void load(const detail::ByteReader& in, const Chunk& chunk) {
        if (chunk.header_size < 28) in.fail("string pool header too small");
        const std::uint32_t count = in.u32(chunk.start + 8);
        const std::uint32_t flags = in.u32(chunk.start + 16);
        const std::uint32_t strings_start = in.u32(chunk.start + 20);
        const bool utf8 = (flags & kUtf8Flag) != 0;
        if (static_cast<std::uint64_t>(count) * 4 > chunk.size - chunk.header_size) {
            in.fail("string pool offsets overrun chunk");
        }
        strings_.clear();
        strings_.reserve(count);
        const std::size_t data = chunk.start + strings_start;
        for (std::uint32_t i = 0; i < count; ++i) {
            const std::size_t at = data + in.u32(chunk.body() + 4 * static_cast<std::size_t>(i));
            if (at >= chunk.end()) in.fail("string " + std::to_string(i) + " outside string pool");
            strings_.push_back(utf8 ? read_utf8(in, at, chunk.end()) : read_utf16(in, at, chunk.end()));
        }
    }

    const std::string& at(const detail::ByteReader& in, std::uint32_t index) const {
        if (index >= strings_.size()) {
            in.fail("string index " + std::to_string(index) + " out of pool bounds (" +
                    std::to_string(strings_.size()) + ")");
        }
        return strings_[index];
    }

    std::optional<std::string> optional(const detail::ByteReader& in, std::uint32_t index) const {
        if (index == kNoIndex) return std::nullopt;
        return at(in, index);
    }

private:
    static std::string read_utf8(const detail::ByteReader& in, std::size_t pos, std::size_t end) {
        auto length = [&](std::size_t& p) {
            std::size_t n = in.u8(p++);
            if (n & 0x80) n = ((n & 0x7F) << 8) | in.u8(p++);
            return n;
        };
        length(pos);  // UTF-16 length, unused
        const std::size_t bytes = length(pos);
        if (pos + bytes > end) in.fail("UTF-8 string overruns string pool");
        auto raw = in.slice(pos, bytes, "UTF-8 string");
        return std::string(raw.begin(), raw.end());
    }

    static std::string read_utf16(const detail::ByteReader& in, std::size_t pos, std::size_t end) {
        std::size_t units = in.u16(pos);
        pos += 2;
        if (units & 0x8000) {
            units = ((units & 0x7FFF) << 16) | in.u16(pos);
            pos += 2;
        }
        if (pos + 2 * units > end) in.fail("UTF-16 string overruns string pool");
        std::vector<std::uint16_t> code_units(units);
        for (std::size_t i = 0; i < units; ++i) code_units[i] = in.u16(pos + 2 * i);
        return detail::utf16_to_utf8(code_units);
    }

    std::vector<std::string> strings_;
};

std::string render_value(const detail::ByteReader& in, const StringPool& pool, std::uint8_t type,
                         std::uint32_t data) {
    char buf[16];
    switch (type) {
    case kTypeString:
        return pool.at(in, data);
    case kTypeIntDec:
        return std::to_string(static_cast<std::int32_t>(data));
    case kTypeIntBoolean:
        return data != 0 ? "true" : "false";
    case kTypeIntHex:
        std::snprintf(buf, sizeof buf, "0x%08x", data);
        return buf;
    case kTypeReference:
        std::snprintf(buf, sizeof buf, "@%08x", data);
        return buf;
    default:
        return std::to_string(data);
    }
}

XmlNode read_start_element(const detail::ByteReader& in, const Chunk& chunk, const StringPool& pool) {
    const std::size_t ext = chunk.body();
    if (ext + 20 > chunk.end()) in.fail("start element chunk too small");
    XmlNode node;
    node.ns = pool.optional(in, in.u32(ext));
    node.name = pool.at(in, in.u32(ext + 4));
    const std::uint16_t attr_start = in.u16(ext + 8);
    const std::uint16_t attr_size = in.u16(ext + 10);
    const std::uint16_t attr_count = in.u16(ext + 12);
    if (attr_count > 0 && attr_size < 20) in.fail("attribute record too small");
    const std::size_t first = ext + attr_start;
    if (first + static_cast<std::size_t>(attr_count) * attr_size > chunk.end()) {
        in.fail("attributes overrun start element chunk");
    }
    node.attributes.reserve(attr_count);
    for (std::size_t i = 0; i < attr_count; ++i) {
        const std::size_t a = first + i * attr_size;
        XmlAttribute attr;
        attr.ns = pool.optional(in, in.u32(a));
        attr.name = pool.at(in, in.u32(a + 4));
        attr.value = render_value(in, pool, in.u8(a + 15), in.u32(a + 16));
        node.attributes.push_back(std::move(attr));
    }
    return node;
}

}  // namespace

const std::string* XmlNode::attribute(std::string_view local_name) const {
    for (const auto& attr : attributes) {
        if (attr.name == local_name) return &attr.value;
    }
    return nullptr;
}

XmlTree decode_axml(std::span<const std::uint8_t> bytes) {
    const detail::ByteReader in(bytes, ErrorKind::AxmlCorrupt);
    const Chunk doc = read_chunk(in, 0, in.size());
    if (doc.type != kXmlDocument) in.fail("bad magic: first chunk is not an XML document");

    StringPool pool;
    std::vector<XmlNode> open;
    std::optional<XmlNode> root;

    for (std::size_t pos = doc.body(); pos < doc.end();) {
        const Chunk chunk = read_chunk(in, pos, doc.end());
        switch (chunk.type) {
        case kStringPool:
            pool.load(in, chunk);
            break;
        case kStartElement:
            if (root) in.fail("content after the root element");
            open.push_back(read_start_element(in, chunk, pool));
            break;
        case kEndElement: {
            if (chunk.body() + 8 > chunk.end()) in.fail("end element chunk too small");
            const std::string& name = pool.at(in, in.u32(chunk.body() + 4));
            if (open.empty() || open.back().name != name) {
                in.fail("unbalanced end element '" + name + "'");
            }
            XmlNode done = std::move(open.back());
            open.pop_back();
            if (open.empty()) {
                root = std::move(done);
            } else {
                open.back().children.push_back(std::move(done));
            }
            break;
        }
        case kStartNamespace:
        case kEndNamespace:
        case kCdata:
        case kResourceMap:
        default:
            break;
        }
        pos = chunk.end();
    }

    if (!open.empty()) in.fail("unterminated element '" + open.back().name + "'");
    if (!root) in.fail("document has no root element");
    return XmlTree{std::move(*root)};
}

}  // namespace apktriage
