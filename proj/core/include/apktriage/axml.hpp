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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apktriage {

struct XmlAttribute {
    std::optional<std::string> ns;
    std::string name;
    std::string value;

    friend bool operator==(const XmlAttribute&, const XmlAttribute&) = default;
};

struct XmlNode {
    std::string name;
    std::optional<std::string> ns;
    std::vector<XmlAttribute> attributes;
    std::vector<XmlNode> children;

    /// Value of the first attribute with this local name, any namespace.
    const std::string* attribute(std::string_view local_name) const;

    friend bool operator==(const XmlNode&, const XmlNode&) = default;
};

struct XmlTree {
    XmlNode root;

    friend bool operator==(const XmlTree&, const XmlTree&) = default;
};

/// Decodes an Android binary XML document (compiled AndroidManifest.xml).
///
/// Walks the chunk stream after the 0x0003 document header: string pool
/// (UTF-8 or UTF-16LE), resource map (skipped), namespace chunks, start/end
/// element and CDATA chunks. Typed attribute values are rendered to text:
/// strings from the pool, ints in decimal, booleans as "true"/"false", hex
/// ints as "0x%08x", references as "@%08x".
///
/// Throws Error(AxmlCorrupt) on bad magic, chunk overruns, string indices out
/// of the pool, or unbalanced nesting.
XmlTree decode_axml(std::span<const std::uint8_t> bytes);

}  // namespace apktriage
