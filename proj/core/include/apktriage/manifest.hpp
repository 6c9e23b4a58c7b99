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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apktriage/axml.hpp"

namespace apktriage {

enum class ComponentKind { Activity, Service, Receiver, Provider };

std::string_view to_string(ComponentKind kind);

struct Component {
    ComponentKind kind;
    std::string name;

    friend bool operator==(const Component&, const Component&) = default;
};

/// Permission/component/intent facts of an AndroidManifest.xml.
struct ManifestInfo {
    std::string package;
    /// uses-permission and uses-permission-sdk-23 names.
    std::set<std::string> declared_permissions;
    /// Components declared under <application>, in document order.
    std::vector<Component> components;
    /// Every <action> name inside any <intent-filter>.
    std::set<std::string> intent_actions;

    friend bool operator==(const ManifestInfo&, const ManifestInfo&) = default;
};

/// Parses a text AndroidManifest.xml. Throws Error(ManifestUnparsable).
ManifestInfo parse_manifest_xml(std::string_view text);

/// Same extraction over an already-decoded tree (binary manifests).
ManifestInfo manifest_from_axml(const XmlTree& tree);

/// Parses text XML into the same tree shape decode_axml produces. Attribute
/// names keep only their local part; the prefix's URI goes to `ns`.
XmlTree parse_xml_text(std::string_view text);

}  // namespace apktriage
