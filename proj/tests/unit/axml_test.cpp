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

#include <gtest/gtest.h>

#include "apktriage/axml.hpp"
#include "apktriage/error.hpp"
#include "apktriage/manifest.hpp"
#include "test_support.hpp"

using namespace apktriage;
using apktriage::testing::fixture;
using apktriage::testing::read_bytes;
using apktriage::testing::read_text;

namespace {

const char* const kManifests[] = {"sms_app", "widget_app", "social_app", "media_app"};

ErrorKind kind_of(const std::vector<std::uint8_t>& bytes) {
    try {
        decode_axml(bytes);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;
}

}  // namespace

TEST(Axml, Utf8AndUtf16PoolsDecodeToTheSameTree) {
    for (const char* name : kManifests) {
        SCOPED_TRACE(name);
        const auto a = decode_axml(read_bytes(fixture(std::string("manifests/") + name + ".utf8.axml")));
        const auto b = decode_axml(read_bytes(fixture(std::string("manifests/") + name + ".utf16.axml")));
        EXPECT_EQ(a, b);
        EXPECT_EQ(a.root.name, "manifest");
    }
}

TEST(Axml, ManifestEqualsTextParse) {
    for (const char* name : kManifests) {
        SCOPED_TRACE(name);
        const ManifestInfo text = parse_manifest_xml(read_text(fixture(std::string("manifests/") + name + ".xml")));
        for (const char* enc : {".utf8.axml", ".utf16.axml"}) {
            const auto tree = decode_axml(read_bytes(fixture(std::string("manifests/") + name + enc)));
            EXPECT_EQ(manifest_from_axml(tree), text) << enc;
        }
    }
}

TEST(Axml, TypedValuesRender) {
    const auto tree = decode_axml(read_bytes(fixture("manifests/sms_app.utf16.axml")));
    ASSERT_NE(tree.root.attribute("versionCode"), nullptr);
    EXPECT_EQ(*tree.root.attribute("versionCode"), "3");
    EXPECT_EQ(*tree.root.attribute("package"), "com.example.sms");
    const XmlNode* app = nullptr;
    for (const auto& c : tree.root.children) {
        if (c.name == "application") app = &c;
    }
    ASSERT_NE(app, nullptr);
    EXPECT_EQ(*app->attribute("allowBackup"), "true");
    EXPECT_EQ(*app->children.at(0).attribute("exported"), "true");
}

TEST(Axml, AndroidNamespaceIsKept) {
    const auto tree = decode_axml(read_bytes(fixture("manifests/widget_app.utf8.axml")));
    bool seen = false;
    for (const auto& c : tree.root.children) {
        for (const auto& a : c.attributes) {
            if (a.name == "name") {
                ASSERT_TRUE(a.ns.has_value());
                EXPECT_EQ(*a.ns, "http://schemas.android.com/apk/res/android");
                seen = true;
            }
        }
    }
    EXPECT_TRUE(seen);
}

TEST(Axml, BadHeaderRejected) {
    auto bytes = read_bytes(fixture("manifests/media_app.utf8.axml"));
    bytes[0] = 0x05;
    EXPECT_EQ(kind_of(bytes), ErrorKind::AxmlCorrupt);
    EXPECT_EQ(kind_of({}), ErrorKind::AxmlCorrupt);
    EXPECT_EQ(kind_of({0x03, 0x00, 0x08, 0x00}), ErrorKind::AxmlCorrupt);
}

TEST(Axml, EveryTruncationIsRejected) {
    const auto bytes = read_bytes(fixture("manifests/social_app.utf16.axml"));
    for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
        std::vector<std::uint8_t> part(bytes.begin(), bytes.begin() + static_cast<long>(cut));
        ASSERT_EQ(kind_of(part), ErrorKind::AxmlCorrupt) << "cut at " << cut;
    }
}

TEST(Axml, RandomByteFlipsNeverCrash) {
    const auto original = read_bytes(fixture("manifests/sms_app.utf8.axml"));
    std::mt19937 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto bytes = original;
        const int flips = 1 + static_cast<int>(rng() % 4);
        for (int f = 0; f < flips; ++f) bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        try {
            decode_axml(bytes);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::AxmlCorrupt);
        }
    }
}
