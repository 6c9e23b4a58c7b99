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

#include <json.hpp>

#include "apktriage/dex.hpp"
#include "apktriage/error.hpp"
#include "test_support.hpp"

using namespace apktriage;
using apktriage::testing::fixture;
using apktriage::testing::read_bytes;
using apktriage::testing::read_text;

namespace {

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return b[off] | (b[off + 1] << 8) | (b[off + 2] << 16) | (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

ErrorKind kind_of(const std::vector<std::uint8_t>& bytes) {
    try {
        extract_dex_pool(bytes);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;
}

std::string mutf8(std::initializer_list<std::uint8_t> bytes) {
    const std::vector<std::uint8_t> v(bytes);
    return decode_mutf8(v);
}

}  // namespace

TEST(Dex, PoolsMatchIndependentDump) {
    for (const char* name : {"minimal", "rich", "second"}) {
        SCOPED_TRACE(name);
        const auto bytes = read_bytes(fixture(std::string("dex/") + name + ".dex"));
        const auto expected = nlohmann::json::parse(read_text(fixture(std::string("dex/") + name + ".expected.json")));
        const DexPool pool = extract_dex_pool(bytes);

        EXPECT_EQ(pool.counts.strings, le32(bytes, 0x38));
        EXPECT_EQ(pool.counts.types, le32(bytes, 0x40));
        EXPECT_EQ(pool.counts.methods, le32(bytes, 0x58));
        EXPECT_EQ(pool.counts.strings, expected["string_count"].get<std::uint32_t>());
        EXPECT_EQ(pool.counts.types, expected["type_count"].get<std::uint32_t>());
        EXPECT_EQ(pool.counts.methods, expected["method_count"].get<std::uint32_t>());
        EXPECT_EQ(pool.strings, expected["strings"].get<std::vector<std::string>>());
        EXPECT_EQ(pool.type_descriptors, expected["types"].get<std::vector<std::string>>());

        std::set<MethodSig> want;
        for (const auto& m : expected["methods"]) want.insert({m[0].get<std::string>(), m[1].get<std::string>()});
        EXPECT_EQ(std::set<MethodSig>(pool.method_refs.begin(), pool.method_refs.end()), want);
    }
}

TEST(Dex, MinimalFixture) {
    const DexPool pool = extract_dex_pool(read_bytes(fixture("dex/minimal.dex")));
    EXPECT_EQ(pool.counts, (DexCounts{3, 1, 1}));
    ASSERT_EQ(pool.method_refs.size(), 1u);
    EXPECT_EQ(pool.method_refs[0], (MethodSig{"Landroid/telephony/SmsManager;", "sendTextMessage"}));
}

TEST(Dex, Mutf8) {
    EXPECT_EQ(mutf8({'a', 'b'}), "ab");
    EXPECT_EQ(mutf8({0xC0, 0x80}), std::string(1, '\0'));
    EXPECT_EQ(mutf8({0xC3, 0xA9}), "\xC3\xA9");
    // U+1F600 as a CESU-8 surrogate pair.
    EXPECT_EQ(mutf8({0xED, 0xA0, 0xBD, 0xED, 0xB8, 0x80}), "\xF0\x9F\x98\x80");
    // Lone surrogate and stray continuation byte.
    EXPECT_EQ(mutf8({0xED, 0xA0, 0xBD}), "\xEF\xBF\xBD");
    EXPECT_EQ(mutf8({0x80}), "\xEF\xBF\xBD");
}

TEST(Dex, RichStringsSurviveRoundTrip) {
    const DexPool pool = extract_dex_pool(read_bytes(fixture("dex/rich.dex")));
    const auto has = [&](const std::string& s) {
        return std::find(pool.strings.begin(), pool.strings.end(), s) != pool.strings.end();
    };
    EXPECT_TRUE(has(std::string("nul\0inside", 10)));
    EXPECT_TRUE(has("caf\xC3\xA9 \xE2\x98\x83 \xF0\x9F\x98\x80"));
}

TEST(Dex, BadMagicAndEndianRejected) {
    auto bytes = read_bytes(fixture("dex/minimal.dex"));
    auto bad = bytes;
    bad[2] = 'y';
    EXPECT_EQ(kind_of(bad), ErrorKind::DexCorrupt);
    bad = bytes;
    bad[4] = '0';
    bad[5] = '3';
    bad[6] = '4';
    EXPECT_EQ(kind_of(bad), ErrorKind::DexCorrupt);
    bad = bytes;
    // Big-endian tag 12 34 56 78.
    std::swap(bad[0x28], bad[0x2B]);
    std::swap(bad[0x29], bad[0x2A]);
    EXPECT_EQ(kind_of(bad), ErrorKind::DexCorrupt);
    EXPECT_EQ(kind_of({}), ErrorKind::DexCorrupt);
}

TEST(Dex, OutOfRangeTablesRejected) {
    auto bytes = read_bytes(fixture("dex/rich.dex"));
    bytes[0x38] = 0xFF;
    bytes[0x39] = 0xFF;
    EXPECT_EQ(kind_of(bytes), ErrorKind::DexCorrupt);
    const auto good = read_bytes(fixture("dex/rich.dex"));
    for (std::size_t cut : {std::size_t{0x70}, good.size() / 2, good.size() - 1}) {
        std::vector<std::uint8_t> part(good.begin(), good.begin() + static_cast<long>(cut));
        EXPECT_EQ(kind_of(part), ErrorKind::DexCorrupt) << cut;
    }
}

TEST(Dex, RandomByteFlipsNeverCrash) {
    const auto original = read_bytes(fixture("dex/rich.dex"));
    std::mt19937 rng(3);
    for (int i = 0; i < 2000; ++i) {
        auto bytes = original;
        bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        try {
            extract_dex_pool(bytes);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DexCorrupt);
        }
    }
}
