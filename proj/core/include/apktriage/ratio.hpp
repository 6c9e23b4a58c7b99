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
#include <string>
#include <string_view>

namespace apktriage {

/// Exact non-negative rational, always stored in lowest terms with den > 0.
class Ratio {
public:
    constexpr Ratio() = default;
    Ratio(std::int64_t num, std::int64_t den);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "n/d", or just "n" when den is 1.
    std::string str() const;

    /// Accepts "n/d", integers and plain decimals ("0.6"); throws Error(Usage).
    static Ratio parse(std::string_view text);

    friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace apktriage
