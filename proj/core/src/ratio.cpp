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

#include "apktriage/ratio.hpp"

#include <charconv>
#include <numeric>

#include "apktriage/error.hpp"

namespace apktriage {

Ratio::Ratio(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0) {
        throw Error(ErrorKind::Usage, "ratio must be non-negative with positive denominator");
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Ratio::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw Error(ErrorKind::Usage, "not a ratio: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Ratio(parse_digits(text.substr(0, slash), text),
                     parse_digits(text.substr(slash + 1), text));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 12) frac = frac.substr(0, 12);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        const std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
        const std::int64_t part = frac.empty() ? 0 : parse_digits(frac, text);
        return Ratio(whole * scale + part, scale);
    }
    return Ratio(parse_digits(text, text), 1);
}

}  // namespace apktriage
