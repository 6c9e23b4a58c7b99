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

#include "apktriage/descriptor.hpp"

#include <vector>

#include "apktriage/error.hpp"

namespace apktriage {

std::string dotted_to_descriptor(std::string_view dotted) {
    std::vector<std::string_view> segments;
    for (std::size_t start = 0;;) {
        const std::size_t dot = dotted.find('.', start);
        segments.push_back(dotted.substr(start, dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    std::size_t outer = segments.size();
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].empty()) throw Error(ErrorKind::BadName, "empty segment in '" + std::string(dotted) + "'");
        if (outer == segments.size() && segments[i].front() >= 'A' && segments[i].front() <= 'Z') outer = i;
    }
    if (outer == segments.size()) {
        throw Error(ErrorKind::BadName, "no class segment in '" + std::string(dotted) + "'");
    }
    std::string out = "L";
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) out += i <= outer ? '/' : '$';
        out += segments[i];
    }
    out += ';';
    return out;
}

bool is_class_descriptor(std::string_view descriptor) {
    return descriptor.size() >= 3 && descriptor.front() == 'L' && descriptor.back() == ';' &&
           descriptor.substr(1, descriptor.size() - 2).find(';') == std::string_view::npos;
}

}  // namespace apktriage
