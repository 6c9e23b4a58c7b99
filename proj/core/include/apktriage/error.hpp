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

#include <stdexcept>
#include <string>
#include <string_view>

namespace apktriage {

enum class ErrorKind {
    NotAnApp,
    Io,
    Usage,
    ManifestMissing,
    ManifestUnparsable,
    ZipCorrupt,
    AxmlCorrupt,
    DexCorrupt,
    CatalogInvalid,
    BadName,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library is an Error carrying its kind, so the
// CLI can map it onto an exit code without string inspection.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

    // true for the format/parse class of failures (exit code 2).
    bool is_parse_error() const noexcept;

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace apktriage
