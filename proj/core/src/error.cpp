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

#include "apktriage/error.hpp"

namespace apktriage {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotAnApp: return "NotAnApp";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::ManifestMissing: return "ManifestMissing";
    case ErrorKind::ManifestUnparsable: return "ManifestUnparsable";
    case ErrorKind::ZipCorrupt: return "ZipCorrupt";
    case ErrorKind::AxmlCorrupt: return "AxmlCorrupt";
    case ErrorKind::DexCorrupt: return "DexCorrupt";
    case ErrorKind::CatalogInvalid: return "CatalogInvalid";
    case ErrorKind::BadName: return "BadName";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

bool Error::is_parse_error() const noexcept {
    switch (kind_) {
    case ErrorKind::ManifestMissing:
    case ErrorKind::ManifestUnparsable:
    case ErrorKind::ZipCorrupt:
    case ErrorKind::AxmlCorrupt:
    case ErrorKind::DexCorrupt:
    case ErrorKind::CatalogInvalid:
    case ErrorKind::BadName:
        return true;
    default:
        return false;
    }
}

}  // namespace apktriage
