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

#include <iosfwd>

namespace apktriage {

/// Entry point of the apktriage command line:
///
///   apktriage analyze <path> [--catalog F] [--categories F] [--api-map F]
///                            [--declared-category NAME] [--min-score R]
///                            [--format json|text] [--out FILE]
///   apktriage corpus <dir> [same flags] [--jobs N] [--summary json|csv]
///   apktriage catalog validate <file>...
///
/// Exit codes: 0 Benign / clean, 10 Suspicious, 11 MaliciousSuspect (corpus:
/// the maximum over apps), 1 usage or I/O error, 2 parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apktriage
