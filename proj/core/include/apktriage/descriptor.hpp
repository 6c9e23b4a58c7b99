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

#include <string>
#include <string_view>

namespace apktriage {

/// Converts a dotted Java class name to a smali type descriptor.
///
/// The first segment starting with an uppercase letter is the outer class;
/// segments before it form the package ("/"-joined), segments after it are
/// nested classes ("$"-joined):
///
///   android.hardware.Camera.PictureCallback -> Landroid/hardware/Camera$PictureCallback;
///
/// Throws Error(BadName) if no segment starts with an uppercase letter or a
/// segment is empty.
std::string dotted_to_descriptor(std::string_view dotted);

/// True for `L<anything but ;>;`.
bool is_class_descriptor(std::string_view descriptor);

}  // namespace apktriage
