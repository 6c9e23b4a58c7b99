#!/usr/bin/env python3
# Copyright (C) 2026 The apktriage Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plain-text line search over apktool trees, used as the reference for
feature extraction.

For each descriptor D and each line of every *.smali file below a smali*/
directory: a line containing D is a hit. It is an "invoke" hit when the
line is an invoke-* instruction whose callee class is exactly D, otherwise
a "type_ref" hit.

Usage: hit_oracle.py <corpus_dir> <out.json>
"""

import json
import os
import sys

DESCRIPTORS = [
    "Landroid/telephony/SmsMessage;",
    "Landroid/telephony/SmsManager;",
    "Landroid/hardware/Camera$PictureCallback;",
    "Landroid/telephony/CellLocation;",
    "Landroid/location/LocationManager;",
    "Landroid/media/AudioRecord;",
]


def callee_class(line):
    words = line.split()
    if not words or not words[0].startswith("invoke-"):
        return None
    target = words[-1]
    if "->" not in target:
        return None
    return target.split("->", 1)[0]


def smali_files(app_dir):
    for top in sorted(os.listdir(app_dir)):
        if not top.startswith("smali") or not os.path.isdir(os.path.join(app_dir, top)):
            continue
        for root, _, names in os.walk(os.path.join(app_dir, top)):
            for name in names:
                if name.endswith(".smali"):
                    full = os.path.join(root, name)
                    yield os.path.relpath(full, app_dir).replace(os.sep, "/"), full


def app_hits(app_dir):
    hits = []
    for rel, full in smali_files(app_dir):
        with open(full, "rb") as f:
            lines = f.read().decode("utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        for number, line in enumerate(lines, start=1):
            line = line.rstrip("\r")
            callee = callee_class(line)
            for d in DESCRIPTORS:
                if d in line:
                    hits.append([d, rel, number, "invoke" if callee == d else "type_ref"])
    return sorted(hits)


def main():
    corpus, out = sys.argv[1], sys.argv[2]
    result = {}
    for app in sorted(os.listdir(corpus)):
        if os.path.isdir(os.path.join(corpus, app)):
            result[app] = app_hits(os.path.join(corpus, app))
    with open(out, "w", encoding="utf-8") as f:
        json.dump(result, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
