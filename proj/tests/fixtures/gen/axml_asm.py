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
"""Standalone assembler: text XML -> Android binary XML (AXML).

Written independently of the C++ decoder so fixture pairs can cross-check it.
"""

import struct
import sys
import xml.etree.ElementTree as ET

RES_XML_TYPE = 0x0003
RES_STRING_POOL_TYPE = 0x0001
RES_XML_RESOURCE_MAP_TYPE = 0x0180
RES_XML_START_NAMESPACE_TYPE = 0x0100
RES_XML_END_NAMESPACE_TYPE = 0x0101
RES_XML_START_ELEMENT_TYPE = 0x0102
RES_XML_END_ELEMENT_TYPE = 0x0103

TYPE_REFERENCE = 0x01
TYPE_STRING = 0x03
TYPE_INT_DEC = 0x10
TYPE_INT_BOOLEAN = 0x12

NO_INDEX = 0xFFFFFFFF

# A few well-known android attribute resource ids.
ANDROID_ATTR_IDS = {
    "name": 0x01010003,
    "label": 0x01010001,
    "icon": 0x01010002,
    "versionCode": 0x0101021B,
    "versionName": 0x0101021C,
    "minSdkVersion": 0x0101020C,
    "exported": 0x01010010,
}

INT_ATTRS = {"versionCode", "minSdkVersion", "targetSdkVersion", "maxSdkVersion"}
BOOL_ATTRS = {"exported", "enabled", "debuggable", "allowBackup"}


class StringPool:
    def __init__(self):
        self.strings = []
        self.index = {}

    def add(self, s):
        if s not in self.index:
            self.index[s] = len(self.strings)
            self.strings.append(s)
        return self.index[s]

    def encode(self, utf8):
        offsets = []
        data = bytearray()
        for s in self.strings:
            offsets.append(len(data))
            if utf8:
                data += _len8(len(s.encode("utf-16-le")) // 2)
                raw = s.encode("utf-8")
                data += _len8(len(raw))
                data += raw + b"\x00"
            else:
                units = s.encode("utf-16-le")
                data += _len16(len(units) // 2)
                data += units + b"\x00\x00"
        while len(data) % 4:
            data += b"\x00"
        header_size = 28
        count = len(self.strings)
        strings_start = header_size + 4 * count
        size = strings_start + len(data)
        flags = 0x100 if utf8 else 0
        out = struct.pack("<HHIIIIII", RES_STRING_POOL_TYPE, header_size, size,
                          count, 0, flags, strings_start, 0)
        out += b"".join(struct.pack("<I", o) for o in offsets)
        out += data
        return out


def _len8(n):
    if n > 0x7F:
        return bytes([0x80 | (n >> 8), n & 0xFF])
    return bytes([n])


def _len16(n):
    if n > 0x7FFF:
        return struct.pack("<HH", 0x8000 | (n >> 16), n & 0xFFFF)
    return struct.pack("<H", n)


def _split(tag):
    if tag.startswith("{"):
        uri, local = tag[1:].split("}", 1)
        return uri, local
    return None, tag


def _typed_value(local, value, pool):
    if local in INT_ATTRS and value.lstrip("-").isdigit():
        return NO_INDEX, TYPE_INT_DEC, int(value) & 0xFFFFFFFF
    if local in BOOL_ATTRS and value in ("true", "false"):
        return NO_INDEX, TYPE_INT_BOOLEAN, 0xFFFFFFFF if value == "true" else 0
    idx = pool.add(value)
    return idx, TYPE_STRING, idx


def assemble(xml_text, utf8=False):
    namespaces = []
    events = []
    import io
    for event, item in ET.iterparse(io.StringIO(xml_text), events=("start-ns", "start", "end")):
        if event == "start-ns":
            namespaces.append(item)
        else:
            events.append((event, item))

    pool = StringPool()
    # Attribute names with resource ids go first, as aapt does.
    attr_names = []
    for event, el in events:
        if event != "start":
            continue
        for key in el.attrib:
            uri, local = _split(key)
            if local in ANDROID_ATTR_IDS and local not in attr_names:
                attr_names.append(local)
    for name in attr_names:
        pool.add(name)
    for prefix, uri in namespaces:
        pool.add(prefix)
        pool.add(uri)

    body = bytearray()
    for prefix, uri in namespaces:
        body += struct.pack("<HHIIIII", RES_XML_START_NAMESPACE_TYPE, 16, 24, 1,
                            NO_INDEX, pool.add(prefix), pool.add(uri))
    line = 2
    for event, el in events:
        uri, local = _split(el.tag)
        ns_idx = pool.add(uri) if uri else NO_INDEX
        name_idx = pool.add(local)
        if event == "start":
            attrs = []
            for key, value in el.attrib.items():
                auri, alocal = _split(key)
                ans = pool.add(auri) if auri else NO_INDEX
                aname = pool.add(alocal)
                raw, dtype, data = _typed_value(alocal, value, pool)
                attrs.append(struct.pack("<IIIHBBI", ans, aname, raw, 8, 0, dtype, data))
            ext = struct.pack("<IIHHHHHH", ns_idx, name_idx, 20, 20, len(attrs), 0, 0, 0)
            size = 16 + len(ext) + 20 * len(attrs)
            body += struct.pack("<HHIII", RES_XML_START_ELEMENT_TYPE, 16, size, line, NO_INDEX)
            body += ext + b"".join(attrs)
        else:
            body += struct.pack("<HHIIIII", RES_XML_END_ELEMENT_TYPE, 16, 24, line,
                                NO_INDEX, ns_idx, name_idx)
        line += 1
    for prefix, uri in reversed(namespaces):
        body += struct.pack("<HHIIIII", RES_XML_END_NAMESPACE_TYPE, 16, 24, line,
                            NO_INDEX, pool.add(prefix), pool.add(uri))

    resmap = struct.pack("<HHI", RES_XML_RESOURCE_MAP_TYPE, 8, 8 + 4 * len(attr_names))
    resmap += b"".join(struct.pack("<I", ANDROID_ATTR_IDS[n]) for n in attr_names)

    pool_bytes = pool.encode(utf8)
    total = 8 + len(pool_bytes) + len(resmap) + len(body)
    return struct.pack("<HHI", RES_XML_TYPE, 8, total) + pool_bytes + resmap + bytes(body)


if __name__ == "__main__":
    src, dst = sys.argv[1], sys.argv[2]
    utf8 = len(sys.argv) > 3 and sys.argv[3] == "--utf8"
    with open(src, encoding="utf-8") as f:
        data = assemble(f.read(), utf8)
    with open(dst, "wb") as f:
        f.write(data)
