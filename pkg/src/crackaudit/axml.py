"""Parser for the Android binary XML encoding of AndroidManifest.xml.

The format is a sequence of little-endian chunks, each headed by
``uint16 type, uint16 header_size, uint32 size``. A manifest file is one
envelope chunk (type 0x0003) whose first child is the string pool
(0x0001), optionally followed by a resource map (0x0180), namespace
chunks (0x0100/0x0101) and element chunks (0x0102 start, 0x0103 end).
Strings live only in the pool (UTF-8 or UTF-16, flag bit 8 of the pool
header); elements and attributes hold pool indices.

The walker is total over arbitrary bytes: every input yields a document
or one of the typed errors, and the chunk offset strictly increases, so
parsing always terminates.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import BadMagic, StringIndexOutOfRange, TruncatedChunk, Utf16DecodeError

CHUNK_XML = 0x0003
CHUNK_STRING_POOL = 0x0001
CHUNK_RESOURCE_MAP = 0x0180
CHUNK_START_NAMESPACE = 0x0100
CHUNK_END_NAMESPACE = 0x0101
CHUNK_START_ELEMENT = 0x0102
CHUNK_END_ELEMENT = 0x0103
CHUNK_CDATA = 0x0104

UTF8_POOL_FLAG = 1 << 8
NO_ENTRY = 0xFFFFFFFF
VALUE_TYPE_STRING = 0x03

ANDROID_NS = "http://schemas.android.com/apk/res/android"

#: Resource ids of attributes whose pool name string is sometimes blanked
#: by repackaging tools; the resource map restores the name.
_KNOWN_ATTR_IDS = {0x01010003: "name"}

PERMISSION_ELEMENTS = ("uses-permission", "uses-permission-sdk-23")


@dataclass(frozen=True)
class RawManifest:
    """Package name and uses-permission values in document order."""

    package: str
    permissions: tuple[str, ...]


def _u16(data: bytes, pos: int) -> int:
    if pos + 2 > len(data):
        raise TruncatedChunk(f"need 2 bytes at offset {pos}, have {len(data) - pos}")
    return struct.unpack_from("<H", data, pos)[0]


def _u32(data: bytes, pos: int) -> int:
    if pos + 4 > len(data):
        raise TruncatedChunk(f"need 4 bytes at offset {pos}, have {len(data) - pos}")
    return struct.unpack_from("<I", data, pos)[0]


@dataclass(frozen=True)
class _Chunk:
    type: int
    header_size: int
    size: int
    start: int

    @property
    def body(self) -> int:
        return self.start + self.header_size

    @property
    def end(self) -> int:
        return self.start + self.size


def _read_chunk(data: bytes, pos: int, limit: int) -> _Chunk:
    if pos + 8 > limit:
        raise TruncatedChunk(f"chunk header at {pos} runs past byte {limit}")
    ctype = _u16(data, pos)
    header_size = _u16(data, pos + 2)
    size = _u32(data, pos + 4)
    if header_size < 8 or size < header_size:
        raise TruncatedChunk(
            f"chunk at {pos}: header_size={header_size}, size={size} are inconsistent"
        )
    if pos + size > limit:
        raise TruncatedChunk(f"chunk at {pos} declares {size} bytes, only {limit - pos} left")
    return _Chunk(type=ctype, header_size=header_size, size=size, start=pos)


class _StringPool:
    """Lazy string-pool reader with bounds checks on every access."""

    def __init__(self, data: bytes, chunk: _Chunk):
        self._data = data
        if chunk.header_size < 28:
            raise TruncatedChunk(f"string pool header is {chunk.header_size} bytes, need 28")
        self.count = _u32(data, chunk.start + 8)
        style_count = _u32(data, chunk.start + 12)
        flags = _u32(data, chunk.start + 16)
        strings_start = _u32(data, chunk.start + 20)
        styles_start = _u32(data, chunk.start + 24)
        self.utf8 = bool(flags & UTF8_POOL_FLAG)
        self._offsets_pos = chunk.start + chunk.header_size
        if self._offsets_pos + 4 * (self.count + style_count) > chunk.end:
            raise TruncatedChunk("string pool offset table runs past the chunk")
        if strings_start > chunk.size:
            raise TruncatedChunk("string data offset runs past the chunk")
        self._strings_pos = chunk.start + strings_start
        data_end = chunk.end
        if style_count and 0 < styles_start <= chunk.size:
            data_end = chunk.start + styles_start
        self._strings_end = data_end
        self._cache: dict[int, str] = {}

    def get(self, index: int) -> str:
        if index >= self.count:
            raise StringIndexOutOfRange(f"string index {index} >= pool size {self.count}")
        if index in self._cache:
            return self._cache[index]
        offset = _u32(self._data, self._offsets_pos + 4 * index)
        pos = self._strings_pos + offset
        if pos >= self._strings_end:
            raise StringIndexOutOfRange(f"string {index} offset {offset} outside pool data")
        text = self._decode_utf8(pos) if self.utf8 else self._decode_utf16(pos)
        self._cache[index] = text
        return text

    def _varlen(self, pos: int, wide: bool) -> tuple[int, int]:
        # Length prefix: one unit, or two when the first unit's high bit is set.
        if pos + (2 if wide else 1) > self._strings_end:
            raise StringIndexOutOfRange("string length prefix runs past the pool")
        if wide:
            first = _u16(self._data, pos)
            if first & 0x8000:
                return ((first & 0x7FFF) << 16) | _u16(self._data, pos + 2), pos + 4
            return first, pos + 2
        first = self._data[pos]
        if first & 0x80:
            if pos + 2 > self._strings_end:
                raise StringIndexOutOfRange("string length prefix runs past the pool")
            return ((first & 0x7F) << 8) | self._data[pos + 1], pos + 2
        return first, pos + 1

    def _decode_utf8(self, pos: int) -> str:
        # UTF-8 entries carry two lengths: decoded chars, then encoded bytes.
        _, pos = self._varlen(pos, wide=False)
        byte_len, pos = self._varlen(pos, wide=False)
        end = pos + byte_len
        if end > self._strings_end:
            raise StringIndexOutOfRange("UTF-8 string runs past the pool")
        return self._data[pos:end].decode("utf-8", errors="replace")

    def _decode_utf16(self, pos: int) -> str:
        length, pos = self._varlen(pos, wide=True)
        end = pos + 2 * length
        if end > self._strings_end:
            raise StringIndexOutOfRange("UTF-16 string runs past the pool")
        try:
            return self._data[pos:end].decode("utf-16-le")
        except UnicodeDecodeError as exc:
            raise Utf16DecodeError(f"bad UTF-16 data at offset {pos}: {exc}") from None


def _attr_name(pool: _StringPool, resource_map: list[int], name_ref: int) -> str:
    name = pool.get(name_ref)
    if not name and name_ref < len(resource_map):
        name = _KNOWN_ATTR_IDS.get(resource_map[name_ref], "")
    return name


def read_manifest(data: bytes) -> RawManifest:
    """Extract the package name and uses-permission values from binary XML.

    Raises :class:`BadMagic` unless the input starts with the XML envelope
    chunk followed by a string pool; other malformed structure surfaces as
    :class:`TruncatedChunk`, :class:`StringIndexOutOfRange` or
    :class:`Utf16DecodeError`.
    """
    if len(data) < 8 or _u16(data, 0) != CHUNK_XML:
        raise BadMagic("input does not start with a binary-XML header chunk")
    envelope = _read_chunk(data, 0, len(data))
    # Trailing appended bytes are ignored; the declared envelope is the document.
    limit = envelope.end

    pos = envelope.header_size
    first = _read_chunk(data, pos, limit)
    if first.type != CHUNK_STRING_POOL:
        raise BadMagic(f"expected string pool after header, found chunk 0x{first.type:04x}")
    pool = _StringPool(data, first)
    pos = first.end

    resource_map: list[int] = []
    package = ""
    package_seen = False
    permissions: list[str] = []

    while pos < limit:
        chunk = _read_chunk(data, pos, limit)
        if chunk.type == CHUNK_RESOURCE_MAP:
            resource_map = [
                _u32(data, off) for off in range(chunk.body, chunk.end - 3, 4)
            ]
        elif chunk.type == CHUNK_START_ELEMENT:
            body = chunk.body
            name_ref = _u32(data, body + 4)
            if name_ref == NO_ENTRY:
                pos = chunk.end
                continue
            element = pool.get(name_ref)
            attr_start = _u16(data, body + 8)
            attr_size = _u16(data, body + 10)
            attr_count = _u16(data, body + 12)
            if attr_size < 20:
                raise TruncatedChunk(f"attribute record size {attr_size} below minimum 20")
            attrs_pos = body + attr_start
            if attrs_pos + attr_size * attr_count > chunk.end:
                raise TruncatedChunk("attribute table runs past the element chunk")
            wants_permission = element in PERMISSION_ELEMENTS
            wants_package = element == "manifest" and not package_seen
            if wants_permission or wants_package:
                for i in range(attr_count):
                    base = attrs_pos + i * attr_size
                    ns_ref = _u32(data, base)
                    attr_ref = _u32(data, base + 4)
                    raw_ref = _u32(data, base + 8)
                    value_type = data[base + 15]
                    data_ref = _u32(data, base + 16)
                    if attr_ref == NO_ENTRY:
                        continue
                    name = _attr_name(pool, resource_map, attr_ref)
                    ns_uri = None if ns_ref == NO_ENTRY else pool.get(ns_ref)
                    value = None
                    if raw_ref != NO_ENTRY:
                        value = pool.get(raw_ref)
                    elif value_type == VALUE_TYPE_STRING and data_ref != NO_ENTRY:
                        value = pool.get(data_ref)
                    if value is None:
                        continue
                    if wants_permission and _is_android_name(ns_uri, name):
                        permissions.append(value)
                        break
                    if wants_package and ns_uri is None and name == "package":
                        package = value
                        package_seen = True
        # End elements, namespaces, CDATA and unknown chunk types are skipped.
        pos = chunk.end

    return RawManifest(package=package, permissions=tuple(permissions))


def _is_android_name(ns_uri: str | None, name: str) -> bool:
    # Well-formed manifests namespace the attribute; sloppily repackaged
    # ones sometimes drop namespaces and keep a literal "android:name".
    if ns_uri == ANDROID_NS and name == "name":
        return True
    return ns_uri is None and name == "android:name"
