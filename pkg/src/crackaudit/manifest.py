"""Manifest ingestion: APK containers, binary XML, and plain-text XML.

All three entry points produce the same :class:`ManifestDocument`:
the package name and the ordered, de-duplicated list of permission
names declared through ``uses-permission`` (and the sdk-23 variant).
Other manifest elements never contribute to scoring.
"""

from __future__ import annotations

import enum
import io
import zipfile
import zlib
from dataclasses import dataclass
from xml.etree import ElementTree

from . import axml
from .errors import (
    DecompressFailed,
    ManifestMissing,
    NotAnArchive,
    RootElementNotManifest,
    XmlSyntaxError,
)
from .permissions import PermissionCatalog, PermissionVector, vector_from_names

MANIFEST_ENTRY = "AndroidManifest.xml"


class SourceKind(enum.Enum):
    APK_CONTAINER = "apk"
    BINARY_XML = "axml"
    TEXT_XML = "xml"


@dataclass(frozen=True)
class ManifestDocument:
    """Extracted manifest fields, independent of the input encoding."""

    package_name: str
    uses_permissions: tuple[str, ...]
    source_kind: SourceKind

    def to_json(self) -> dict:
        return {
            "package": self.package_name,
            "permissions": list(self.uses_permissions),
            "source": self.source_kind.value,
        }


@dataclass(frozen=True)
class ApkEntrySummary:
    """Container bookkeeping for one archive entry."""

    path: str
    compressed: bool
    uncompressed_size: int
    checksum: int


def _dedup(names) -> tuple[str, ...]:
    # Request flags are binary, so repeated declarations collapse to the first.
    return tuple(dict.fromkeys(names))


def parse_axml(data: bytes) -> ManifestDocument:
    """Parse a standalone binary AndroidManifest.xml."""
    raw = axml.read_manifest(data)
    return ManifestDocument(
        package_name=raw.package,
        uses_permissions=_dedup(raw.permissions),
        source_kind=SourceKind.BINARY_XML,
    )


_NAME_ATTR = f"{{{axml.ANDROID_NS}}}name"


def parse_textual_manifest(text: str) -> ManifestDocument:
    """Parse a plain-text XML manifest with the same extraction rules."""
    try:
        root = ElementTree.fromstring(text)
    except ElementTree.ParseError as exc:
        raise XmlSyntaxError(str(exc)) from None
    if root.tag != "manifest":
        raise RootElementNotManifest(f"root element is <{root.tag}>, expected <manifest>")
    permissions = []
    for element in root.iter():
        if element.tag in axml.PERMISSION_ELEMENTS:
            value = element.get(_NAME_ATTR)
            if value is None:
                value = element.get("android:name")
            if value is not None:
                permissions.append(value)
    return ManifestDocument(
        package_name=root.get("package", ""),
        uses_permissions=_dedup(permissions),
        source_kind=SourceKind.TEXT_XML,
    )


def _open_zip(data: bytes) -> zipfile.ZipFile:
    try:
        archive = zipfile.ZipFile(io.BytesIO(data))
    except (zipfile.BadZipFile, ValueError, OSError) as exc:
        raise NotAnArchive(f"not a readable ZIP archive: {exc}") from None
    return archive


def open_apk(data: bytes) -> ManifestDocument:
    """Locate and parse the manifest inside an APK (ZIP) container.

    The central directory must be locatable (end record within the
    trailing 64 KiB); the manifest entry may be stored or deflated.
    Encrypted or undecompressable entries raise :class:`DecompressFailed`.
    """
    with _open_zip(data) as archive:
        try:
            info = archive.getinfo(MANIFEST_ENTRY)
        except KeyError:
            raise ManifestMissing(f"archive has no {MANIFEST_ENTRY} entry") from None
        if info.flag_bits & 0x1:
            raise DecompressFailed(f"{MANIFEST_ENTRY} is encrypted")
        try:
            payload = archive.read(info)
        except (zipfile.BadZipFile, zlib.error, RuntimeError, NotImplementedError, OSError) as exc:
            raise DecompressFailed(f"could not read {MANIFEST_ENTRY}: {exc}") from None
    document = parse_axml(payload)
    return ManifestDocument(
        package_name=document.package_name,
        uses_permissions=document.uses_permissions,
        source_kind=SourceKind.APK_CONTAINER,
    )


def list_entries(data: bytes) -> list[ApkEntrySummary]:
    """Summarize the entries of an APK container without extracting them."""
    with _open_zip(data) as archive:
        return [
            ApkEntrySummary(
                path=info.filename,
                compressed=info.compress_type != zipfile.ZIP_STORED,
                uncompressed_size=info.file_size,
                checksum=info.CRC,
            )
            for info in archive.infolist()
        ]


def extract_permissions(
    document: ManifestDocument, catalog: PermissionCatalog | None = None
) -> PermissionVector:
    """Turn a manifest document into a request vector over the catalog."""
    return vector_from_names(document.uses_permissions, catalog)


def read_any(data: bytes) -> ManifestDocument:
    """Parse manifest bytes of any supported encoding, sniffed by magic.

    ``PK`` means an APK container, a leading 0x0003 chunk means binary
    XML, anything else is treated as textual XML.
    """
    if data[:2] == b"PK":
        return open_apk(data)
    if len(data) >= 2 and data[0] == 0x03 and data[1] == 0x00:
        return parse_axml(data)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise XmlSyntaxError(f"input is neither an archive, binary XML, nor UTF-8: {exc}") from None
    return parse_textual_manifest(text)
