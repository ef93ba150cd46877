"""Typed error hierarchy.

Every parser and aggregation step raises a subclass of :class:`CrackAuditError`;
callers (and the CLI) can rely on never seeing a bare ``struct.error`` or
``KeyError`` escape from this package.
"""

from __future__ import annotations


class CrackAuditError(Exception):
    """Base class for all errors raised by this package."""


# --- permission model ---------------------------------------------------


class InvalidWeights(CrackAuditError):
    """Group weights are negative or do not sum to one."""


class InvalidThresholds(CrackAuditError):
    """Class boundaries are out of order or outside [-1, 1]."""


class CatalogError(CrackAuditError):
    """A permission catalog (builtin or config-supplied) is malformed."""


class CatalogMismatch(CrackAuditError):
    """Two permission vectors were built against different catalogs."""


class ConfigError(CrackAuditError):
    """A catalog/weights override file could not be parsed."""


# --- manifest ingestion --------------------------------------------------


class NotAnArchive(CrackAuditError):
    """Input is not a readable ZIP archive."""


class ManifestMissing(CrackAuditError):
    """The archive has no AndroidManifest.xml entry."""


class DecompressFailed(CrackAuditError):
    """An archive entry could not be decompressed (or is encrypted)."""


class BadMagic(CrackAuditError):
    """Input does not start with the binary-XML header chunk."""


class TruncatedChunk(CrackAuditError):
    """A binary-XML chunk declares more bytes than the input holds."""


class StringIndexOutOfRange(CrackAuditError):
    """A string-pool reference points outside the pool."""


class Utf16DecodeError(CrackAuditError):
    """A UTF-16 string in the pool could not be decoded."""


class XmlSyntaxError(CrackAuditError):
    """A textual manifest is not well-formed XML."""


class RootElementNotManifest(CrackAuditError):
    """A textual document's root element is not <manifest>."""


# --- capture analysis ----------------------------------------------------


class BadCaptureMagic(CrackAuditError):
    """Input does not start with a classic capture-file magic number."""


class UnsupportedLinkType(CrackAuditError):
    """The capture's link-layer type is neither Ethernet nor raw IP."""


class TruncatedCapture(CrackAuditError):
    """The capture ends in the middle of a record."""


# --- telemetry ingestion --------------------------------------------------


class MissingHeader(CrackAuditError):
    """The telemetry CSV does not start with the expected header row."""


class RowError(CrackAuditError):
    """A telemetry CSV row failed to parse; carries its 1-based line number."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NoSamples(CrackAuditError):
    """Aggregation was asked to summarize an empty sample list."""


class DuplicateVersionTag(CrackAuditError):
    """Two usage summaries carry the same OS version tag."""


class EmptyInput(CrackAuditError):
    """An operation requiring at least one element received none."""


# --- profiles and reporting -----------------------------------------------


class AppIdMismatch(CrackAuditError):
    """Paired profiles do not belong to the same application identity."""


class SameBuildKind(CrackAuditError):
    """Both profiles of a pair carry the same build tag."""


class EmptyCorpus(CrackAuditError):
    """A corpus summary was requested for zero pairs."""


class NoData(CrackAuditError):
    """A chart was requested with no values to draw."""
