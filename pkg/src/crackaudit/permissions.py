"""Tracked-permission catalog, scoring groups, group weights, request vectors.

The catalog is a fixed table of 16 permissions split into three scoring
groups: group 1 holds the permissions most strongly linked to malicious
behavior, group 2 the external-storage/contacts read set, and group 3 the
permissions commonly requested by benign and malicious apps alike. A
request vector records, per catalog slot, whether a build declares that
permission; everything a manifest declares beyond the catalog is kept as
``untracked`` and never scored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import CatalogError, ConfigError, InvalidWeights

GROUP_COUNT = 3

#: Relative tolerance accepted for a configured weight triple before the
#: triple is renormalized to an exact sum of one.
WEIGHT_SUM_TOLERANCE = Fraction(1, 10**9)


class Protection(enum.Enum):
    """Platform protection level of a permission."""

    NORMAL = "normal"
    DANGEROUS = "dangerous"
    SPECIAL = "special"


@dataclass(frozen=True)
class PermissionEntry:
    """One catalog slot: 1-based index, qualified name, protection, group."""

    index: int
    name: str
    protection: Protection
    group: int


@dataclass(frozen=True)
class PermissionCatalog:
    """Ordered, immutable permission catalog partitioned into three groups."""

    entries: tuple[PermissionEntry, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise CatalogError("catalog has no entries")
        indices = [e.index for e in self.entries]
        if indices != list(range(1, len(self.entries) + 1)):
            raise CatalogError("catalog indices must be contiguous from 1")
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise CatalogError("catalog contains duplicate permission names")
        for entry in self.entries:
            if entry.group not in range(1, GROUP_COUNT + 1):
                raise CatalogError(
                    f"entry {entry.index} has group {entry.group}, expected 1..{GROUP_COUNT}"
                )

    @property
    def size(self) -> int:
        return len(self.entries)

    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)

    def entry(self, index: int) -> PermissionEntry:
        """Entry for a 1-based catalog index."""
        return self.entries[index - 1]

    def group_members(self, group: int) -> tuple[int, ...]:
        """1-based indices belonging to a scoring group."""
        return tuple(e.index for e in self.entries if e.group == group)


_TABLE = (
    # index, name suffix, protection, group
    (1, "INTERNET", Protection.NORMAL, 1),
    (2, "ACCESS_COARSE_LOCATION", Protection.DANGEROUS, 3),
    (3, "ACCESS_FINE_LOCATION", Protection.DANGEROUS, 3),
    (4, "CAMERA", Protection.DANGEROUS, 3),
    (5, "BLUETOOTH", Protection.NORMAL, 3),
    (6, "READ_EXTERNAL_STORAGE", Protection.DANGEROUS, 2),
    (7, "READ_CONTACTS", Protection.DANGEROUS, 2),
    (8, "WRITE_EXTERNAL_STORAGE", Protection.DANGEROUS, 2),
    (9, "MEDIA_CONTENT_CONTROL", Protection.SPECIAL, 3),
    (10, "READ_SMS", Protection.DANGEROUS, 1),
    (11, "RECEIVE_SMS", Protection.DANGEROUS, 1),
    (12, "SEND_SMS", Protection.DANGEROUS, 1),
    (13, "WRITE_CONTACTS", Protection.DANGEROUS, 1),
    (14, "CALL_PHONE", Protection.DANGEROUS, 1),
    (15, "RECORD_AUDIO", Protection.DANGEROUS, 1),
    (16, "VIBRATE", Protection.NORMAL, 1),
)

_BUILTIN = PermissionCatalog(
    entries=tuple(
        PermissionEntry(index, f"android.permission.{suffix}", protection, group)
        for index, suffix, protection, group in _TABLE
    )
)


def builtin_catalog() -> PermissionCatalog:
    """The fixed 16-entry catalog used for scoring."""
    return _BUILTIN


def _as_fraction(value: float | int | str | Fraction) -> Fraction:
    # str(float) keeps the decimal literal the caller wrote ("0.6" stays 3/5).
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class GroupWeights:
    """Per-group weights, stored exactly and normalized to sum to one."""

    values: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.values) != GROUP_COUNT:
            raise InvalidWeights(f"expected {GROUP_COUNT} weights, got {len(self.values)}")
        if any(w < 0 for w in self.values):
            raise InvalidWeights("weights must be non-negative")
        total = sum(self.values)
        if total == 0 or abs(total - 1) > WEIGHT_SUM_TOLERANCE:
            raise InvalidWeights(f"weights must sum to 1, got {float(total)}")
        if total != 1:
            object.__setattr__(self, "values", tuple(w / total for w in self.values))

    @classmethod
    def default(cls) -> "GroupWeights":
        return cls((Fraction(6, 10), Fraction(3, 10), Fraction(1, 10)))

    @classmethod
    def of(cls, w1, w2, w3) -> "GroupWeights":
        return cls((_as_fraction(w1), _as_fraction(w2), _as_fraction(w3)))

    @classmethod
    def parse(cls, text: str) -> "GroupWeights":
        """Parse ``w1,w2,w3`` (commas or whitespace) into weights."""
        parts = [p for p in text.replace(",", " ").split() if p]
        if len(parts) != GROUP_COUNT:
            raise InvalidWeights(f"expected {GROUP_COUNT} comma-separated weights: {text!r}")
        try:
            fractions = tuple(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidWeights(f"bad weight value in {text!r}: {exc}") from None
        return cls(fractions)  # type: ignore[arg-type]

    def weight(self, group: int) -> Fraction:
        return self.values[group - 1]

    def as_floats(self) -> tuple[float, float, float]:
        return tuple(float(w) for w in self.values)  # type: ignore[return-value]


@dataclass(frozen=True)
class PermissionVector:
    """Binary request flags in catalog order plus unscored extra names."""

    bits: tuple[int, ...]
    untracked: tuple[str, ...] = ()
    catalog: PermissionCatalog = field(default=_BUILTIN, repr=False)

    def __post_init__(self) -> None:
        if len(self.bits) != self.catalog.size:
            raise CatalogError(
                f"vector has {len(self.bits)} bits, catalog has {self.catalog.size} entries"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise CatalogError("vector bits must be 0 or 1")

    def popcount(self) -> int:
        """Number of tracked permissions requested."""
        return sum(self.bits)

    def requested_indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(self.bits) if b)

    def requested_names(self) -> tuple[str, ...]:
        return tuple(self.catalog.entries[i - 1].name for i in self.requested_indices())


def vector_from_names(
    names: Iterable[str], catalog: PermissionCatalog | None = None
) -> PermissionVector:
    """Build a request vector from declared permission names.

    Bit ``j`` is set iff the catalog's j-th name appears in ``names``;
    any other name lands in ``untracked`` (sorted, deduplicated) and has
    no effect on scoring.
    """
    catalog = catalog or _BUILTIN
    requested = set(names)
    tracked = set(catalog.names())
    bits = tuple(1 if name in requested else 0 for name in catalog.names())
    untracked = tuple(sorted(requested - tracked))
    return PermissionVector(bits=bits, untracked=untracked, catalog=catalog)


def vector_from_indices(
    indices: Iterable[int], catalog: PermissionCatalog | None = None
) -> PermissionVector:
    """Build a vector from 1-based catalog indices (fixture convenience)."""
    catalog = catalog or _BUILTIN
    wanted = set(indices)
    unknown = wanted - set(range(1, catalog.size + 1))
    if unknown:
        raise CatalogError(f"indices outside catalog: {sorted(unknown)}")
    bits = tuple(1 if i in wanted else 0 for i in range(1, catalog.size + 1))
    return PermissionVector(bits=bits, untracked=(), catalog=catalog)


def _parse_protection(text: str, line_no: int) -> Protection:
    try:
        return Protection(text.strip().lower())
    except ValueError:
        raise ConfigError(f"line {line_no}: unknown protection level {text.strip()!r}") from None


def load_override_file(path: str | Path) -> tuple[PermissionCatalog | None, GroupWeights | None]:
    """Read a catalog/weights override file.

    The format is flat ``key = value`` lines (``#`` comments allowed):

    ``weights = 0.6, 0.3, 0.1``
        replacement weight triple

    ``permission.<index> = <name>, <protection>, <group>``
        one catalog entry; if any are present they must form a complete
        catalog with contiguous indices starting at 1

    Returns ``(catalog, weights)`` where either element may be ``None``
    when the file does not override it.
    """
    text = Path(path).read_text(encoding="utf-8")
    weights: GroupWeights | None = None
    rows: dict[int, PermissionEntry] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "weights":
            try:
                weights = GroupWeights.parse(value)
            except InvalidWeights as exc:
                raise ConfigError(f"line {line_no}: {exc}") from None
        elif key.startswith("permission."):
            try:
                index = int(key.split(".", 1)[1])
            except ValueError:
                raise ConfigError(f"line {line_no}: bad permission index in {key!r}") from None
            parts = [p.strip() for p in value.split(",")]
            if len(parts) != 3:
                raise ConfigError(
                    f"line {line_no}: expected '<name>, <protection>, <group>', got {value!r}"
                )
            name, protection_text, group_text = parts
            try:
                group = int(group_text)
            except ValueError:
                raise ConfigError(f"line {line_no}: bad group {group_text!r}") from None
            if index in rows:
                raise ConfigError(f"line {line_no}: duplicate permission index {index}")
            rows[index] = PermissionEntry(
                index=index,
                name=name,
                protection=_parse_protection(protection_text, line_no),
                group=group,
            )
        else:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")

    catalog: PermissionCatalog | None = None
    if rows:
        try:
            catalog = PermissionCatalog(
                entries=tuple(rows[i] for i in sorted(rows))
            )
        except (KeyError, CatalogError) as exc:
            raise ConfigError(f"override catalog invalid: {exc}") from None
    return catalog, weights
