"""App behavior profiles and official/cracked pair assembly.

A profile bundles everything measured for one build of one app: the
permission request vector plus, when available, CPU/RAM usage spreads
and TCP/HTTP connection counts. Profiles may be partial; a pair built
from permission-only profiles still gets scored, its resource deltas
are simply reported as absent.
"""

from __future__ import annotations

import enum
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import flows as flows_mod
from . import manifest as manifest_mod
from . import telemetry as telemetry_mod
from .capture import Address, parse_capture
from .errors import AppIdMismatch, CrackAuditError, SameBuildKind
from .permissions import GroupWeights, PermissionCatalog, PermissionVector, builtin_catalog
from .scoring import ClassThresholds, PairScore, score_pair
from .telemetry import SpreadStats, UsageSummary, VersionSpread


class BuildKind(enum.Enum):
    OFFICIAL = "official"
    CRACKED = "cracked"


@dataclass(frozen=True)
class PortSpread:
    """Connection-count spread across captured OS versions."""

    t: SpreadStats
    h: SpreadStats
    versions: tuple[str, ...]


@dataclass(frozen=True)
class AppProfile:
    """All indicators collected for one build of one app."""

    app_id: str
    build: BuildKind
    package_name: str
    permissions: PermissionVector
    usage: VersionSpread | None = None
    usage_by_version: tuple[UsageSummary, ...] = ()
    ports: PortSpread | None = None
    ports_by_version: tuple[tuple[str, flows_mod.PortCounts], ...] = ()


@dataclass(frozen=True)
class IndicatorDeltas:
    """Cracked-minus-official differences; None when a side lacks data."""

    cpu: float | None
    ram: float | None
    t: float | None
    h: float | None


@dataclass(frozen=True)
class ScoredPair:
    """One app's official/cracked comparison, scored and classified."""

    app_id: str
    official: AppProfile
    cracked: AppProfile
    result: PairScore
    deltas: IndicatorDeltas


def _delta(cracked: float | None, official: float | None) -> float | None:
    if cracked is None or official is None:
        return None
    return cracked - official


def build_pair(
    official: AppProfile,
    cracked: AppProfile,
    weights: GroupWeights | None = None,
    catalog: PermissionCatalog | None = None,
    thresholds: ClassThresholds | None = None,
) -> ScoredPair:
    """Join two profiles of the same app into a scored pair."""
    if official.app_id != cracked.app_id:
        raise AppIdMismatch(f"{official.app_id!r} vs {cracked.app_id!r}")
    if official.build == cracked.build:
        raise SameBuildKind(f"both profiles are tagged {official.build.value}")
    if official.build is BuildKind.CRACKED:
        official, cracked = cracked, official
    result = score_pair(
        official.permissions,
        cracked.permissions,
        weights=weights,
        catalog=catalog or official.permissions.catalog,
        thresholds=thresholds,
    )
    deltas = IndicatorDeltas(
        cpu=_delta(
            cracked.usage.cpu.mean if cracked.usage else None,
            official.usage.cpu.mean if official.usage else None,
        ),
        ram=_delta(
            cracked.usage.ram.mean if cracked.usage else None,
            official.usage.ram.mean if official.usage else None,
        ),
        t=_delta(
            cracked.ports.t.mean if cracked.ports else None,
            official.ports.t.mean if official.ports else None,
        ),
        h=_delta(
            cracked.ports.h.mean if cracked.ports else None,
            official.ports.h.mean if official.ports else None,
        ),
    )
    return ScoredPair(
        app_id=official.app_id,
        official=official,
        cracked=cracked,
        result=result,
        deltas=deltas,
    )


# --- corpus directory loading ----------------------------------------------

MANIFEST_CANDIDATES = (
    "AndroidManifest.xml",
    "manifest.xml",
    "manifest.axml",
    "AndroidManifest.axml",
    "app.apk",
)
_TELEMETRY_RE = re.compile(r"telemetry-(?P<tag>[A-Za-z0-9_.-]+)\.csv$")
_CAPTURE_RE = re.compile(r"capture(?:-(?P<tag>[A-Za-z0-9_.-]+))?\.pcap$")


def _find_manifest(build_dir: Path) -> Path | None:
    for name in MANIFEST_CANDIDATES:
        candidate = build_dir / name
        if candidate.is_file():
            return candidate
    apks = sorted(build_dir.glob("*.apk"))
    return apks[0] if apks else None


def load_build_dir(
    build_dir: Path,
    app_id: str,
    build: BuildKind,
    catalog: PermissionCatalog | None = None,
    device: Address | None = None,
    cores: int = 1,
    count_mode: str = flows_mod.COUNT_CONNECTIONS,
    http_mode: str = flows_mod.HTTP_BY_SIGNATURE,
) -> AppProfile:
    """Assemble a profile from one ``<app>/<official|cracked>`` directory.

    Expected contents: a manifest (``AndroidManifest.xml``, ``manifest.xml``,
    ``manifest.axml`` or an APK), optional ``telemetry-<os>.csv`` usage logs
    and optional ``capture.pcap`` / ``capture-<os>.pcap`` traffic captures.
    Captures are skipped unless a device address is given.
    """
    catalog = catalog or builtin_catalog()
    manifest_path = _find_manifest(build_dir)
    if manifest_path is None:
        raise CrackAuditError(f"{build_dir}: no manifest found")
    document = manifest_mod.read_any(manifest_path.read_bytes())
    vector = manifest_mod.extract_permissions(document, catalog)

    summaries = []
    for path in sorted(build_dir.iterdir()):
        match = _TELEMETRY_RE.fullmatch(path.name)
        if not match:
            continue
        samples = telemetry_mod.parse_telemetry_csv(
            path.read_text(encoding="utf-8"), cores=cores
        )
        summaries.append(telemetry_mod.aggregate(samples, match.group("tag")))
    usage = telemetry_mod.spread_across_versions(summaries) if summaries else None

    port_rows: list[tuple[str, flows_mod.PortCounts]] = []
    if device is not None:
        for path in sorted(build_dir.iterdir()):
            match = _CAPTURE_RE.fullmatch(path.name)
            if not match:
                continue
            packets = parse_capture(path.read_bytes())
            table = flows_mod.track_flows(packets, device)
            counts = flows_mod.count_ports(table, count_mode=count_mode, http_mode=http_mode)
            port_rows.append((match.group("tag") or "default", counts))
    ports = None
    if port_rows:
        ports = PortSpread(
            t=SpreadStats.from_values([c.t for _, c in port_rows]),
            h=SpreadStats.from_values([c.h for _, c in port_rows]),
            versions=tuple(tag for tag, _ in port_rows),
        )

    return AppProfile(
        app_id=app_id,
        build=build,
        package_name=document.package_name,
        permissions=vector,
        usage=usage,
        usage_by_version=tuple(summaries),
        ports=ports,
        ports_by_version=tuple(port_rows),
    )


def load_corpus(
    root: Path,
    catalog: PermissionCatalog | None = None,
    weights: GroupWeights | None = None,
    thresholds: ClassThresholds | None = None,
    device: Address | None = None,
    cores: int = 1,
    count_mode: str = flows_mod.COUNT_CONNECTIONS,
    http_mode: str = flows_mod.HTTP_BY_SIGNATURE,
    warn=lambda message: print(f"warning: {message}", file=sys.stderr),
) -> list[ScoredPair]:
    """Walk a corpus tree and score every complete official/cracked pair.

    The layout is ``<root>/<app>/{official,cracked}/...``; the directory
    name is the pairing key. Apps missing a side are skipped with a
    warning, as are apps whose inputs fail to parse. A differing package
    name between the two builds is warned about but never fatal, since
    repackaged builds frequently rename the package.
    """
    pairs = []
    for app_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        sides = {}
        for build in BuildKind:
            build_dir = app_dir / build.value
            if not build_dir.is_dir():
                continue
            try:
                sides[build] = load_build_dir(
                    build_dir,
                    app_id=app_dir.name,
                    build=build,
                    catalog=catalog,
                    device=device,
                    cores=cores,
                    count_mode=count_mode,
                    http_mode=http_mode,
                )
            except CrackAuditError as exc:
                warn(f"{build_dir}: {exc}")
        if len(sides) != 2:
            missing = [b.value for b in BuildKind if b not in sides]
            warn(f"{app_dir.name}: skipped, missing {' and '.join(missing)} build")
            continue
        official = sides[BuildKind.OFFICIAL]
        cracked = sides[BuildKind.CRACKED]
        if (
            official.package_name
            and cracked.package_name
            and official.package_name != cracked.package_name
        ):
            warn(
                f"{app_dir.name}: package names differ "
                f"({official.package_name!r} vs {cracked.package_name!r})"
            )
        pairs.append(
            build_pair(official, cracked, weights=weights, catalog=catalog, thresholds=thresholds)
        )
    return pairs
