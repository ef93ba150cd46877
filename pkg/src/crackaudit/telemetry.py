"""CPU/RAM usage log ingestion and per-OS-version aggregation.

Usage logs are CSV files with the header ``timestamp,cpu_percent,ram_mib``
and one row per sample. Each file is summarized to arithmetic means; the
summaries of the (up to three) OS versions an app was measured on are
folded into a min/max/mean spread per indicator.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateVersionTag, EmptyInput, MissingHeader, NoSamples, RowError

CSV_HEADER = ("timestamp", "cpu_percent", "ram_mib")


@dataclass(frozen=True)
class UsageSample:
    timestamp: float
    cpu: float
    ram: float


@dataclass(frozen=True)
class UsageSummary:
    """Mean usage of one app build on one OS version."""

    os_version: str
    cpu_mean: float
    ram_mean: float
    sample_count: int


@dataclass(frozen=True)
class SpreadStats:
    """Min/max/mean of one indicator across OS versions."""

    minimum: float
    maximum: float
    mean: float

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "SpreadStats":
        if not values:
            raise EmptyInput("no values to spread")
        return cls(minimum=min(values), maximum=max(values), mean=math.fsum(values) / len(values))


@dataclass(frozen=True)
class VersionSpread:
    """Per-indicator spread plus the version tags it covers."""

    cpu: SpreadStats
    ram: SpreadStats
    versions: tuple[str, ...]


def parse_telemetry_csv(text: str, cores: int = 1) -> list[UsageSample]:
    """Parse a usage log; bad rows raise :class:`RowError` with their line.

    ``cores`` declares how many CPU cores the sampling device exposes, so
    multi-core totals up to ``100 * cores`` percent pass validation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeader("empty input, expected header row") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise MissingHeader(f"expected header {','.join(CSV_HEADER)!r}, got {header!r}")
    cpu_limit = 100.0 * max(cores, 1)
    samples = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise RowError(line, f"expected 3 fields, got {len(row)}")
        try:
            timestamp, cpu, ram = (float(field) for field in row)
        except ValueError:
            raise RowError(line, f"non-numeric field in {row!r}") from None
        if not 0.0 <= cpu <= cpu_limit:
            raise RowError(line, f"cpu {cpu} outside [0, {cpu_limit}]")
        if ram < 0.0:
            raise RowError(line, f"ram {ram} is negative")
        samples.append(UsageSample(timestamp=timestamp, cpu=cpu, ram=ram))
    return samples


def aggregate(samples: Iterable[UsageSample], os_version: str) -> UsageSummary:
    """Arithmetic mean of the samples of one run."""
    samples = list(samples)
    if not samples:
        raise NoSamples(f"no samples to aggregate for {os_version!r}")
    n = len(samples)
    return UsageSummary(
        os_version=os_version,
        cpu_mean=math.fsum(s.cpu for s in samples) / n,
        ram_mean=math.fsum(s.ram for s in samples) / n,
        sample_count=n,
    )


def spread_across_versions(summaries: Sequence[UsageSummary]) -> VersionSpread:
    """Component-wise min/max/mean over per-version summaries.

    The mean is the unweighted mean of the version means, matching the
    one-device-per-version measurement design.
    """
    if not summaries:
        raise EmptyInput("no usage summaries")
    tags = [s.os_version for s in summaries]
    if len(set(tags)) != len(tags):
        raise DuplicateVersionTag(f"duplicate OS version tags in {tags}")
    return VersionSpread(
        cpu=SpreadStats.from_values([s.cpu_mean for s in summaries]),
        ram=SpreadStats.from_values([s.ram_mean for s in summaries]),
        versions=tuple(tags),
    )
