"""Corpus statistics, per-class overhead table, and report rendering.

Rendering is deterministic: equal inputs produce byte-identical output.
Percent and MiB values are shown with two decimals, scores with one,
always rounded half-to-even.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Mapping, Sequence

from .errors import EmptyCorpus
from .profiles import ScoredPair
from .scoring import FLAGGED_CLASSES, ClassThresholds, IntentionClass
from .permissions import GroupWeights

REPORT_VERSION = 1
REPORT_FORMATS = ("json", "csv", "markdown")


def round_even(value: float | None, places: int) -> float | None:
    """Round half-to-even at a fixed number of decimal places."""
    if value is None:
        return None
    quantum = Decimal(1).scaleb(-places)
    rounded = float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_EVEN))
    return rounded + 0.0  # normalizes -0.0


def _mean(values: Sequence[float]) -> float | None:
    return math.fsum(values) / len(values) if values else None


@dataclass(frozen=True)
class OverheadRow:
    """Mean cracked-minus-official deltas for one class."""

    pair_count: int
    cpu: float | None
    ram: float | None
    t: float | None
    h: float | None


@dataclass(frozen=True)
class OverheadTable:
    """Per-class overhead rows; classes without pairs are simply absent."""

    rows: Mapping[IntentionClass, OverheadRow]


def overhead_table(pairs: Sequence[ScoredPair]) -> OverheadTable:
    """Group pairs by class and average each indicator delta.

    Positive values mean the cracked build uses more of the resource.
    Deltas missing on a pair are left out of that mean; a class where no
    pair has a given indicator gets ``None`` for it.
    """
    rows = {}
    for cls in IntentionClass:
        members = [p for p in pairs if p.result.intent_class is cls]
        if not members:
            continue
        rows[cls] = OverheadRow(
            pair_count=len(members),
            cpu=_mean([p.deltas.cpu for p in members if p.deltas.cpu is not None]),
            ram=_mean([p.deltas.ram for p in members if p.deltas.ram is not None]),
            t=_mean([p.deltas.t for p in members if p.deltas.t is not None]),
            h=_mean([p.deltas.h for p in members if p.deltas.h is not None]),
        )
    return OverheadTable(rows=rows)


@dataclass(frozen=True)
class SideMeans:
    """Official/cracked means of one indicator, under both averaging bases.

    ``per_app`` averages one value per app (the mean across that app's OS
    versions); ``per_cell`` averages every app-and-version measurement
    with equal weight. The two coincide when every app was measured on
    the same number of versions.
    """

    official_per_app: float | None
    cracked_per_app: float | None
    official_per_cell: float | None
    cracked_per_cell: float | None

    def present(self) -> bool:
        return self.official_per_app is not None or self.cracked_per_app is not None

    def to_json(self) -> dict:
        return {
            "official": {"per_app": self.official_per_app, "per_cell": self.official_per_cell},
            "cracked": {"per_app": self.cracked_per_app, "per_cell": self.cracked_per_cell},
        }


@dataclass(frozen=True)
class CorpusSummary:
    pair_count: int
    permissions_official_mean: float
    permissions_cracked_mean: float
    cpu: SideMeans
    ram: SideMeans
    tcp: SideMeans
    http: SideMeans
    class_histogram: Mapping[IntentionClass, int]
    flagged_fraction: float


def _usage_means(pairs, pick_spread, pick_cells) -> SideMeans:
    def collect(profiles):
        per_app = [pick_spread(p) for p in profiles]
        per_app = [v for v in per_app if v is not None]
        cells = [value for p in profiles for value in pick_cells(p)]
        return _mean(per_app), _mean(cells)

    official_app, official_cell = collect([p.official for p in pairs])
    cracked_app, cracked_cell = collect([p.cracked for p in pairs])
    return SideMeans(
        official_per_app=official_app,
        cracked_per_app=cracked_app,
        official_per_cell=official_cell,
        cracked_per_cell=cracked_cell,
    )


def corpus_summary(pairs: Sequence[ScoredPair]) -> CorpusSummary:
    """Corpus-wide means, class histogram, and flagged fraction."""
    if not pairs:
        raise EmptyCorpus("cannot summarize zero pairs")
    histogram = {
        cls: sum(1 for p in pairs if p.result.intent_class is cls) for cls in IntentionClass
    }
    flagged = sum(histogram[cls] for cls in FLAGGED_CLASSES)
    return CorpusSummary(
        pair_count=len(pairs),
        permissions_official_mean=sum(p.official.permissions.popcount() for p in pairs)
        / len(pairs),
        permissions_cracked_mean=sum(p.cracked.permissions.popcount() for p in pairs)
        / len(pairs),
        cpu=_usage_means(
            pairs,
            lambda p: p.usage.cpu.mean if p.usage else None,
            lambda p: [s.cpu_mean for s in p.usage_by_version],
        ),
        ram=_usage_means(
            pairs,
            lambda p: p.usage.ram.mean if p.usage else None,
            lambda p: [s.ram_mean for s in p.usage_by_version],
        ),
        tcp=_usage_means(
            pairs,
            lambda p: p.ports.t.mean if p.ports else None,
            lambda p: [c.t for _, c in p.ports_by_version],
        ),
        http=_usage_means(
            pairs,
            lambda p: p.ports.h.mean if p.ports else None,
            lambda p: [c.h for _, c in p.ports_by_version],
        ),
        class_histogram=histogram,
        flagged_fraction=flagged / len(pairs),
    )


@dataclass(frozen=True)
class LabelComparison:
    """Computed classes checked against caller-supplied reference labels."""

    matches: tuple[str, ...]
    mismatches: tuple[tuple[str, str, str], ...]  # (app, computed, reference)
    unknown_apps: tuple[str, ...]  # reference labels with no corpus pair

    def to_json(self) -> dict:
        return {
            "matches": list(self.matches),
            "mismatches": [
                {"app": app, "computed": computed, "reference": reference}
                for app, computed, reference in self.mismatches
            ],
            "unknown_apps": list(self.unknown_apps),
        }


def compare_labels(pairs: Sequence[ScoredPair], reference: Mapping[str, str]) -> LabelComparison:
    """Flag every pair whose computed class differs from its reference label."""
    matches = []
    mismatches = []
    seen = set()
    for pair in pairs:
        expected = reference.get(pair.app_id)
        if expected is None:
            continue
        seen.add(pair.app_id)
        computed = pair.result.intent_class.value
        if computed == expected:
            matches.append(pair.app_id)
        else:
            mismatches.append((pair.app_id, computed, expected))
    unknown = tuple(sorted(set(reference) - seen))
    return LabelComparison(
        matches=tuple(matches), mismatches=tuple(mismatches), unknown_apps=unknown
    )


@dataclass(frozen=True)
class ReportConfig:
    """Scoring configuration echoed into every report."""

    weights: GroupWeights
    thresholds: ClassThresholds
    count_mode: str
    http_mode: str

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights.as_floats()),
            "thresholds": list(self.thresholds.as_floats()),
            "count_mode": self.count_mode,
            "http_mode": self.http_mode,
        }


def _pair_json(pair: ScoredPair) -> dict:
    body = {"app": pair.app_id}
    body.update(pair.result.to_json())
    body["score"] = round_even(body["score"], 1)
    body["packages"] = {
        "official": pair.official.package_name,
        "cracked": pair.cracked.package_name,
    }
    body["indicator_deltas"] = {
        "cpu_percent": round_even(pair.deltas.cpu, 2),
        "ram_mib": round_even(pair.deltas.ram, 2),
        "tcp_ports": round_even(pair.deltas.t, 2),
        "http_ports": round_even(pair.deltas.h, 2),
    }
    return body


def _side_means_json(means: SideMeans) -> dict | None:
    if not means.present():
        return None
    rounded = means.to_json()
    for side in rounded.values():
        for key in side:
            side[key] = round_even(side[key], 2)
    return rounded


def _summary_json(summary: CorpusSummary) -> dict:
    return {
        "pair_count": summary.pair_count,
        "permissions": {
            "official_mean": round_even(summary.permissions_official_mean, 2),
            "cracked_mean": round_even(summary.permissions_cracked_mean, 2),
        },
        "cpu_percent": _side_means_json(summary.cpu),
        "ram_mib": _side_means_json(summary.ram),
        "tcp_ports": _side_means_json(summary.tcp),
        "http_ports": _side_means_json(summary.http),
        "classes": {cls.value: summary.class_histogram[cls] for cls in IntentionClass},
        "flagged_fraction": round_even(summary.flagged_fraction, 4),
    }


def _overheads_json(table: OverheadTable) -> dict:
    return {
        cls.value: {
            "pairs": row.pair_count,
            "cpu_percent": round_even(row.cpu, 2),
            "ram_mib": round_even(row.ram, 2),
            "tcp_ports": round_even(row.t, 2),
            "http_ports": round_even(row.h, 2),
        }
        for cls, row in table.rows.items()
    }


def render_json(
    summary: CorpusSummary | None,
    table: OverheadTable | None,
    pairs: Sequence[ScoredPair],
    config: ReportConfig | None = None,
    comparison: LabelComparison | None = None,
) -> bytes:
    document: dict = {"report_version": REPORT_VERSION}
    if config is not None:
        document["config"] = config.to_json()
    document["pairs"] = [_pair_json(p) for p in pairs]
    document["summary"] = _summary_json(summary) if summary is not None else None
    if table is not None:
        document["overheads"] = _overheads_json(table)
    if comparison is not None:
        document["label_comparison"] = comparison.to_json()
    return (json.dumps(document, indent=2) + "\n").encode("utf-8")


CSV_COLUMNS = ("app", "class", "score", "d1", "d2", "d3", "dcpu", "dram", "dtcp", "dhttp")


def _format_cell(value: float | None, places: int) -> str:
    if value is None:
        return ""
    rounded = round_even(value, places)
    return f"{rounded:.{places}f}"


def render_csv(pairs: Sequence[ScoredPair]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for pair in pairs:
        d1, d2, d3 = pair.result.deltas.values
        writer.writerow(
            [
                pair.app_id,
                pair.result.intent_class.value,
                _format_cell(float(pair.result.score.value), 1),
                d1,
                d2,
                d3,
                _format_cell(pair.deltas.cpu, 2),
                _format_cell(pair.deltas.ram, 2),
                _format_cell(pair.deltas.t, 2),
                _format_cell(pair.deltas.h, 2),
            ]
        )
    return out.getvalue().encode("utf-8")


_OVERHEAD_LABELS = (
    ("CPU (%)", "cpu"),
    ("RAM (MiB)", "ram"),
    ("TCP ports", "t"),
    ("HTTP ports", "h"),
)


def render_markdown(
    summary: CorpusSummary | None,
    table: OverheadTable | None,
    pairs: Sequence[ScoredPair],
    config: ReportConfig | None = None,
    comparison: LabelComparison | None = None,
) -> bytes:
    lines = ["# Cracked-app audit report", ""]
    if config is not None:
        weights = ", ".join(f"{w:g}" for w in config.weights.as_floats())
        lower, upper = config.thresholds.as_floats()
        lines += [
            f"- weights: {weights}",
            f"- thresholds: {lower:g}, {upper:g}",
            f"- count mode: {config.count_mode}; http mode: {config.http_mode}",
            "",
        ]
    if summary is not None:
        lines += ["## Summary", ""]
        lines.append(f"- pairs: {summary.pair_count}")
        lines.append(
            "- mean tracked permissions: official "
            f"{_format_cell(summary.permissions_official_mean, 2)}, cracked "
            f"{_format_cell(summary.permissions_cracked_mean, 2)}"
        )
        for label, means in (
            ("CPU (%)", summary.cpu),
            ("RAM (MiB)", summary.ram),
            ("TCP ports", summary.tcp),
            ("HTTP ports", summary.http),
        ):
            if not means.present():
                continue
            lines.append(
                f"- mean {label}: official {_format_cell(means.official_per_app, 2)}, "
                f"cracked {_format_cell(means.cracked_per_app, 2)} (per app); official "
                f"{_format_cell(means.official_per_cell, 2)}, cracked "
                f"{_format_cell(means.cracked_per_cell, 2)} (per version cell)"
            )
        classes = ", ".join(
            f"{cls.display}: {summary.class_histogram[cls]}" for cls in IntentionClass
        )
        lines.append(f"- classes: {classes}")
        lines.append(f"- flagged fraction: {_format_cell(summary.flagged_fraction, 4)}")
        lines.append("")
    if table is not None and table.rows:
        lines += ["## Average usage overhead per class", ""]
        present = [cls for cls in IntentionClass if cls in table.rows]
        header = "| indicator | " + " | ".join(cls.display for cls in present) + " |"
        divider = "|" + " --- |" * (len(present) + 1)
        lines += [header, divider]
        for label, attr in _OVERHEAD_LABELS:
            cells = [
                _format_cell(getattr(table.rows[cls], attr), 2) or "-" for cls in present
            ]
            lines.append(f"| {label} | " + " | ".join(cells) + " |")
        lines.append("")
        lines.append("Positive values mean the cracked build uses more of the resource.")
        lines.append("")
    if pairs:
        lines += ["## Pairs", ""]
        lines.append("| " + " | ".join(CSV_COLUMNS) + " |")
        lines.append("|" + " --- |" * len(CSV_COLUMNS))
        for pair in pairs:
            d1, d2, d3 = pair.result.deltas.values
            cells = [
                pair.app_id,
                pair.result.intent_class.value,
                _format_cell(float(pair.result.score.value), 1),
                str(d1),
                str(d2),
                str(d3),
                _format_cell(pair.deltas.cpu, 2) or "-",
                _format_cell(pair.deltas.ram, 2) or "-",
                _format_cell(pair.deltas.t, 2) or "-",
                _format_cell(pair.deltas.h, 2) or "-",
            ]
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
    if comparison is not None:
        lines += ["## Reference label comparison", ""]
        lines.append(f"- matching apps: {len(comparison.matches)}")
        if comparison.mismatches:
            lines.append("- divergent apps:")
            for app, computed, reference in comparison.mismatches:
                lines.append(f"  - {app}: computed {computed}, reference {reference}")
        if comparison.unknown_apps:
            lines.append(f"- reference apps without pairs: {', '.join(comparison.unknown_apps)}")
        lines.append("")
    return ("\n".join(lines).rstrip("\n") + "\n").encode("utf-8")


def render_report(
    summary: CorpusSummary | None,
    table: OverheadTable | None,
    pairs: Sequence[ScoredPair],
    fmt: str = "json",
    config: ReportConfig | None = None,
    comparison: LabelComparison | None = None,
) -> bytes:
    """Render a report in one of ``json``, ``csv`` or ``markdown``."""
    if fmt == "json":
        return render_json(summary, table, pairs, config=config, comparison=comparison)
    if fmt == "csv":
        return render_csv(pairs)
    if fmt == "markdown":
        return render_markdown(summary, table, pairs, config=config, comparison=comparison)
    raise ValueError(f"unknown report format {fmt!r}")
