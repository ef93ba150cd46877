"""Audit cracked Android builds against their official counterparts.

The pipeline compares five indicators per app: requested permissions
(from the manifest), CPU and RAM usage (from telemetry logs), and the
number of TCP and HTTP connections opened (from packet captures). The
permission comparison drives an intention score in [-1, 1] that maps
onto four classes from malicious to benign.
"""

__version__ = "0.1.0"

from .errors import CrackAuditError
from .manifest import (
    ManifestDocument,
    SourceKind,
    extract_permissions,
    open_apk,
    parse_axml,
    parse_textual_manifest,
    read_any,
)
from .permissions import (
    GroupWeights,
    PermissionCatalog,
    PermissionEntry,
    PermissionVector,
    Protection,
    builtin_catalog,
    vector_from_names,
)
from .scoring import (
    ClassThresholds,
    GroupDifferences,
    IntentionClass,
    IntentionScore,
    PairScore,
    classify,
    group_difference,
    intention_score,
    score_pair,
)
from .capture import PacketRecord, parse_capture, read_capture
from .flows import FlowRecord, FlowTable, PortCounts, count_ports, detect_http, track_flows
from .telemetry import (
    SpreadStats,
    UsageSample,
    UsageSummary,
    VersionSpread,
    aggregate,
    parse_telemetry_csv,
    spread_across_versions,
)
from .profiles import AppProfile, BuildKind, ScoredPair, build_pair, load_corpus
from .report import (
    CorpusSummary,
    OverheadTable,
    compare_labels,
    corpus_summary,
    overhead_table,
    render_report,
)
from .boxplot import BoxplotEntry, render_boxplot
from .estimator import PairIntentClassifier

__all__ = [
    "AppProfile",
    "BoxplotEntry",
    "BuildKind",
    "ClassThresholds",
    "CorpusSummary",
    "CrackAuditError",
    "FlowRecord",
    "FlowTable",
    "GroupDifferences",
    "GroupWeights",
    "IntentionClass",
    "IntentionScore",
    "ManifestDocument",
    "OverheadTable",
    "PacketRecord",
    "PairIntentClassifier",
    "PairScore",
    "PermissionCatalog",
    "PermissionEntry",
    "PermissionVector",
    "PortCounts",
    "Protection",
    "ScoredPair",
    "SourceKind",
    "SpreadStats",
    "UsageSample",
    "UsageSummary",
    "VersionSpread",
    "aggregate",
    "build_pair",
    "builtin_catalog",
    "classify",
    "compare_labels",
    "corpus_summary",
    "count_ports",
    "detect_http",
    "extract_permissions",
    "group_difference",
    "intention_score",
    "load_corpus",
    "open_apk",
    "overhead_table",
    "parse_axml",
    "parse_capture",
    "parse_telemetry_csv",
    "parse_textual_manifest",
    "read_any",
    "read_capture",
    "render_boxplot",
    "render_report",
    "score_pair",
    "spread_across_versions",
    "track_flows",
    "vector_from_names",
]
