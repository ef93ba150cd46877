"""Command-line front end.

Subcommands mirror the pipeline stages: ``manifest`` and ``pcap`` analyze
single inputs, ``telemetry`` aggregates usage logs, ``score`` compares two
manifests, and ``corpus`` scores a whole directory tree of
``<app>/{official,cracked}/...`` builds and renders the report.

Exit codes: 0 on success, 1 on input errors (message on stderr), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import ipaddress
import json
import sys
from pathlib import Path

from . import __version__
from . import boxplot as boxplot_mod
from . import flows as flows_mod
from . import manifest as manifest_mod
from . import report as report_mod
from . import telemetry as telemetry_mod
from .capture import parse_capture
from .errors import CrackAuditError, InvalidThresholds, InvalidWeights
from .permissions import GroupWeights, builtin_catalog, load_override_file
from .profiles import load_corpus
from .scoring import ClassThresholds, score_pair


def _weights_arg(text: str) -> GroupWeights:
    try:
        return GroupWeights.parse(text)
    except InvalidWeights as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _thresholds_arg(text: str) -> ClassThresholds:
    try:
        return ClassThresholds.parse(text)
    except InvalidThresholds as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _device_arg(text: str):
    try:
        return ipaddress.ip_address(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_scoring_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--weights",
        type=_weights_arg,
        default=None,
        metavar="W1,W2,W3",
        help="group weights (non-negative, summing to 1); default 0.6,0.3,0.1",
    )
    parser.add_argument(
        "--thresholds",
        type=_thresholds_arg,
        default=None,
        metavar="A,B",
        help="class boundaries; default -0.4,0.4",
    )
    parser.add_argument(
        "--catalog",
        type=Path,
        default=None,
        metavar="FILE",
        help="catalog/weights override file (see README for the format)",
    )


def _add_traffic_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--count-mode",
        choices=flows_mod.COUNT_MODES,
        default=flows_mod.COUNT_CONNECTIONS,
        help="what the TCP counter counts (default: connections)",
    )
    parser.add_argument(
        "--http-mode",
        choices=flows_mod.HTTP_MODES,
        default=flows_mod.HTTP_BY_SIGNATURE,
        help="how HTTP flows are recognized (default: request-line signature)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crackaudit",
        description="Compare cracked Android builds against their official "
        "counterparts and classify their intent.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_manifest = sub.add_parser(
        "manifest", help="extract the permission request vector from a manifest or APK"
    )
    p_manifest.add_argument("path", type=Path, help="APK, binary manifest, or textual manifest")
    p_manifest.add_argument(
        "--emit-manifest",
        action="store_true",
        help="emit the raw manifest document instead of the request vector",
    )
    p_manifest.add_argument("--catalog", type=Path, default=None, metavar="FILE")
    p_manifest.add_argument("--out", type=Path, default=None, metavar="PATH")

    p_pcap = sub.add_parser("pcap", help="count TCP/HTTP connections opened in a capture")
    p_pcap.add_argument("path", type=Path, help="classic pcap file")
    p_pcap.add_argument(
        "--device", type=_device_arg, required=True, metavar="ADDR",
        help="IP address of the analyzed device",
    )
    _add_traffic_flags(p_pcap)
    p_pcap.add_argument("--out", type=Path, default=None, metavar="PATH")

    p_telemetry = sub.add_parser("telemetry", help="aggregate CPU/RAM usage logs")
    p_telemetry.add_argument("paths", type=Path, nargs="+", metavar="CSV")
    p_telemetry.add_argument(
        "--cores", type=int, default=1, help="CPU cores of the sampling device (default 1)"
    )
    p_telemetry.add_argument("--out", type=Path, default=None, metavar="PATH")

    p_score = sub.add_parser("score", help="score one official/cracked manifest pair")
    p_score.add_argument("--official", type=Path, required=True, metavar="PATH")
    p_score.add_argument("--cracked", type=Path, required=True, metavar="PATH")
    p_score.add_argument("--app", default=None, help="app identifier used in the output")
    _add_scoring_flags(p_score)
    p_score.add_argument("--out", type=Path, default=None, metavar="PATH")

    p_corpus = sub.add_parser(
        "corpus", help="score every official/cracked pair under a directory tree"
    )
    p_corpus.add_argument("root", type=Path, help="corpus root: <app>/{official,cracked}/...")
    _add_scoring_flags(p_corpus)
    _add_traffic_flags(p_corpus)
    p_corpus.add_argument("--device", type=_device_arg, default=None, metavar="ADDR")
    p_corpus.add_argument("--cores", type=int, default=1)
    p_corpus.add_argument(
        "--format", choices=report_mod.REPORT_FORMATS, default="json", dest="fmt"
    )
    p_corpus.add_argument(
        "--reference-labels",
        type=Path,
        default=None,
        metavar="FILE",
        help="JSON file of app-to-class labels to compare computed classes against",
    )
    p_corpus.add_argument(
        "--emit-svg", type=Path, default=None, metavar="DIR",
        help="write per-indicator box plots into this directory",
    )
    p_corpus.add_argument("--out", type=Path, default=None, metavar="PATH")
    return parser


def _emit(payload: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(payload.decode("utf-8"))
    else:
        out.write_bytes(payload)


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")


def _load_scoring_config(args):
    catalog = None
    weights = getattr(args, "weights", None)
    thresholds = getattr(args, "thresholds", None)
    if getattr(args, "catalog", None) is not None:
        catalog, file_weights = load_override_file(args.catalog)
        if weights is None:
            weights = file_weights
    return (
        catalog or builtin_catalog(),
        weights or GroupWeights.default(),
        thresholds or ClassThresholds(),
    )


def _cmd_manifest(args) -> int:
    document = manifest_mod.read_any(args.path.read_bytes())
    if args.emit_manifest:
        _emit(_json_bytes(document.to_json()), args.out)
        return 0
    catalog, _, _ = _load_scoring_config(args)
    vector = manifest_mod.extract_permissions(document, catalog)
    _emit(
        _json_bytes(
            {
                "package": document.package_name,
                "source": document.source_kind.value,
                "bits": list(vector.bits),
                "tracked": list(vector.requested_names()),
                "untracked": list(vector.untracked),
            }
        ),
        args.out,
    )
    return 0


def _cmd_pcap(args) -> int:
    packets = parse_capture(args.path.read_bytes())
    table = flows_mod.track_flows(packets, args.device)
    payload = flows_mod.flows_to_json(
        table, count_mode=args.count_mode, http_mode=args.http_mode
    )
    _emit(_json_bytes(payload), args.out)
    return 0


def _telemetry_tag(path: Path) -> str:
    name = path.name
    if name.startswith("telemetry-") and name.endswith(".csv"):
        return name[len("telemetry-") : -len(".csv")]
    return path.stem


def _cmd_telemetry(args) -> int:
    summaries = []
    for path in args.paths:
        samples = telemetry_mod.parse_telemetry_csv(
            path.read_text(encoding="utf-8"), cores=args.cores
        )
        summaries.append(telemetry_mod.aggregate(samples, _telemetry_tag(path)))
    spread = telemetry_mod.spread_across_versions(summaries)
    payload = {
        "summaries": [
            {
                "os_version": s.os_version,
                "cpu_mean": report_mod.round_even(s.cpu_mean, 2),
                "ram_mean": report_mod.round_even(s.ram_mean, 2),
                "samples": s.sample_count,
            }
            for s in summaries
        ],
        "spread": {
            "cpu_percent": {
                "min": report_mod.round_even(spread.cpu.minimum, 2),
                "max": report_mod.round_even(spread.cpu.maximum, 2),
                "mean": report_mod.round_even(spread.cpu.mean, 2),
            },
            "ram_mib": {
                "min": report_mod.round_even(spread.ram.minimum, 2),
                "max": report_mod.round_even(spread.ram.maximum, 2),
                "mean": report_mod.round_even(spread.ram.mean, 2),
            },
        },
    }
    _emit(_json_bytes(payload), args.out)
    return 0


def _cmd_score(args) -> int:
    catalog, weights, thresholds = _load_scoring_config(args)
    official_doc = manifest_mod.read_any(args.official.read_bytes())
    cracked_doc = manifest_mod.read_any(args.cracked.read_bytes())
    result = score_pair(
        manifest_mod.extract_permissions(official_doc, catalog),
        manifest_mod.extract_permissions(cracked_doc, catalog),
        weights=weights,
        catalog=catalog,
        thresholds=thresholds,
    )
    app = args.app or official_doc.package_name or "pair"
    payload = {"app": app}
    payload.update(result.to_json())
    payload["packages"] = {
        "official": official_doc.package_name,
        "cracked": cracked_doc.package_name,
    }
    _emit(_json_bytes(payload), args.out)
    return 0


def _load_reference_labels(path: Path) -> dict[str, str]:
    data = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(data, dict) and isinstance(data.get("labels"), dict):
        data = data["labels"]
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise CrackAuditError(f"{path}: expected a JSON object of app-to-label strings")
    return data


_SVG_INDICATORS = (
    ("cpu", "CPU usage (%)", lambda p: p.usage.cpu if p.usage else None),
    ("ram", "RAM usage (MiB)", lambda p: p.usage.ram if p.usage else None),
    ("tcp", "TCP connections opened", lambda p: p.ports.t if p.ports else None),
    ("http", "HTTP connections opened", lambda p: p.ports.h if p.ports else None),
)


def _emit_svgs(pairs, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, title, pick in _SVG_INDICATORS:
        entries = [
            boxplot_mod.BoxplotEntry(
                label=pair.app_id, official=pick(pair.official), cracked=pick(pair.cracked)
            )
            for pair in pairs
        ]
        if all(e.official is None and e.cracked is None for e in entries):
            continue
        (directory / f"{name}.svg").write_bytes(boxplot_mod.render_boxplot(entries, title))


def _cmd_corpus(args) -> int:
    catalog, weights, thresholds = _load_scoring_config(args)
    if not args.root.is_dir():
        raise CrackAuditError(f"corpus root {args.root} is not a directory")
    pairs = load_corpus(
        args.root,
        catalog=catalog,
        weights=weights,
        thresholds=thresholds,
        device=args.device,
        cores=args.cores,
        count_mode=args.count_mode,
        http_mode=args.http_mode,
    )
    summary = report_mod.corpus_summary(pairs) if pairs else None
    table = report_mod.overhead_table(pairs) if pairs else None
    comparison = None
    if args.reference_labels is not None:
        comparison = report_mod.compare_labels(
            pairs, _load_reference_labels(args.reference_labels)
        )
    config = report_mod.ReportConfig(
        weights=weights,
        thresholds=thresholds,
        count_mode=args.count_mode,
        http_mode=args.http_mode,
    )
    payload = report_mod.render_report(
        summary, table, pairs, fmt=args.fmt, config=config, comparison=comparison
    )
    _emit(payload, args.out)
    if args.emit_svg is not None and pairs:
        _emit_svgs(pairs, args.emit_svg)
    return 0


_COMMANDS = {
    "manifest": _cmd_manifest,
    "pcap": _cmd_pcap,
    "telemetry": _cmd_telemetry,
    "score": _cmd_score,
    "corpus": _cmd_corpus,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments and run one subcommand, mapping failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except IsADirectoryError as exc:
        print(f"error: expected a file, got a directory: {exc.filename}", file=sys.stderr)
        return 1
    except (CrackAuditError, json.JSONDecodeError, UnicodeDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
