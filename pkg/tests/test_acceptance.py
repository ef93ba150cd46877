"""Acceptance suite: one test per shipping criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with
``pytest -s`` or in captured output) and then asserts, so the suite
doubles as a human-readable checklist. Criteria 1-3 run the corpus
fixtures through the real CLI; 4-7 are property suites with seeded
randomness; 8 checks byte-level determinism of every output format.

The fuzz budget of criterion 6 defaults to the required 60 seconds and
can be shortened for development via CRACKAUDIT_ACCEPTANCE_FUZZ_SECONDS.
"""

import ipaddress
import json
import os
import random
import re
import shutil
import time
from fractions import Fraction
from pathlib import Path

import pytest

import pcap_builder as pb
from axml_builder import build_axml, build_textual
from conftest import CORPUS_DIR, REFERENCE_LABELS_PATH
from corpus_data import DIVERGENT_APPS, EXPECTED, REFERENCE_MALICIOUS, TABLE
from crackaudit.capture import read_capture
from crackaudit.cli import run
from crackaudit.errors import CrackAuditError
from crackaudit.flows import count_ports, track_flows
from crackaudit.manifest import parse_axml, parse_textual_manifest
from crackaudit.permissions import GroupWeights, PermissionVector, vector_from_indices
from crackaudit.report import OverheadRow, OverheadTable, overhead_table, render_markdown
from crackaudit.scoring import (
    GroupDifferences,
    IntentionClass,
    classify,
    intention_score,
    score_pair,
)
from crackaudit.telemetry import UsageSample, UsageSummary, aggregate, spread_across_versions

DEVICE = "10.0.0.2"
FUZZ_SECONDS = float(os.environ.get("CRACKAUDIT_ACCEPTANCE_FUZZ_SECONDS", "60"))


def criterion(number: int, description: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"[{status}] criterion {number}: {description}{suffix}")
    assert passed, f"criterion {number} failed: {description}{suffix}"


def run_corpus_cli(tmp_path: Path, *extra: str) -> dict:
    out = tmp_path / "report.json"
    code = run(
        ["corpus", str(CORPUS_DIR), "--reference-labels", str(REFERENCE_LABELS_PATH)]
        + list(extra)
        + ["--out", str(out)]
    )
    assert code == 0
    return json.loads(out.read_text())


def test_criterion_1_permission_average_reproduction(tmp_path, capsys):
    started = time.perf_counter()
    report = run_corpus_cli(tmp_path)
    elapsed = time.perf_counter() - started
    means = report["summary"]["permissions"]
    ok = (
        abs(means["cracked_mean"] - 7.36) <= 0.005
        and abs(means["official_mean"] - 2.64) <= 0.005
        and elapsed < 1.0
    )
    with capsys.disabled():
        criterion(
            1,
            "corpus reports mean tracked permissions 7.36 cracked / 2.64 official in < 1 s",
            ok,
            f"cracked={means['cracked_mean']}, official={means['official_mean']}, "
            f"elapsed={elapsed:.3f}s",
        )


def test_criterion_2_malicious_class_membership(tmp_path, capsys):
    report = run_corpus_cli(tmp_path)
    by_app = {p["app"]: p for p in report["pairs"]}

    computed_malicious = {app for app, p in by_app.items() if p["class"] == "malicious"}
    reference_malicious = set(REFERENCE_MALICIOUS)
    # Following the scoring rules verbatim also places app19/app20 (score
    # -0.7) in the malicious band; the reference labels file records them
    # as rather-malicious, so they surface as flagged divergences below.
    expected_computed = reference_malicious | {"app19", "app20"}

    mismatches = {
        m["app"]: (m["computed"], m["reference"])
        for m in report["label_comparison"]["mismatches"]
    }
    agreement_malicious = {
        app for app in computed_malicious if app in reference_malicious and app not in mismatches
    }

    divergences_listed = set(mismatches) == set(DIVERGENT_APPS) and all(
        by_app[app]["class"] == EXPECTED[app][2] for app in DIVERGENT_APPS
    )
    ok = (
        agreement_malicious == reference_malicious
        and computed_malicious == expected_computed
        and divergences_listed
    )
    with capsys.disabled():
        criterion(
            2,
            "malicious class matches the 17 reference apps exactly; the seven "
            "divergent apps are listed with computed classes and flagged",
            ok,
            f"agreement={len(agreement_malicious)}, computed={len(computed_malicious)}, "
            f"flagged={sorted(mismatches)}",
        )


def test_criterion_3_flagged_fraction(tmp_path, capsys):
    report = run_corpus_cli(tmp_path)
    fraction = report["summary"]["flagged_fraction"]
    with capsys.disabled():
        criterion(
            3,
            "fraction classified malicious or rather-malicious is at least 0.80",
            fraction >= 0.80,
            f"fraction={fraction}",
        )


def test_criterion_4_score_lattice_properties(capsys):
    weights = GroupWeights.default()
    lattice = {Fraction(k, 10) for k in range(-10, 11)}
    combos_ok = True
    for d1 in (-1, 0, 1):
        for d2 in (-1, 0, 1):
            for d3 in (-1, 0, 1):
                score = intention_score(GroupDifferences((d1, d2, d3)), weights)
                mirrored = intention_score(GroupDifferences((-d1, -d2, -d3)), weights)
                combos_ok &= -1 <= score.value <= 1
                combos_ok &= score.value in lattice
                combos_ok &= score.value == -mirrored.value
                combos_ok &= classify(score) in IntentionClass

    # boundary scores, both as raw values and as reachable delta combinations
    boundary_ok = (
        classify(Fraction(-4, 10)) is IntentionClass.RATHER_MALICIOUS
        and classify(Fraction(4, 10)) is IntentionClass.RATHER_BENIGN
        and classify(intention_score(GroupDifferences((0, -1, -1)), weights))
        is IntentionClass.RATHER_MALICIOUS
        and classify(intention_score(GroupDifferences((0, 1, 1)), weights))
        is IntentionClass.RATHER_BENIGN
    )

    rng = random.Random(20180425)
    swap_ok = True
    monotonic_ok = True
    checked = 0
    while checked < 10_000:
        official = vector_from_indices({i for i in range(1, 17) if rng.random() < 0.4})
        cracked_bits = [1 if rng.random() < 0.4 else 0 for _ in range(16)]
        cracked = PermissionVector(bits=tuple(cracked_bits))
        forward = score_pair(official, cracked)
        backward = score_pair(cracked, official)
        swap_ok &= forward.score.value == -backward.score.value
        zero_positions = [i for i, bit in enumerate(cracked_bits) if bit == 0]
        if not zero_positions:
            continue
        grown_bits = list(cracked_bits)
        grown_bits[rng.choice(zero_positions)] = 1
        grown = PermissionVector(bits=tuple(grown_bits))
        monotonic_ok &= (
            score_pair(official, grown).score.value <= forward.score.value
        )
        checked += 1

    ok = combos_ok and boundary_ok and swap_ok and monotonic_ok
    with capsys.disabled():
        criterion(
            4,
            "all 27 delta combinations stay in [-1,1] with total classification, "
            "boundaries -0.4/0.4 land in rather-malicious/rather-benign, and "
            "10,000 randomized pairs satisfy swap antisymmetry and monotonicity",
            ok,
            f"randomized_pairs={checked}",
        )


_ORACLE_REQUEST_LINE = re.compile(
    rb"^(?:GET|POST|HEAD|PUT|DELETE|OPTIONS|CONNECT|TRACE|PATCH)"
    rb" [^ \r\n]+ HTTP/1\.[0-9]\r\n"
)


def brute_force_counts(records, device) -> tuple[int, int]:
    """Direct packet scan: no flow table, no shared counting code."""
    syn_tuples = set()
    device_payloads: dict[tuple, list[tuple[int, bytes]]] = {}
    for record in records:
        if record.ip is None or record.tcp is None:
            continue
        tcp = record.tcp
        if record.ip.src != device:
            continue
        key = (tcp.src_port, record.ip.dst, tcp.dst_port)
        if (tcp.flags & 0x02) and not (tcp.flags & 0x10):
            syn_tuples.add(key)
        if tcp.payload:
            device_payloads.setdefault(key, []).append((tcp.seq, tcp.payload))
    http = 0
    for key in syn_tuples:
        segments = device_payloads.get(key)
        if segments and _ORACLE_REQUEST_LINE.match(min(segments)[1]):
            http += 1
    return len(syn_tuples), http


def _random_capture(rng: random.Random) -> bytes:
    # Flows are built as in-order packet lists, then merged in random
    # interleave (a capture never shows a flow's FIN before its handshake).
    # Flows without a close packet may additionally be reordered internally.
    flow_queues: list[list[bytes]] = []
    local_port = 40000
    for _ in range(rng.randint(0, 7)):
        local_port += rng.randint(1, 64)
        remote = f"203.0.113.{rng.randint(1, 250)}"
        remote_port = rng.choice((80, 443, 8080, 9999))
        isn = rng.randrange(0, 2**32 - 100_000)
        roll = rng.random()
        queue: list[bytes] = []
        has_close = False
        if roll < 0.6:  # device-initiated connection
            queue.append(
                pb.ipv4_tcp(DEVICE, remote, local_port, remote_port, flags=pb.SYN, seq=isn)
            )
            if rng.random() < 0.25:  # retransmitted handshake
                queue.append(
                    pb.ipv4_tcp(DEVICE, remote, local_port, remote_port, flags=pb.SYN, seq=isn)
                )
            if rng.random() < 0.7:
                queue.append(
                    pb.ipv4_tcp(
                        remote, DEVICE, remote_port, local_port,
                        flags=pb.SYN | pb.ACK, seq=rng.randrange(2**31), ack=isn + 1,
                    )
                )
            if rng.random() < 0.75:
                if rng.random() < 0.5:
                    payload = b"GET /p%d HTTP/1.1\r\nHost: h\r\n\r\n" % rng.randint(0, 999)
                else:
                    # guaranteed non-HTTP: first byte has the high bit set
                    payload = bytes([0x80 | rng.randrange(128)]) + bytes(
                        rng.randrange(256) for _ in range(rng.randint(0, 24))
                    )
                queue.append(
                    pb.ipv4_tcp(
                        DEVICE, remote, local_port, remote_port,
                        flags=pb.ACK, seq=isn + 1, payload=payload,
                    )
                )
                if rng.random() < 0.3:  # follow-up data after the first segment
                    queue.append(
                        pb.ipv4_tcp(
                            DEVICE, remote, local_port, remote_port,
                            flags=pb.ACK, seq=isn + 1 + len(payload), payload=b"\xffmore",
                        )
                    )
            if rng.random() < 0.25:
                has_close = True
                queue.append(
                    pb.ipv4_tcp(
                        DEVICE, remote, local_port, remote_port, flags=pb.FIN | pb.ACK,
                        seq=isn + 500,
                    )
                )
        elif roll < 0.85:  # inbound connection to the device
            queue.append(
                pb.ipv4_tcp(remote, DEVICE, remote_port, local_port, flags=pb.SYN, seq=isn)
            )
            queue.append(
                pb.ipv4_tcp(
                    DEVICE, remote, local_port, remote_port,
                    flags=pb.SYN | pb.ACK, seq=rng.randrange(2**31), ack=isn + 1,
                )
            )
        elif roll < 0.95:  # unrelated hosts
            queue.append(
                pb.ipv4_tcp("198.51.100.1", remote, 1234, remote_port, flags=pb.SYN, seq=isn)
            )
        else:  # non-TCP noise
            queue.append(pb.ipv4_udp(DEVICE, remote, local_port, 53, b"noise"))
        if not has_close and rng.random() < 0.4:
            rng.shuffle(queue)
        flow_queues.append(queue)

    packets: list[bytes] = []
    while flow_queues:
        queue = rng.choice(flow_queues)
        packets.append(queue.pop(0))
        if not queue:
            flow_queues.remove(queue)
    del packets[50:]
    return pb.eth_pcap(packets)


def test_criterion_5_capture_oracle_equivalence(capsys):
    rng = random.Random(0x7C9A)
    device = ipaddress.ip_address(DEVICE)
    started = time.perf_counter()
    mismatches = []
    for index in range(200):
        records = read_capture(_random_capture(rng))
        table = track_flows(records, device)
        counted = count_ports(table)
        expected = brute_force_counts(records, device)
        if (counted.t, counted.h) != expected:
            mismatches.append((index, (counted.t, counted.h), expected))

    # hand-built fixtures
    three_flows = [
        pb.ipv4_tcp(DEVICE, "1.1.1.1", 41000, 80, flags=pb.SYN, seq=0),
        pb.ipv4_tcp(
            DEVICE, "1.1.1.1", 41000, 80, flags=pb.ACK, seq=1,
            payload=b"GET / HTTP/1.1\r\n\r\n",
        ),
        pb.ipv4_tcp(DEVICE, "2.2.2.2", 41001, 443, flags=pb.SYN, seq=0),
        pb.ipv4_tcp(DEVICE, "3.3.3.3", 41002, 9999, flags=pb.SYN, seq=0),
    ]
    fixture_a = count_ports(track_flows(read_capture(pb.eth_pcap(three_flows)), device))
    no_tcp = [pb.ipv4_udp(DEVICE, "8.8.8.8", 53, 53, b"x")]
    fixture_b = count_ports(track_flows(read_capture(pb.eth_pcap(no_tcp)), device))
    inbound_only = [
        pb.ipv4_tcp("9.9.9.9", DEVICE, 5000, 8080, flags=pb.SYN, seq=0),
        pb.ipv4_tcp("9.9.9.8", DEVICE, 5001, 8081, flags=pb.SYN, seq=0),
    ]
    fixture_c = count_ports(track_flows(read_capture(pb.eth_pcap(inbound_only)), device))
    elapsed = time.perf_counter() - started

    ok = (
        not mismatches
        and (fixture_a.t, fixture_a.h) == (3, 1)
        and (fixture_b.t, fixture_b.h) == (0, 0)
        and (fixture_c.t, fixture_c.h) == (0, 0)
        and elapsed < 5.0
    )
    with capsys.disabled():
        criterion(
            5,
            "count_ports equals the brute-force packet-scan oracle on 200 random "
            "captures and the hand-built (3,1)/(0,0)/inbound-only fixtures in < 5 s",
            ok,
            f"mismatches={mismatches[:3]}, elapsed={elapsed:.2f}s",
        )


def _axml_seed_corpus() -> list[bytes]:
    perms = [
        "android.permission.INTERNET",
        "android.permission.SEND_SMS",
        "android.permission.CAMERA",
    ]
    return [
        build_axml("com.fuzz.a", perms),
        build_axml("com.fuzz.b", perms, utf8=True),
        build_axml("com.fuzz.c", perms, typed_only=True, extra_elements=2),
        build_axml("com.fuzz.d", perms[:1], with_namespace=False),
        build_axml("com.fuzz.e", [], with_resource_map=False),
    ]


def _capture_seed_corpus() -> list[bytes]:
    base = [
        pb.ipv4_tcp(DEVICE, "1.1.1.1", 40000, 80, flags=pb.SYN, seq=0),
        pb.ipv4_tcp(
            DEVICE, "1.1.1.1", 40000, 80, flags=pb.ACK, seq=1,
            payload=b"GET / HTTP/1.1\r\n\r\n",
        ),
        pb.ipv4_udp(DEVICE, "8.8.8.8", 53, 53, b"q"),
    ]
    return [
        pb.eth_pcap(base),
        pb.pcap_file([pb.with_ethernet(p) for p in base], big_endian=True),
        pb.pcap_file(base, link_type=pb.LINK_RAW_IP),
        pb.eth_pcap([pb.ipv6_tcp("2001:db8::1", "2001:db8::2", 1, 2, flags=pb.SYN)]),
    ]


def _fuzz_one(parser, seeds: list[bytes], rng: random.Random, deadline: float) -> int:
    iterations = 0
    while time.perf_counter() < deadline:
        iterations += 1
        mode = rng.random()
        if mode < 0.45:
            data = bytearray(rng.choice(seeds))
            for _ in range(rng.randint(1, 16)):
                data[rng.randrange(len(data))] = rng.randrange(256)
            blob = bytes(data)
        elif mode < 0.7:
            data = bytearray(rng.choice(seeds))
            cut = rng.randrange(len(data))
            blob = bytes(data[:cut])
        elif mode < 0.85:
            blob = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 300)))
        else:
            a, b = rng.choice(seeds), rng.choice(seeds)
            blob = a[: rng.randrange(len(a))] + b[rng.randrange(len(b)) :]
        try:
            parser(blob)
        except CrackAuditError:
            pass
        # anything else propagates and fails the test
    return iterations


def test_criterion_6_parser_equivalence_and_fuzz(capsys):
    rng = random.Random(0xF422)
    pool = [
        "android.permission.INTERNET",
        "android.permission.CAMERA",
        "android.permission.SEND_SMS",
        "android.permission.RECORD_AUDIO",
        "android.permission.BLUETOOTH",
        "com.example.custom.FLAG",
    ]
    pairs_checked = 0
    equivalence_ok = True
    for index in range(12):
        perms = rng.sample(pool, rng.randint(0, len(pool)))
        package = f"com.equiv.app{index}"
        binary = parse_axml(
            build_axml(package, perms, utf8=index % 2 == 0, typed_only=index % 3 == 0)
        )
        textual = parse_textual_manifest(build_textual(package, perms))
        equivalence_ok &= binary.uses_permissions == textual.uses_permissions
        equivalence_ok &= binary.package_name == textual.package_name
        pairs_checked += 1

    half = FUZZ_SECONDS / 2
    start = time.perf_counter()
    axml_iterations = _fuzz_one(parse_axml, _axml_seed_corpus(), rng, start + half)
    capture_iterations = _fuzz_one(
        lambda blob: read_capture(blob), _capture_seed_corpus(), rng, start + 2 * half
    )

    ok = equivalence_ok and pairs_checked >= 10 and axml_iterations > 0 and capture_iterations > 0
    with capsys.disabled():
        criterion(
            6,
            f"{pairs_checked} paired binary/textual fixtures agree; "
            f"{FUZZ_SECONDS:.0f}s fuzz over both parsers raised only typed errors",
            ok,
            f"axml_iterations={axml_iterations}, capture_iterations={capture_iterations}",
        )


def test_criterion_7_substitute_suites_for_unpublished_measurements(capsys):
    rng = random.Random(0xD45C)

    # telemetry aggregation properties
    telemetry_ok = True
    for _ in range(100):
        samples = [
            UsageSample(i, rng.uniform(0, 80), rng.uniform(0, 400)) for i in range(12)
        ]
        reference = aggregate(samples, "v")
        shuffled = samples[:]
        rng.shuffle(shuffled)
        telemetry_ok &= aggregate(shuffled, "v") == reference

        rows = [
            UsageSummary(f"v{i}", rng.uniform(0, 50), rng.uniform(0, 300), 4)
            for i in range(3)
        ]
        spread = spread_across_versions(rows)
        telemetry_ok &= (
            spread.cpu.minimum <= spread.cpu.mean <= spread.cpu.maximum
            and spread.ram.minimum <= spread.ram.mean <= spread.ram.maximum
        )
        alpha = rng.uniform(0.1, 5.0)
        scaled = spread_across_versions(
            [UsageSummary(r.os_version, alpha * r.cpu_mean, alpha * r.ram_mean, 4) for r in rows]
        )
        telemetry_ok &= abs(scaled.cpu.mean - alpha * spread.cpu.mean) < 1e-9 * max(
            1.0, abs(scaled.cpu.mean)
        )
        telemetry_ok &= scaled.cpu.minimum == pytest.approx(alpha * spread.cpu.minimum)

    # overhead table equals a brute-force recomputation
    from test_report import make_pair  # noqa: PLC0415

    pairs = [
        make_pair(
            app,
            cpu_delta=round(rng.uniform(-3, 3), 2),
            ram_delta=round(rng.uniform(-8, 8), 2),
            t_delta=rng.randint(-30, 70),
            h_delta=rng.randint(-20, 40),
        )
        for app in sorted(TABLE)
    ]
    table = overhead_table(pairs)
    overhead_ok = True
    for cls in IntentionClass:
        members = [p for p in pairs if p.result.intent_class is cls]
        if not members:
            overhead_ok &= cls not in table.rows
            continue
        row = table.rows[cls]
        for got, pick in (
            (row.cpu, lambda p: p.deltas.cpu),
            (row.ram, lambda p: p.deltas.ram),
            (row.t, lambda p: p.deltas.t),
            (row.h, lambda p: p.deltas.h),
        ):
            values = [pick(p) for p in members]
            overhead_ok &= got == pytest.approx(sum(values) / len(values))

    # rendering reproduces the published per-class layout and signs
    display = OverheadTable(
        rows={
            IntentionClass.MALICIOUS: OverheadRow(17, 0.43, 1.81, 41.29, 23.02),
            IntentionClass.RATHER_MALICIOUS: OverheadRow(3, -0.01, 0.91, 14.78, 10.34),
            IntentionClass.RATHER_BENIGN: OverheadRow(3, 0.24, 2.03, -12.11, 12.78),
            IntentionClass.BENIGN: OverheadRow(2, 0.06, 2.84, 8.00, 18.67),
        }
    )
    text = render_markdown(None, display, []).decode()
    render_ok = (
        "| indicator | malicious | rather malicious | rather benign | benign |" in text
        and "| CPU (%) | 0.43 | -0.01 | 0.24 | 0.06 |" in text
        and "| RAM (MiB) | 1.81 | 0.91 | 2.03 | 2.84 |" in text
        and "| TCP ports | 41.29 | 14.78 | -12.11 | 8.00 |" in text
        and "| HTTP ports | 23.02 | 10.34 | 12.78 | 18.67 |" in text
    )

    ok = telemetry_ok and overhead_ok and render_ok
    with capsys.disabled():
        criterion(
            7,
            "substitute suites pass: telemetry aggregation properties, overhead "
            "brute-force equivalence, and the per-class display-fixture rendering",
            ok,
            f"telemetry={telemetry_ok}, overhead={overhead_ok}, render={render_ok}",
        )


def _augmented_corpus(tmp_path: Path) -> Path:
    """Fixture tree plus deterministic telemetry and captures for SVG output."""
    root = tmp_path / "augmented"
    shutil.copytree(CORPUS_DIR, root)
    rng = random.Random(515)
    for app_dir in sorted(root.iterdir()):
        for side in ("official", "cracked"):
            build = app_dir / side
            for i, tag in enumerate(("kitkat", "lollipop", "marshmallow")):
                rows = "".join(
                    f"{t},{rng.uniform(0.5, 6):.2f},{rng.uniform(20, 80):.2f}\n"
                    for t in range(4)
                )
                (build / f"telemetry-{tag}.csv").write_text(
                    "timestamp,cpu_percent,ram_mib\n" + rows
                )
            packets = []
            for flow in range(rng.randint(1, 4)):
                packets.append(
                    pb.ipv4_tcp(
                        DEVICE, f"198.51.100.{flow + 1}", 42000 + flow, 80,
                        flags=pb.SYN, seq=0,
                    )
                )
                if rng.random() < 0.6:
                    packets.append(
                        pb.ipv4_tcp(
                            DEVICE, f"198.51.100.{flow + 1}", 42000 + flow, 80,
                            flags=pb.ACK, seq=1, payload=b"GET / HTTP/1.1\r\n\r\n",
                        )
                    )
            (build / "capture.pcap").write_bytes(pb.eth_pcap(packets))
    return root


def test_criterion_8_end_to_end_determinism(tmp_path, capsys):
    root = _augmented_corpus(tmp_path)
    outputs = {}
    for attempt in ("first", "second"):
        base = tmp_path / attempt
        base.mkdir()
        for fmt, name in (("json", "report.json"), ("csv", "report.csv")):
            code = run(
                [
                    "corpus", str(root),
                    "--device", DEVICE,
                    "--format", fmt,
                    "--reference-labels", str(REFERENCE_LABELS_PATH),
                    "--emit-svg", str(base / "svg"),
                    "--out", str(base / name),
                ]
            )
            assert code == 0
        outputs[attempt] = base

    first, second = outputs["first"], outputs["second"]
    svg_names = sorted(p.name for p in (first / "svg").iterdir())
    identical = (
        (first / "report.json").read_bytes() == (second / "report.json").read_bytes()
        and (first / "report.csv").read_bytes() == (second / "report.csv").read_bytes()
        and svg_names == sorted(p.name for p in (second / "svg").iterdir())
        and all(
            (first / "svg" / name).read_bytes() == (second / "svg" / name).read_bytes()
            for name in svg_names
        )
    )
    ok = identical and svg_names == ["cpu.svg", "http.svg", "ram.svg", "tcp.svg"]
    with capsys.disabled():
        criterion(
            8,
            "two consecutive corpus runs produce byte-identical JSON, CSV, and SVG",
            ok,
            f"svg_files={svg_names}",
        )
