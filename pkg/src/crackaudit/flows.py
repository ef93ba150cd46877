"""TCP flow tracking and the TCP/HTTP connection counters.

A flow is one TCP connection keyed by the direction-normalized 4-tuple
(device address, device port, remote address, remote port). A flow counts
as opened by the device when the device sent the opening SYN (SYN set,
ACK clear); retransmitted SYNs collapse into one flow, while a new SYN on
a 4-tuple that already saw FIN or RST starts a fresh flow. The first 512
payload bytes the device sent are reassembled in sequence order and
checked for an HTTP/1.x request line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .capture import Address, PacketRecord

FIRST_PAYLOAD_LIMIT = 512
# Out-of-order segments are buffered only near the start of the stream.
_SEGMENT_WINDOW = 4096
_MAX_BUFFERED_SEGMENTS = 256

COUNT_CONNECTIONS = "connections"
COUNT_DISTINCT_LOCAL_PORTS = "distinct-local-ports"
COUNT_MODES = (COUNT_CONNECTIONS, COUNT_DISTINCT_LOCAL_PORTS)

HTTP_BY_SIGNATURE = "signature"
HTTP_BY_PORT = "port80"
HTTP_MODES = (HTTP_BY_SIGNATURE, HTTP_BY_PORT)

_REQUEST_LINE = re.compile(
    rb"^(?:GET|POST|HEAD|PUT|DELETE|OPTIONS|CONNECT|TRACE|PATCH)"
    rb" [^ \r\n]+ HTTP/1\.[0-9]\r\n"
)


def detect_http(payload: bytes) -> bool:
    """True iff the payload begins with a complete HTTP/1.x request line."""
    return _REQUEST_LINE.match(payload) is not None


@dataclass(frozen=True)
class FlowRecord:
    """One reconstructed TCP connection seen from the device's side."""

    local_port: int
    remote_addr: Address
    remote_port: int
    initiated_by_device: bool
    first_payload: bytes

    @property
    def is_http(self) -> bool:
        return self.initiated_by_device and detect_http(self.first_payload)


@dataclass(frozen=True)
class PortCounts:
    """The two connection counters for one capture."""

    t: int
    h: int

    def __post_init__(self) -> None:
        if not 0 <= self.h <= self.t:
            raise ValueError(f"invalid counts t={self.t}, h={self.h}")


@dataclass
class _FlowState:
    initiated: bool = False
    base_seq: int | None = None  # first expected payload seq (ISN + 1)
    closed: bool = False
    segments: dict[int, bytes] = field(default_factory=dict)
    loose: list[tuple[int, bytes]] = field(default_factory=list)

    def feed_device_segment(self, seq: int, payload: bytes) -> None:
        if not payload:
            return
        if self.base_seq is None:
            if len(self.loose) < _MAX_BUFFERED_SEGMENTS:
                self.loose.append((seq, payload))
            return
        offset = (seq - self.base_seq) & 0xFFFFFFFF
        if offset < _SEGMENT_WINDOW and len(self.segments) < _MAX_BUFFERED_SEGMENTS:
            self.segments.setdefault(offset, payload)

    def set_base(self, isn: int) -> None:
        if self.base_seq is not None:
            return
        self.base_seq = (isn + 1) & 0xFFFFFFFF
        for seq, payload in self.loose:
            self.feed_device_segment(seq, payload)
        self.loose.clear()

    def first_payload(self) -> bytes:
        segments = self.segments
        if self.base_seq is None and self.loose:
            # No SYN observed: anchor at the lowest sequence number seen.
            base = min(seq for seq, _ in self.loose)
            segments = {}
            for seq, payload in self.loose:
                segments.setdefault((seq - base) & 0xFFFFFFFF, payload)
        out = bytearray()
        expected = 0
        for offset in sorted(segments):
            if offset > expected:
                break  # gap: the contiguous prefix ends here
            chunk = segments[offset]
            skip = expected - offset
            if skip < len(chunk):
                out.extend(chunk[skip:])
                expected = offset + len(chunk)
            if expected >= FIRST_PAYLOAD_LIMIT:
                break
        return bytes(out[:FIRST_PAYLOAD_LIMIT])


@dataclass(frozen=True)
class FlowTable:
    """All flows touching the device in one capture, in first-seen order."""

    device: Address
    flows: tuple[FlowRecord, ...]


def track_flows(packets: Iterable[PacketRecord], device: Address) -> FlowTable:
    """Group TCP packets touching the device into flows.

    Non-TCP records and flows not involving the device are ignored.
    """
    episodes: dict[tuple, list[_FlowState]] = {}
    order: list[tuple[tuple, _FlowState]] = []

    for record in packets:
        if record.ip is None or record.tcp is None:
            continue
        tcp = record.tcp
        if record.ip.src == device:
            from_device = True
            key = (tcp.src_port, record.ip.dst, tcp.dst_port)
        elif record.ip.dst == device:
            from_device = False
            key = (tcp.dst_port, record.ip.src, tcp.src_port)
        else:
            continue

        states = episodes.setdefault(key, [])
        current = states[-1] if states else None
        opens_new = from_device and tcp.is_bare_syn and (current is None or current.closed)
        if current is None or opens_new:
            current = _FlowState()
            states.append(current)
            order.append((key, current))

        if from_device and tcp.is_bare_syn:
            current.initiated = True
            current.set_base(tcp.seq)
        if from_device:
            current.feed_device_segment(tcp.seq, tcp.payload)
        if tcp.closes:
            current.closed = True

    flows = tuple(
        FlowRecord(
            local_port=key[0],
            remote_addr=key[1],
            remote_port=key[2],
            initiated_by_device=state.initiated,
            first_payload=state.first_payload(),
        )
        for key, state in order
    )
    return FlowTable(device=device, flows=flows)


def _flow_is_http(flow: FlowRecord, http_mode: str) -> bool:
    if http_mode == HTTP_BY_PORT:
        return flow.initiated_by_device and flow.remote_port == 80
    return flow.is_http


def count_ports(
    table: FlowTable,
    count_mode: str = COUNT_CONNECTIONS,
    http_mode: str = HTTP_BY_SIGNATURE,
) -> PortCounts:
    """Count device-opened TCP connections and the HTTP subset.

    ``count_mode`` switches between counting connections and counting
    distinct device-side ports; ``http_mode`` switches between request
    line detection on any port and the strict remote-port-80 rule.
    """
    if count_mode not in COUNT_MODES:
        raise ValueError(f"unknown count mode {count_mode!r}")
    if http_mode not in HTTP_MODES:
        raise ValueError(f"unknown http mode {http_mode!r}")
    opened = [f for f in table.flows if f.initiated_by_device]
    http = [f for f in opened if _flow_is_http(f, http_mode)]
    if count_mode == COUNT_DISTINCT_LOCAL_PORTS:
        return PortCounts(
            t=len({f.local_port for f in opened}),
            h=len({f.local_port for f in http}),
        )
    return PortCounts(t=len(opened), h=len(http))


def flows_to_json(
    table: FlowTable,
    count_mode: str = COUNT_CONNECTIONS,
    http_mode: str = HTTP_BY_SIGNATURE,
) -> dict:
    """Per-capture JSON: counters plus one row per device-opened flow."""
    counts = count_ports(table, count_mode=count_mode, http_mode=http_mode)
    opened = sorted(
        (f for f in table.flows if f.initiated_by_device),
        key=lambda f: (str(f.remote_addr), f.remote_port, f.local_port),
    )
    return {
        "device": str(table.device),
        "t": counts.t,
        "h": counts.h,
        "flows": [
            {
                "remote": str(f.remote_addr),
                "remote_port": f.remote_port,
                "http": _flow_is_http(f, http_mode),
            }
            for f in opened
        ],
    }
