"""Classic capture-file (pcap) parsing down to TCP segments.

Only the classic format is handled: a 24-byte file header whose magic is
0xA1B2C3D4 in either byte order, then 16-byte record headers. Supported
link layers are Ethernet and raw IP. Each record is decoded as far as
the captured bytes allow; a record whose IP/TCP headers do not fit in
the captured slice keeps ``ip``/``tcp`` unset instead of failing, so one
mangled packet never aborts a capture.

Parsing is total: arbitrary input yields records followed by at most one
typed error, and the file offset strictly increases per record.
"""

from __future__ import annotations

import ipaddress
import struct
from dataclasses import dataclass
from typing import Iterator

from .errors import BadCaptureMagic, TruncatedCapture, UnsupportedLinkType

MAGIC_LE = b"\xd4\xc3\xb2\xa1"  # file written little-endian
MAGIC_BE = b"\xa1\xb2\xc3\xd4"  # file written big-endian

LINKTYPE_ETHERNET = 1
LINKTYPE_RAW_IP = 101
SUPPORTED_LINK_TYPES = (LINKTYPE_ETHERNET, LINKTYPE_RAW_IP)

ETHERTYPE_IPV4 = 0x0800
ETHERTYPE_IPV6 = 0x86DD

TCP_FIN = 0x01
TCP_SYN = 0x02
TCP_RST = 0x04
TCP_ACK = 0x10

Address = ipaddress.IPv4Address | ipaddress.IPv6Address


@dataclass(frozen=True)
class TcpSegment:
    src_port: int
    dst_port: int
    seq: int
    ack: int
    flags: int
    payload: bytes

    @property
    def is_syn(self) -> bool:
        return bool(self.flags & TCP_SYN)

    @property
    def is_bare_syn(self) -> bool:
        """SYN without ACK: the opening segment of a handshake."""
        return bool(self.flags & TCP_SYN) and not self.flags & TCP_ACK

    @property
    def closes(self) -> bool:
        return bool(self.flags & (TCP_FIN | TCP_RST))


@dataclass(frozen=True)
class IpHeader:
    src: Address
    dst: Address
    protocol: int


@dataclass(frozen=True)
class PacketRecord:
    """One capture record with whatever layers validated."""

    ts_sec: int
    ts_usec: int
    data: bytes
    ip: IpHeader | None = None
    tcp: TcpSegment | None = None


def _decode_ipv4(data: bytes) -> tuple[IpHeader, bytes] | None:
    if len(data) < 20:
        return None
    first = data[0]
    if first >> 4 != 4:
        return None
    ihl = (first & 0x0F) * 4
    if ihl < 20 or len(data) < ihl:
        return None
    total_len, _, flags_frag = struct.unpack_from("!HHH", data, 2)
    if flags_frag & 0x1FFF:
        return None  # non-first fragment: no TCP header inside
    protocol = data[9]
    src = ipaddress.IPv4Address(data[12:16])
    dst = ipaddress.IPv4Address(data[16:20])
    end = min(len(data), total_len) if total_len >= ihl else len(data)
    return IpHeader(src=src, dst=dst, protocol=protocol), data[ihl:end]


_IPV6_SKIPPABLE = {0, 43, 60}  # hop-by-hop, routing, destination options
_IPV6_FRAGMENT = 44


def _decode_ipv6(data: bytes) -> tuple[IpHeader, bytes] | None:
    if len(data) < 40 or data[0] >> 4 != 6:
        return None
    payload_len = struct.unpack_from("!H", data, 4)[0]
    next_header = data[6]
    src = ipaddress.IPv6Address(data[8:24])
    dst = ipaddress.IPv6Address(data[24:40])
    end = min(len(data), 40 + payload_len)
    pos = 40
    for _ in range(8):  # extension chains are short in practice
        if next_header in _IPV6_SKIPPABLE:
            if pos + 8 > end:
                return None
            length = 8 + data[pos + 1] * 8
            next_header, pos = data[pos], pos + length
        elif next_header == _IPV6_FRAGMENT:
            if pos + 8 > end:
                return None
            offset = struct.unpack_from("!H", data, pos + 2)[0] >> 3
            if offset:
                return None  # non-first fragment
            next_header, pos = data[pos], pos + 8
        else:
            break
    if pos > end:
        return None
    return IpHeader(src=src, dst=dst, protocol=next_header), data[pos:end]


def _decode_tcp(payload: bytes) -> TcpSegment | None:
    if len(payload) < 20:
        return None
    src_port, dst_port, seq, ack = struct.unpack_from("!HHII", payload, 0)
    offset = (payload[12] >> 4) * 4
    if offset < 20 or offset > len(payload):
        return None
    flags = payload[13]
    return TcpSegment(
        src_port=src_port,
        dst_port=dst_port,
        seq=seq,
        ack=ack,
        flags=flags,
        payload=payload[offset:],
    )


def _decode_layers(data: bytes, link_type: int) -> tuple[IpHeader | None, TcpSegment | None]:
    if link_type == LINKTYPE_ETHERNET:
        if len(data) < 14:
            return None, None
        ethertype = struct.unpack_from("!H", data, 12)[0]
        if ethertype == ETHERTYPE_IPV4:
            decoded = _decode_ipv4(data[14:])
        elif ethertype == ETHERTYPE_IPV6:
            decoded = _decode_ipv6(data[14:])
        else:
            return None, None
    else:
        version = data[0] >> 4 if data else 0
        if version == 4:
            decoded = _decode_ipv4(data)
        elif version == 6:
            decoded = _decode_ipv6(data)
        else:
            return None, None
    if decoded is None:
        return None, None
    ip, rest = decoded
    if ip.protocol != 6:
        return ip, None
    return ip, _decode_tcp(rest)


def parse_capture(data: bytes) -> Iterator[PacketRecord]:
    """Yield capture records in file order.

    Raises :class:`BadCaptureMagic` or :class:`UnsupportedLinkType`
    before the first record, and :class:`TruncatedCapture` after the last
    complete record when the file ends mid-record.
    """
    if len(data) < 24 or data[:4] not in (MAGIC_LE, MAGIC_BE):
        raise BadCaptureMagic("input does not start with a classic capture-file header")
    endian = "<" if data[:4] == MAGIC_LE else ">"
    link_type = struct.unpack_from(f"{endian}I", data, 20)[0]
    if link_type not in SUPPORTED_LINK_TYPES:
        raise UnsupportedLinkType(f"link type {link_type} is not Ethernet or raw IP")

    pos = 24
    record_header = struct.Struct(f"{endian}IIII")
    while pos < len(data):
        if pos + 16 > len(data):
            raise TruncatedCapture(f"record header at offset {pos} is incomplete")
        ts_sec, ts_usec, incl_len, _ = record_header.unpack_from(data, pos)
        pos += 16
        if pos + incl_len > len(data):
            raise TruncatedCapture(
                f"record at offset {pos - 16} declares {incl_len} bytes, "
                f"only {len(data) - pos} left"
            )
        packet = data[pos : pos + incl_len]
        pos += incl_len
        ip, tcp = _decode_layers(packet, link_type)
        yield PacketRecord(ts_sec=ts_sec, ts_usec=ts_usec, data=packet, ip=ip, tcp=tcp)


def read_capture(data: bytes) -> list[PacketRecord]:
    """Collect all records of a well-formed capture into a list."""
    return list(parse_capture(data))
