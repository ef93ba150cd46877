"""Stand-alone capture-file writer used to build traffic fixtures.

Assembles classic pcap files byte by byte (both endiannesses, Ethernet
and raw-IP link types) independently of the parser under test.
"""

from __future__ import annotations

import ipaddress
import struct

LINK_ETHERNET = 1
LINK_RAW_IP = 101

FIN = 0x01
SYN = 0x02
RST = 0x04
ACK = 0x10


def ipv4_tcp(
    src: str,
    dst: str,
    sport: int,
    dport: int,
    flags: int = 0,
    seq: int = 0,
    ack: int = 0,
    payload: bytes = b"",
) -> bytes:
    """One IPv4/TCP packet (IP layer onward, no link header)."""
    tcp = struct.pack("!HHIIBBHHH", sport, dport, seq, ack, 5 << 4, flags, 65535, 0, 0)
    total = 20 + len(tcp) + len(payload)
    ip = struct.pack(
        "!BBHHHBBH4s4s",
        0x45,
        0,
        total,
        1,
        0,
        64,
        6,
        0,
        ipaddress.IPv4Address(src).packed,
        ipaddress.IPv4Address(dst).packed,
    )
    return ip + tcp + payload


def ipv6_tcp(
    src: str,
    dst: str,
    sport: int,
    dport: int,
    flags: int = 0,
    seq: int = 0,
    payload: bytes = b"",
) -> bytes:
    tcp = struct.pack("!HHIIBBHHH", sport, dport, seq, 0, 5 << 4, flags, 65535, 0, 0)
    ip = struct.pack(
        "!IHBB16s16s",
        6 << 28,
        len(tcp) + len(payload),
        6,
        64,
        ipaddress.IPv6Address(src).packed,
        ipaddress.IPv6Address(dst).packed,
    )
    return ip + tcp + payload


def ipv4_udp(src: str, dst: str, sport: int, dport: int, payload: bytes = b"") -> bytes:
    udp = struct.pack("!HHHH", sport, dport, 8 + len(payload), 0)
    total = 20 + len(udp) + len(payload)
    ip = struct.pack(
        "!BBHHHBBH4s4s",
        0x45,
        0,
        total,
        1,
        0,
        64,
        17,
        0,
        ipaddress.IPv4Address(src).packed,
        ipaddress.IPv4Address(dst).packed,
    )
    return ip + udp + payload


def with_ethernet(ip_packet: bytes, ipv6: bool = False) -> bytes:
    ethertype = 0x86DD if ipv6 else 0x0800
    return b"\x02" * 6 + b"\x04" * 6 + struct.pack("!H", ethertype) + ip_packet


def pcap_file(
    packets: list[bytes],
    link_type: int = LINK_ETHERNET,
    big_endian: bool = False,
    timestamps: list[tuple[int, int]] | None = None,
) -> bytes:
    endian = ">" if big_endian else "<"
    out = bytearray(
        struct.pack(f"{endian}IHHiIII", 0xA1B2C3D4, 2, 4, 0, 0, 65535, link_type)
    )
    for i, packet in enumerate(packets):
        ts_sec, ts_usec = (timestamps[i] if timestamps else (i, 0))
        out.extend(
            struct.pack(f"{endian}IIII", ts_sec, ts_usec, len(packet), len(packet))
        )
        out.extend(packet)
    return bytes(out)


def eth_pcap(packets: list[bytes], **kwargs) -> bytes:
    """Wrap IP packets in Ethernet frames and a little-endian pcap file."""
    frames = [with_ethernet(p, ipv6=(p[0] >> 4) == 6) for p in packets]
    return pcap_file(frames, link_type=LINK_ETHERNET, **kwargs)
