"""On-disk coefficient cache.

Layout: magic b"CSP1", little-endian u32 weight, u64 N, then the N
coefficients a(1..N) as zig-zag varints (7-bit groups, continuation bit
0x80, least-significant group first).  A 64-bit FNV-1a checksum of every
preceding byte is appended little-endian.  Readers reject anything with
a wrong magic or checksum rather than guessing.
"""

from __future__ import annotations

import os
import struct

from .forms import EigenformTable

__all__ = ["CacheFormatError", "write_table", "read_table", "default_cache_path"]

MAGIC = b"CSP1"

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


class CacheFormatError(ValueError):
    """Cache file is not a valid coefficient table."""


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = (h ^ b) * _FNV_PRIME & _MASK64
    return h


def _zigzag(x: int) -> int:
    return x << 1 if x >= 0 else ((-x) << 1) - 1


def _unzigzag(z: int) -> int:
    return z >> 1 if z & 1 == 0 else -((z + 1) >> 1)


def _write_varint(out: bytearray, z: int) -> None:
    while z > 0x7F:
        out.append((z & 0x7F) | 0x80)
        z >>= 7
    out.append(z)


def encode_payload(table: EigenformTable) -> bytes:
    out = bytearray()
    out += MAGIC
    out += struct.pack("<IQ", table.weight, table.N)
    for x in table.a[1:]:
        _write_varint(out, _zigzag(x))
    return bytes(out)


def write_table(path: str | os.PathLike, table: EigenformTable) -> None:
    """Write atomically (tmp file + rename), creating parent directories."""
    payload = encode_payload(table)
    blob = payload + struct.pack("<Q", fnv1a64(payload))
    target = os.fspath(path)
    parent = os.path.dirname(target)
    if parent:
        os.makedirs(parent, exist_ok=True)
    tmp = target + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, target)


def read_table(path: str | os.PathLike) -> EigenformTable:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(MAGIC) + 12 + 8:
        raise CacheFormatError("file too short")
    if blob[:4] != MAGIC:
        raise CacheFormatError("bad magic")
    payload, tail = blob[:-8], blob[-8:]
    (expect,) = struct.unpack("<Q", tail)
    if fnv1a64(payload) != expect:
        raise CacheFormatError("checksum mismatch")
    weight, n = struct.unpack("<IQ", payload[4:16])
    coeffs = [0]
    z = 0
    shift = 0
    for b in payload[16:]:
        z |= (b & 0x7F) << shift
        if b & 0x80:
            shift += 7
        else:
            coeffs.append(_unzigzag(z))
            z = 0
            shift = 0
    if shift != 0:
        raise CacheFormatError("truncated varint")
    if len(coeffs) != n + 1:
        raise CacheFormatError(f"expected {n} coefficients, decoded {len(coeffs) - 1}")
    return EigenformTable(weight=weight, N=n, a=coeffs)


def default_cache_path(weight: int, n: int, cache_dir: str | None = None) -> str:
    """Canonical location k<weight>_n<N>.csp under the cache directory.

    The directory comes from `cache_dir`, else $CUSPSUM_CACHE_DIR, else
    ./.cuspsum_cache relative to the working directory.
    """
    base = cache_dir or os.environ.get("CUSPSUM_CACHE_DIR") or ".cuspsum_cache"
    return os.path.join(base, f"k{weight}_n{n}.csp")
