"""Binary table cache: round-trips, checksum integrity, path policy."""

import os
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspsum.cache import (
    MAGIC,
    CacheFormatError,
    default_cache_path,
    encode_payload,
    fnv1a64,
    read_table,
    write_table,
)
from cuspsum.forms import EigenformTable, generate_delta


def roundtrip(tmp_path, table):
    path = tmp_path / "t.csp"
    write_table(path, table)
    return read_table(path)


def test_roundtrip_delta(tmp_path):
    t = generate_delta(500)
    got = roundtrip(tmp_path, t)
    assert got.weight == t.weight and got.N == t.N and got.a == t.a


def test_roundtrip_extreme_values(tmp_path):
    a = [0, 1, 0, -1, 2**200, -(2**200), 63, -64, 127, -12345678901234567890]
    t = EigenformTable(weight=16, N=len(a) - 1, a=a)
    got = roundtrip(tmp_path, t)
    assert got.a == a and got.weight == 16


@given(st.lists(st.integers(min_value=-(2**130), max_value=2**130), min_size=1, max_size=60))
@settings(max_examples=50, deadline=None)
def test_roundtrip_random(tmp_path_factory, values):
    tmp = tmp_path_factory.mktemp("cache")
    t = EigenformTable(weight=12, N=len(values), a=[0] + values)
    assert roundtrip(tmp, t).a == [0] + values


def test_encoding_deterministic(tmp_path):
    t = generate_delta(200)
    p1 = tmp_path / "a.csp"
    p2 = tmp_path / "b.csp"
    write_table(p1, t)
    write_table(p2, t)
    assert p1.read_bytes() == p2.read_bytes()


def test_checksum_covers_every_byte(tmp_path):
    t = generate_delta(100)
    path = tmp_path / "t.csp"
    write_table(path, t)
    blob = bytearray(path.read_bytes())
    for index in (0, 5, len(blob) // 2, len(blob) - 9):
        mutated = bytearray(blob)
        mutated[index] ^= 0x40
        path.write_bytes(bytes(mutated))
        with pytest.raises(CacheFormatError):
            read_table(path)
    path.write_bytes(bytes(blob))
    assert read_table(path).a == t.a


def test_bad_checksum_field_rejected(tmp_path):
    t = generate_delta(50)
    path = tmp_path / "t.csp"
    write_table(path, t)
    blob = bytearray(path.read_bytes())
    blob[-1] ^= 0x01
    path.write_bytes(bytes(blob))
    with pytest.raises(CacheFormatError):
        read_table(path)


def test_truncated_file_rejected(tmp_path):
    t = generate_delta(50)
    path = tmp_path / "t.csp"
    write_table(path, t)
    blob = path.read_bytes()
    path.write_bytes(blob[: len(blob) - 3])
    with pytest.raises(CacheFormatError):
        read_table(path)
    path.write_bytes(b"CS")
    with pytest.raises(CacheFormatError):
        read_table(path)


def test_bad_magic_rejected(tmp_path):
    t = generate_delta(10)
    payload = bytearray(encode_payload(t))
    payload[:4] = b"XXXX"
    blob = bytes(payload) + struct.pack("<Q", fnv1a64(bytes(payload)))
    path = tmp_path / "t.csp"
    path.write_bytes(blob)
    with pytest.raises(CacheFormatError):
        read_table(path)


def test_coefficient_count_must_match_header(tmp_path):
    t = EigenformTable(weight=12, N=3, a=[0, 1, 2, 3])
    payload = bytearray(encode_payload(t))
    # claim four coefficients while the stream still encodes three
    payload[8:16] = struct.pack("<Q", 4)
    blob = bytes(payload) + struct.pack("<Q", fnv1a64(bytes(payload)))
    path = tmp_path / "t.csp"
    path.write_bytes(blob)
    with pytest.raises(CacheFormatError):
        read_table(path)


def test_payload_layout():
    t = EigenformTable(weight=12, N=2, a=[0, 1, -24])
    payload = encode_payload(t)
    assert payload[:4] == MAGIC
    weight, n = struct.unpack("<IQ", payload[4:16])
    assert (weight, n) == (12, 2)
    # zig-zag varints: 1 -> 0x02, -24 -> 0x2F
    assert payload[16:] == bytes([0x02, 0x2F])


def test_default_cache_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CUSPSUM_CACHE_DIR", str(tmp_path / "envcache"))
    p = default_cache_path(12, 777)
    assert p == os.path.join(str(tmp_path / "envcache"), "k12_n777.csp")
    monkeypatch.delenv("CUSPSUM_CACHE_DIR")
    assert default_cache_path(16, 5) == os.path.join(".cuspsum_cache", "k16_n5.csp")
    assert default_cache_path(16, 5, str(tmp_path)) == os.path.join(
        str(tmp_path), "k16_n5.csp"
    )


def test_write_creates_parent_dirs(tmp_path):
    t = generate_delta(10)
    path = tmp_path / "deep" / "nested" / "t.csp"
    write_table(path, t)
    assert read_table(path).a == t.a


def test_fnv1a64_reference_vectors():
    # classical FNV-1a 64-bit test vectors
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a64(b"foobar") == 0x85944171F73967E8
