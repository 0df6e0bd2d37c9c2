"""Exact integer polynomial products via multimodular number-theoretic transforms.

Coefficients are arbitrary-precision Python ints.  Products are computed
modulo a fixed pool of NTT-friendly primes (each p = c * 2^e + 1 with
e >= 23, p < 2^31, so every int64 product of two residues stays below
2^63) and recombined by Garner's mixed-radix CRT.  The number of primes
is chosen per call from a certified bound on the output coefficients;
if the whole pool is too small the call fails loudly rather than wrap.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["ReconstructionOverflow", "MODULI", "multimod_mul", "multimod_square"]


class ReconstructionOverflow(RuntimeError):
    """Prime pool cannot certify exact reconstruction of the product."""


# (prime, primitive root).  v2(p - 1) >= 23 for every entry, so cyclic
# convolutions up to length 2^23 are supported by the whole pool, whose
# product certifies coefficients up to ~2^330 in absolute value.
MODULI: tuple[tuple[int, int], ...] = (
    (2113929217, 5),   # 63 * 2^25 + 1
    (2013265921, 31),  # 15 * 2^27 + 1
    (1811939329, 13),  # 27 * 2^26 + 1
    (998244353, 3),    # 119 * 2^23 + 1
    (754974721, 11),   # 45 * 2^24 + 1
    (469762049, 3),    # 7 * 2^26 + 1
    (167772161, 3),    # 5 * 2^25 + 1
    (2130706433, 3),   # 127 * 2^24 + 1
    (1711276033, 29),  # 51 * 2^25 + 1
    (1224736769, 3),   # 73 * 2^24 + 1
    (1107296257, 10),  # 33 * 2^25 + 1
)

_MAX_LOG2_LEN = 23

_INT64_SAFE = 2**62  # inputs below this reduce via vectorized remainder

_bitrev_cache: dict[int, np.ndarray] = {}
_twiddle_cache: dict[tuple[int, int, bool], np.ndarray] = {}


def _bit_reverse_indices(n: int) -> np.ndarray:
    out = _bitrev_cache.get(n)
    if out is None:
        bits = n.bit_length() - 1
        idx = np.arange(n, dtype=np.int64)
        out = np.zeros_like(idx)
        for b in range(bits):
            out |= ((idx >> b) & 1) << (bits - 1 - b)
        _bitrev_cache[n] = out
    return out


def _root_power_table(p: int, g: int, n: int, inverse: bool) -> np.ndarray:
    """Powers w^0 .. w^(n/2 - 1) of a primitive n-th root of unity mod p."""
    key = (p, n, inverse)
    out = _twiddle_cache.get(key)
    if out is None:
        w = pow(g, (p - 1) // n, p)
        if inverse:
            w = pow(w, p - 2, p)
        out = np.empty(n // 2, dtype=np.int64)
        out[0] = 1
        size = 1
        while size < n // 2:
            # doubling: [w^0..w^(s-1)] -> append each times w^s
            step = pow(w, size, p)
            nxt = min(size, n // 2 - size)
            out[size:size + nxt] = out[:nxt] * step % p
            size += nxt
        # keep only a handful of tables resident; lengths vary little in practice
        if len(_twiddle_cache) > 40:
            _twiddle_cache.clear()
        _twiddle_cache[key] = out
    return out


def _ntt(vec: np.ndarray, p: int, g: int, inverse: bool) -> np.ndarray:
    """In-place radix-2 transform of int64 residues (natural order in/out)."""
    n = len(vec)
    table = _root_power_table(p, g, n, inverse)
    vec = vec[_bit_reverse_indices(n)]
    length = 2
    while length <= n:
        half = length // 2
        w = table[:: n // length][:half]
        a = vec.reshape(-1, length)
        u = a[:, :half]
        v = a[:, half:] * w % p
        a[:, :half], a[:, half:] = (u + v) % p, (u - v) % p
        length *= 2
    if inverse:
        vec = vec * pow(n, p - 2, p) % p
    return vec


def _residues(coeffs: list[int], fits_int64: bool, p: int, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=np.int64)
    if fits_int64:
        out[: len(coeffs)] = np.array(coeffs, dtype=np.int64) % p
    else:
        out[: len(coeffs)] = np.array([c % p for c in coeffs], dtype=np.int64)
    return out


def _abs_stats(coeffs: list[int]) -> tuple[int, int]:
    """(sum |c|, max |c|) computed exactly."""
    total = 0
    biggest = 0
    for c in coeffs:
        if c < 0:
            c = -c
        total += c
        if c > biggest:
            biggest = c
    return total, biggest


def _garner(residue_rows: list[np.ndarray], primes: list[int]) -> list[int]:
    """Recombine per-prime residues into signed ints (balanced around 0)."""
    digits = [residue_rows[0]]
    for i in range(1, len(primes)):
        p = primes[i]
        acc = digits[0] % p
        c = 1  # prefix product p_0 .. p_{j-1} reduced mod p
        for j in range(1, i):
            c = c * primes[j - 1] % p
            acc = (acc + digits[j] * c) % p
        c = c * primes[i - 1] % p if i > 1 else primes[0] % p
        inv = pow(c, -1, p)
        digits.append((residue_rows[i] - acc) % p * inv % p)

    modulus = math.prod(primes)
    half = modulus >> 1
    rows = [d.tolist() for d in digits]
    rev_primes = primes[-2::-1]
    out = []
    for digit_tuple in zip(*rows):
        v = digit_tuple[-1]
        for p, d in zip(rev_primes, digit_tuple[-2::-1]):
            v = v * p + d
        out.append(v if v <= half else v - modulus)
    return out


def _select_primes(bound: int) -> list[tuple[int, int]]:
    """Smallest prefix of the pool whose product exceeds 2*bound + 1."""
    target = 2 * bound + 1
    acc = 1
    chosen = []
    for p, g in MODULI:
        chosen.append((p, g))
        acc *= p
        if acc >= target:
            return chosen
    raise ReconstructionOverflow(
        f"certified coefficient bound needs {target.bit_length()} bits "
        f"but the prime pool only provides {acc.bit_length()}"
    )


def multimod_mul(a: list[int], b: list[int], n_trunc: int) -> list[int]:
    """Exact coefficients of a*b up to degree n_trunc."""
    if n_trunc < 0:
        raise ValueError("n_trunc must be >= 0")
    square = b is a
    a = a[: n_trunc + 1]
    b = a if square else b[: n_trunc + 1]
    if not a or not b:
        return []
    sum_a, max_a = _abs_stats(a)
    sum_b, max_b = (sum_a, max_a) if square else _abs_stats(b)
    # every output coefficient is a subsum of products a_i * b_j
    bound = min(sum_a * max_b, sum_b * max_a)
    primes = _select_primes(bound)

    deg = len(a) + len(b) - 2
    n_out = min(deg, n_trunc) + 1
    length = 2
    while length < deg + 1:
        length <<= 1
    if length.bit_length() - 1 > _MAX_LOG2_LEN:
        raise ReconstructionOverflow(
            f"transform length 2^{length.bit_length() - 1} exceeds pool support 2^{_MAX_LOG2_LEN}"
        )

    fits_a = max_a < _INT64_SAFE
    fits_b = fits_a if square else max_b < _INT64_SAFE
    rows = []
    for p, g in primes:
        fa = _ntt(_residues(a, fits_a, p, length), p, g, inverse=False)
        fb = fa if square else _ntt(_residues(b, fits_b, p, length), p, g, inverse=False)
        rows.append(_ntt(fa * fb % p, p, g, inverse=True)[:n_out])

    if len(primes) == 1:
        p = primes[0][0]
        half = p >> 1
        return [v if v <= half else v - p for v in rows[0].tolist()]
    return _garner(rows, [p for p, _ in primes])


def multimod_square(a: list[int], n_trunc: int) -> list[int]:
    """Exact coefficients of a^2 up to degree n_trunc."""
    return multimod_mul(a, a, n_trunc)
