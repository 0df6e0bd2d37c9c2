"""Fourier coefficients of level-one holomorphic Hecke eigenforms.

Everything here is exact integer arithmetic.  The discriminant form is
built from the cube of the Euler product prod(1 - q^n), which is a
lacunary series with +-(2m+1) at the triangular numbers m(m+1)/2; three
successive squarings give the weight-12 coefficients.  Higher one-
dimensional weights (16, 18, 20, 22, 26) multiply in Eisenstein factors.
An independent route through E4^3 - E6^2 serves as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import ntt

__all__ = [
    "SUPPORTED_WEIGHTS",
    "UnsupportedWeight",
    "EigenformTable",
    "HeckeReport",
    "eta_cubed_sparse",
    "series_square",
    "series_mul",
    "sigma_series",
    "eisenstein_e4",
    "eisenstein_e6",
    "generate_delta",
    "delta_via_eisenstein",
    "eigenform",
    "hecke_report",
]

# weight -> Eisenstein exponents (a, b) with 4a + 6b = weight - 12
SUPPORTED_WEIGHTS: dict[int, tuple[int, int]] = {
    12: (0, 0),
    16: (1, 0),
    18: (0, 1),
    20: (2, 0),
    22: (1, 1),
    26: (2, 1),
}

_SCHOOLBOOK_CUTOFF = 128


class UnsupportedWeight(ValueError):
    """Weight outside the one-dimensional eigenform range handled here."""


@dataclass
class EigenformTable:
    """Exact coefficients a(1..N) of a normalized eigenform; a[0] = 0."""

    weight: int
    N: int
    a: list[int] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.a) != self.N + 1:
            raise ValueError("coefficient list must have length N + 1")


def eta_cubed_sparse(n: int) -> list[int]:
    """q-expansion of prod(1-q^j)^3 to degree n: (-1)^m (2m+1) at m(m+1)/2."""
    if n < 0:
        raise ValueError("series degree must be >= 0")
    out = [0] * (n + 1)
    m = 0
    while m * (m + 1) // 2 <= n:
        out[m * (m + 1) // 2] = (2 * m + 1) if m % 2 == 0 else -(2 * m + 1)
        m += 1
    return out


def _schoolbook_mul(a: list[int], b: list[int], n: int) -> list[int]:
    a = a[: n + 1]
    b = b[: n + 1]
    out = [0] * (min(len(a) + len(b) - 2, n) + 1)
    for i, ai in enumerate(a):
        if ai:
            top = min(len(b), n + 1 - i)
            for j in range(top):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def series_square(a: list[int], n: int, method: str = "auto") -> list[int]:
    """Exact truncated square of an integer q-series.

    method "auto" picks schoolbook for short inputs and the multimodular
    NTT otherwise; "schoolbook" is retained as an independent oracle.
    """
    return series_mul(a, a, n, method)


def series_mul(a: list[int], b: list[int], n: int, method: str = "auto") -> list[int]:
    """Exact truncated product of two integer q-series."""
    if method == "auto":
        method = "schoolbook" if min(len(a), len(b), n + 1) <= _SCHOOLBOOK_CUTOFF else "ntt"
    if method == "schoolbook":
        return _schoolbook_mul(a, a, n) if b is a else _schoolbook_mul(a, b, n)
    if method == "ntt":
        return ntt.multimod_mul(a, b, n)
    raise ValueError(f"unknown method {method!r}")


def sigma_series(power: int, n: int) -> list[int]:
    """[0, sigma_power(1), ..., sigma_power(n)] by divisor sieve."""
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        dp = d**power
        for m in range(d, n + 1, d):
            out[m] += dp
    return out


def eisenstein_e4(n: int) -> list[int]:
    """E4 = 1 + 240 sum sigma_3(m) q^m."""
    sig = sigma_series(3, n)
    return [1] + [240 * s for s in sig[1:]]


def eisenstein_e6(n: int) -> list[int]:
    """E6 = 1 - 504 sum sigma_5(m) q^m."""
    sig = sigma_series(5, n)
    return [1] + [-504 * s for s in sig[1:]]


def generate_delta(n: int) -> EigenformTable:
    """tau(1..n) via q * (eta-cube series)^8 = q * ((x^2)^2)^2."""
    if n < 1:
        raise ValueError("need at least one coefficient")
    deg = n - 1  # eta part carries degrees 0 .. n-1 after the q shift
    x = eta_cubed_sparse(deg)
    for _ in range(3):
        x = series_square(x, deg)
    a = [0] + x
    assert a[1] == 1
    return EigenformTable(weight=12, N=n, a=a)


def delta_via_eisenstein(n: int) -> EigenformTable:
    """tau(1..n) via (E4^3 - E6^2) / 1728; exact divisibility is enforced."""
    if n < 1:
        raise ValueError("need at least one coefficient")
    e4 = eisenstein_e4(n)
    e6 = eisenstein_e6(n)
    e4cube = series_mul(series_square(e4, n), e4, n)
    e6sq = series_square(e6, n)
    a = [0] * (n + 1)
    for m in range(n + 1):
        num = e4cube[m] - e6sq[m]
        q, r = divmod(num, 1728)
        if r:
            raise ArithmeticError(f"E4^3 - E6^2 not divisible by 1728 at index {m}")
        a[m] = q
    if a[0] != 0 or a[1] != 1:
        raise ArithmeticError("normalization failed: expected q + O(q^2)")
    return EigenformTable(weight=12, N=n, a=a)


def eigenform(weight: int, n: int) -> EigenformTable:
    """Coefficient table of the normalized eigenform of the given weight."""
    try:
        pow4, pow6 = SUPPORTED_WEIGHTS[weight]
    except KeyError:
        raise UnsupportedWeight(
            f"weight {weight} not in {sorted(SUPPORTED_WEIGHTS)}"
        ) from None
    delta = generate_delta(n)
    coeffs = delta.a
    if pow4 or pow6:
        for _ in range(pow4):
            coeffs = series_mul(coeffs, eisenstein_e4(n), n)
        for _ in range(pow6):
            coeffs = series_mul(coeffs, eisenstein_e6(n), n)
    if coeffs[0] != 0 or coeffs[1] != 1:
        raise ArithmeticError("normalization failed: expected q + O(q^2)")
    return EigenformTable(weight=weight, N=n, a=coeffs)


@dataclass
class HeckeReport:
    """Outcome of exact Hecke-relation checks on a coefficient table."""

    weight: int
    bound: int
    multiplicative_checked: int = 0
    power_checked: int = 0
    deligne_checked: int = 0
    first_multiplicative_failure: tuple[int, int] | None = None
    first_power_failure: tuple[int, int] | None = None  # (p, r): a[p^(r+1)] wrong
    first_deligne_failure: int | None = None

    @property
    def ok(self) -> bool:
        return (
            self.first_multiplicative_failure is None
            and self.first_power_failure is None
            and self.first_deligne_failure is None
        )


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def hecke_report(table: EigenformTable, bound: int) -> HeckeReport:
    """Verify multiplicativity, prime-power recursion and the Deligne bound.

    All identities are checked in exact integer arithmetic for indices
    up to `bound`.  The report keeps counts and the first failure of
    each kind; `bound` = 1 is vacuous by design.
    """
    if bound > table.N:
        raise ValueError("bound exceeds table range")
    rep = HeckeReport(weight=table.weight, bound=bound)
    a = table.a
    k = table.weight

    # coprime multiplicativity a(mn) = a(m) a(n), 2 <= m <= n, mn <= bound
    for m in range(2, math.isqrt(bound) + 1):
        for n in range(m, bound // m + 1):
            if math.gcd(m, n) == 1:
                rep.multiplicative_checked += 1
                if a[m * n] != a[m] * a[n] and rep.first_multiplicative_failure is None:
                    rep.first_multiplicative_failure = (m, n)

    primes = _primes_up_to(bound)
    pk = {p: p ** (k - 1) for p in primes}

    # a(p^(r+1)) = a(p) a(p^r) - p^(k-1) a(p^(r-1))
    for p in primes:
        q = p * p
        r = 1
        while q <= bound:
            rep.power_checked += 1
            lhs = a[q]
            rhs = a[p] * a[q // p] - pk[p] * a[q // (p * p)]
            if lhs != rhs and rep.first_power_failure is None:
                rep.first_power_failure = (p, r)
            q *= p
            r += 1

    # Deligne: a(p)^2 <= 4 p^(k-1)
    for p in primes:
        rep.deligne_checked += 1
        if a[p] * a[p] > 4 * pk[p] and rep.first_deligne_failure is None:
            rep.first_deligne_failure = p
    return rep
