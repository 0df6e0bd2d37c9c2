"""Exact multimodular convolution against the schoolbook oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspsum.forms import _schoolbook_mul
from cuspsum.ntt import (
    MODULI,
    ReconstructionOverflow,
    _garner,
    _ntt,
    _select_primes,
    multimod_mul,
    multimod_square,
)

coeffs = st.integers(min_value=-(2**96), max_value=2**96)
small_coeffs = st.integers(min_value=-3, max_value=3)


@given(
    st.lists(coeffs, min_size=1, max_size=80),
    st.lists(coeffs, min_size=1, max_size=80),
)
@settings(max_examples=60, deadline=None)
def test_mul_matches_schoolbook(a, b):
    n = len(a) + len(b) - 2
    assert multimod_mul(a, b, n) == _schoolbook_mul(a, b, n)


@given(st.lists(small_coeffs, min_size=1, max_size=40))
@settings(max_examples=60, deadline=None)
def test_square_matches_schoolbook(a):
    n = 2 * len(a) - 2
    assert multimod_square(a, n) == _schoolbook_mul(a, a, n)


@given(
    st.lists(coeffs, min_size=3, max_size=40),
    st.lists(coeffs, min_size=3, max_size=40),
    st.integers(min_value=0, max_value=20),
)
@settings(max_examples=40, deadline=None)
def test_truncation_prefix(a, b, n):
    full = _schoolbook_mul(a, b, len(a) + len(b) - 2)
    assert multimod_mul(a, b, n) == full[: n + 1]


def test_known_squares():
    assert multimod_square([1], 0) == [1]
    assert multimod_square([1, 1], 2) == [1, 2, 1]
    assert multimod_mul([0, 1], [0, 1], 2) == [0, 0, 1]
    assert multimod_mul([2], [-3], 0) == [-6]


def test_huge_coefficients_exact():
    a = [(-1) ** i * (3**i + i) for i in range(120)]
    b = [(7**i - 5 * i) % (2**80) - 2**79 for i in range(90)]
    n = len(a) + len(b) - 2
    assert multimod_mul(a, b, n) == _schoolbook_mul(a, b, n)


def test_forward_inverse_roundtrip_every_prime():
    rng = np.random.default_rng(11)
    for p, g in MODULI:
        vec = rng.integers(0, p, size=32, dtype=np.int64)
        back = _ntt(_ntt(vec.copy(), p, g, inverse=False), p, g, inverse=True)
        assert np.array_equal(back % p, vec % p)


def test_garner_reconstructs_balanced_values():
    primes = [p for p, _ in MODULI[:3]]
    modulus = primes[0] * primes[1] * primes[2]
    values = [0, 1, -1, 12345678901234567, -(modulus // 2) + 7]
    rows = [np.array([v % p for v in values], dtype=np.int64) for p in primes]
    assert _garner(rows, primes) == values


def test_select_primes_covers_bound():
    got = _select_primes(2**100)
    prod = 1
    for p, _ in got:
        prod *= p
    assert prod >= 2 * 2**100 + 1
    # a small bound should not drag in the whole pool
    assert len(_select_primes(10)) == 1


def test_reconstruction_overflow_raised():
    a = [2**165] * 300
    with pytest.raises(ReconstructionOverflow):
        multimod_mul(a, a, 598)


def test_overflow_error_before_any_silent_wrap():
    # the certified bound for this product sits just past the whole pool
    with pytest.raises(ReconstructionOverflow):
        _select_primes(2**335)
