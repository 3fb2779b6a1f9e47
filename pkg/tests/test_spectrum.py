import numpy as np
import pytest
from hypothesis import given, strategies as st

from idemldpc.construct import IdempotentSpec, parity_check_idempotent
from idemldpc.field import ZERO, splitting_field
from idemldpc.ring import RingPoly, parse_poly
from idemldpc.spectrum import (
    SpectrumError,
    analyze,
    check_binary,
    dimension_and_run,
    inverse_ms,
    max_cyclic_run,
    ms_transform,
)

from conftest import EXAMPLE1_U

SF21 = splitting_field(21, 6)


@pytest.mark.parametrize(
    "mask,run",
    [
        ([1, 1, 0, 1], 3),
        ([0, 0, 0], 0),
        ([1, 1, 1], 3),
        ([1, 0, 1, 1, 0, 1, 1, 1, 0], 3),
        ([1, 0, 0, 0, 1, 1], 3),
    ],
)
def test_max_cyclic_run(mask, run):
    assert max_cyclic_run(np.array(mask, dtype=bool)) == run


@given(st.lists(st.booleans(), min_size=1, max_size=40))
def test_max_cyclic_run_matches_doubling(mask):
    mask = np.array(mask)
    n = len(mask)
    doubled = np.concatenate([mask, mask])
    best = run = 0
    for b in doubled:
        run = run + 1 if b else 0
        best = max(best, run)
    assert max_cyclic_run(mask) == min(best, n)


def test_example_spectrum():
    u, _ = parse_poly(EXAMPLE1_U, 21, SF21.small)
    spec = ms_transform(u, SF21)
    assert check_binary(spec)
    k, d0 = dimension_and_run(spec)
    assert (k, d0) == (15, 4)
    an = analyze(u, SF21)
    assert (an.k, an.lower, an.upper) == (15, 5, 5)


def test_spectrum_of_one_is_all_ones():
    u = RingPoly.monomial(21, SF21.small, 0)
    spec = ms_transform(u, SF21)
    assert np.all(spec.coeffs == 0)
    assert inverse_ms(spec) == u


def test_non_idempotent_is_rejected():
    u, _ = parse_poly("b1*x", 21, SF21.small)
    assert not check_binary(ms_transform(u, SF21))
    with pytest.raises(SpectrumError):
        analyze(u, SF21)


def test_inverse_leaving_the_subfield():
    sf = splitting_field(51, 2)
    spec = ms_transform(RingPoly.monomial(51, sf.small, 0), sf)
    coeffs = spec.coeffs.copy()
    coeffs[1] = 1  # alpha itself is not in GF(4)
    with pytest.raises(SpectrumError):
        inverse_ms(type(spec)(coeffs, spec.r, sf))


def test_field_mismatch():
    u = RingPoly.monomial(21, splitting_field(21, 3).small, 0)
    with pytest.raises(SpectrumError):
        ms_transform(u, SF21)


def _poly(n, sf):
    return st.lists(st.integers(-1, sf.small.order - 1), min_size=n, max_size=n).map(
        lambda c: RingPoly(np.array(c), sf.small)
    )


@given(_poly(21, SF21), _poly(21, SF21))
def test_transform_is_linear_and_invertible(a, b):
    A, B, S = ms_transform(a, SF21), ms_transform(b, SF21), ms_transform(a + b, SF21)
    big = SF21.big
    assert np.array_equal(S.coeffs, big.from_ints(big.to_ints(A.coeffs) ^ big.to_ints(B.coeffs)))
    assert inverse_ms(A) == a


@pytest.mark.parametrize("n,m", [(15, 1), (21, 1), (31, 1), (9, 2)])
def test_binary_roundtrip(n, m):
    sf = splitting_field(n, m)
    rng = np.random.default_rng(n)
    for _ in range(50):
        a = RingPoly(np.where(rng.random(n) < 0.5, 0, ZERO), sf.small)
        assert inverse_ms(ms_transform(a, sf)) == a


def test_dimension_matches_gcd_for_sums():
    sf = splitting_field(63, 3)
    spec = IdempotentSpec.of(63, 3, {9: 0, 11: 1, 21: 0, 27: 0})
    an = analyze(parity_check_idempotent(spec, sf), sf)
    assert an.k == 63 - int(np.count_nonzero(an.spectrum.ones()))


def test_constant_one_has_no_code():
    an = analyze(RingPoly.from_terms(21, SF21.small, {0: 0}), SF21)
    assert an.k == 0 and bool(np.all(an.spectrum.ones()))
