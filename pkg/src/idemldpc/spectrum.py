"""Mattson-Solomon transform and the spectral reading of a cyclic code.

For a ring element ``a(x)`` the transform evaluates it at the powers
``alpha^(-r*j)`` of a primitive n-th root of unity in GF(2^m').  The inverse
sums ``A_j * alpha^(r*i*j)`` over ``j``; the ``1/n`` factor is dropped since n
is odd and the characteristic is 2, so ``n * x = x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import ZERO, SplittingField
from .ring import RingPoly, gcd_with_xn, poly_degree, poly_weight, quotient_xn


class SpectrumError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Spectrum:
    """``A_j`` for ``j = 0..n-1`` as log-form elements of GF(2^m')."""

    coeffs: np.ndarray
    r: int
    sf: SplittingField

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def is_binary(self) -> bool:
        return check_binary(self)

    def ones(self) -> np.ndarray:
        """Boolean mask of coefficients equal to 1; meaningful on binary spectra."""
        return self.coeffs == 0


def _root_order_ok(sf: SplittingField) -> bool:
    order = sf.big.order
    return order % sf.n == 0 and sf.r * sf.n == order


def ms_transform(a: RingPoly, sf: SplittingField) -> Spectrum:
    if not _root_order_ok(sf) or a.n != sf.n:
        raise SpectrumError(f"alpha^{sf.r} is not a primitive {a.n}-th root of unity")
    if a.field.degree != sf.m:
        raise SpectrumError("polynomial is not over the code's symbol field")
    n, order = sf.n, sf.big.order
    sup = a.support()
    if len(sup) == 0:
        return Spectrum(np.full(n, ZERO), sf.r, sf)
    emb = sf.embed(a.coeffs[sup])
    j = np.arange(n)
    expo = (emb[None, :] - sf.r * (np.outer(j, sup) % n)) % order
    vals = np.bitwise_xor.reduce(sf.big.exp[expo], axis=1)
    return Spectrum(sf.big.from_ints(vals), sf.r, sf)


def inverse_ms(spec: Spectrum) -> RingPoly:
    """Inverse transform; the result must lie in the symbol field GF(2^m)."""
    sf = spec.sf
    n, order = sf.n, sf.big.order
    nz = np.flatnonzero(spec.coeffs != ZERO)
    if len(nz) == 0:
        return RingPoly.zero(n, sf.small)
    i = np.arange(n)
    expo = (spec.coeffs[nz][None, :] + sf.r * (np.outer(i, nz) % n)) % order
    logs = sf.big.from_ints(np.bitwise_xor.reduce(sf.big.exp[expo], axis=1))
    nonzero = logs != ZERO
    if np.any(logs[nonzero] % (sf.l % order or order)):
        raise SpectrumError("inverse transform leaves GF(2^m)")
    small = np.where(nonzero, logs // (sf.l % order or order), ZERO)
    if sf.m == 1:
        small = np.where(nonzero, 0, ZERO)
    return RingPoly(small, sf.small)


def check_binary(spec: Spectrum) -> bool:
    return bool(np.all((spec.coeffs == ZERO) | (spec.coeffs == 0)))


def max_cyclic_run(mask: np.ndarray) -> int:
    """Longest run of True taken cyclically; a full run returns ``len(mask)``."""
    mask = np.asarray(mask, dtype=bool)
    if mask.all():
        return len(mask)
    if not mask.any():
        return 0
    # rotate so the sequence starts right after a False
    start = int(np.flatnonzero(~mask)[0]) + 1
    rolled = np.concatenate([mask[start:], mask[:start]])
    best = run = 0
    for bit in rolled:
        run = run + 1 if bit else 0
        best = max(best, run)
    return best


@dataclass(frozen=True, eq=False)
class SpectralAnalysis:
    spectrum: Spectrum
    k: int
    d0: int
    h: np.ndarray
    g: np.ndarray
    weight_u: int

    @property
    def lower(self) -> int:
        """BCH lower bound on d_min: one more than the longest run of ones."""
        return self.d0 + 1

    @property
    def upper(self) -> int:
        return min(poly_weight(self.g), 1 + self.weight_u)


def dimension_and_run(spec: Spectrum) -> tuple[int, int]:
    ones = spec.ones()
    return int(np.count_nonzero(spec.coeffs == ZERO)), max_cyclic_run(ones)


def analyze(u: RingPoly, sf: SplittingField) -> SpectralAnalysis:
    """Dimension, BCH run and distance bounds of the code with check idempotent u.

    k counts the zeros of U(z) and must agree with ``deg gcd(u, 1 + x^n)``;
    the upper bound reads g(x) as ``(1 + x^n) / gcd(u, 1 + x^n)``.
    """
    spec = ms_transform(u, sf)
    if not check_binary(spec):
        raise SpectrumError("U(z) is not binary: u(x) is not an idempotent")
    k, d0 = dimension_and_run(spec)
    if u.is_zero():
        raise SpectrumError("u(x) = 0 defines no parity checks")
    h = gcd_with_xn(u)
    if poly_degree(h) != k:
        raise SpectrumError(f"zero count {k} disagrees with deg gcd(u, 1+x^n) = {poly_degree(h)}")
    g = quotient_xn(h, sf.n, sf.small)
    return SpectralAnalysis(spec, k, d0, h, g, u.weight())
