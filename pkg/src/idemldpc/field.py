"""Arithmetic in GF(2^a) using exp/log tables.

Elements are passed around as discrete logarithms relative to the field
generator, with ``ZERO = -1`` standing in for the additive identity.  Vectors
of elements are plain ``numpy`` integer arrays in the same encoding, so the
hot paths (squaring chains, transforms, decoding) stay as exponent arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

ZERO = -1
MAX_DEGREE = 16


class FieldError(ValueError):
    pass


def _walk(poly: int, degree: int) -> list[int] | None:
    """Powers of x modulo ``poly``; None unless x has full order 2^degree - 1."""
    order = (1 << degree) - 1
    top = 1 << degree
    powers = [1]
    value = 1
    for _ in range(order - 1):
        value <<= 1
        if value & top:
            value ^= poly
        if value == 1:
            return None
        powers.append(value)
    value <<= 1
    if value & top:
        value ^= poly
    return powers if value == 1 else None


def is_primitive(poly: int, degree: int) -> bool:
    if poly >> degree != 1 or not poly & 1:
        return False
    return _walk(poly, degree) is not None


@lru_cache(maxsize=None)
def primitive_polynomial(degree: int) -> int:
    """Smallest primitive polynomial of the given degree, as a coefficient mask."""
    _check_degree(degree)
    for poly in range((1 << degree) | 1, 1 << (degree + 1), 2):
        if is_primitive(poly, degree):
            return poly
    raise FieldError(f"no primitive polynomial of degree {degree}")  # pragma: no cover


def _check_degree(degree: int) -> None:
    if not isinstance(degree, (int, np.integer)) or not 1 <= degree <= MAX_DEGREE:
        raise FieldError(f"field degree must be in [1, {MAX_DEGREE}], got {degree!r}")


def poly_to_str(poly: int) -> str:
    """Render a binary coefficient mask as ``1+x+x^6``."""
    if poly == 0:
        return "0"
    terms = []
    for i in range(poly.bit_length()):
        if poly >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


@dataclass(frozen=True, eq=False)
class FieldTables:
    """Exp/log tables for GF(2^degree).

    ``exp[i]`` is the polynomial-basis bit pattern of the generator to the
    power ``i``; the table is stored twice over so sums of two reduced
    exponents index it without a modulo.  ``log`` inverts it on nonzero
    patterns and maps 0 to ``ZERO``.
    """

    degree: int
    poly: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return (1 << self.degree) - 1

    @property
    def size(self) -> int:
        return 1 << self.degree

    def __repr__(self) -> str:
        return f"GF(2^{self.degree}) mod {poly_to_str(self.poly)}"

    def _check(self, *elems: int) -> None:
        for e in elems:
            if not (e == ZERO or 0 <= e < self.order):
                raise FieldError(f"{e!r} is not an element of {self!r}")

    # scalar operations on log-form elements

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.log[self.to_int(a) ^ self.to_int(b)])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == ZERO:
            raise ZeroDivisionError("inverse of zero")
        return -a % self.order

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == ZERO:
            if e <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return ZERO
        return a * e % self.order

    def to_int(self, a: int) -> int:
        return 0 if a == ZERO else int(self.exp[a])

    def from_int(self, v: int) -> int:
        return int(self.log[v])

    def square_chain(self, e0: int, length: int) -> list[int]:
        """``(e0, e0^2, e0^4, ...)`` with ``length`` entries."""
        self._check(e0)
        if e0 == ZERO:
            raise FieldError("square chain needs a nonzero seed")
        out = []
        e = e0
        for _ in range(length):
            out.append(e)
            e = 2 * e % self.order
        return out

    # vector helpers

    def to_ints(self, logs: np.ndarray) -> np.ndarray:
        logs = np.asarray(logs)
        return np.where(logs == ZERO, 0, self.exp[np.maximum(logs, 0)])

    def from_ints(self, values: np.ndarray) -> np.ndarray:
        return self.log[np.asarray(values)]

    def elements(self) -> list[int]:
        """All field elements in log form, ZERO first."""
        return [ZERO, *range(self.order)]


def build_field(degree: int, poly: int | None = None) -> FieldTables:
    """Tables for GF(2^degree), by default over the smallest primitive polynomial."""
    _check_degree(degree)
    if poly is None:
        poly = primitive_polynomial(degree)
    powers = _walk(poly, degree) if poly >> degree == 1 else None
    if powers is None:
        raise FieldError(f"{poly_to_str(poly)} is not primitive of degree {degree}")
    exp = np.array(powers + powers, dtype=np.int64)
    exp.setflags(write=False)
    log = np.full(1 << degree, ZERO, dtype=np.int64)
    log[np.array(powers)] = np.arange(len(powers))
    log.setflags(write=False)
    return FieldTables(degree, poly, exp, log)


def conjugates(e: int, order: int) -> list[int]:
    """Exponents of the Frobenius conjugates of alpha^e, in squaring order."""
    out = [e % order]
    nxt = 2 * e % order
    while nxt != out[0]:
        out.append(nxt)
        nxt = 2 * nxt % order
    return out


def minimal_polynomial(elem: int, tables: FieldTables) -> int:
    """Minimal polynomial over GF(2) of ``alpha^elem`` as a binary mask.

    Computed as the product of ``(x + alpha^c)`` over the conjugate set; the
    product is checked to land in GF(2).
    """
    tables._check(elem)
    if elem == ZERO:
        raise FieldError("minimal polynomial of zero is x, not handled")
    coeffs = [1]  # polynomial-basis values, low degree first
    for c in conjugates(elem, tables.order):
        root = int(tables.exp[c])
        nxt = [0] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] ^= a
            if a:
                nxt[i] ^= int(tables.exp[tables.log[a] + tables.log[root]])
        coeffs = nxt
    mask = 0
    for i, a in enumerate(coeffs):
        if a not in (0, 1):
            raise FieldError("minimal polynomial left GF(2)")  # pragma: no cover
        mask |= a << i
    return mask


def subfield_exponent(m: int, m_prime: int) -> int:
    if m < 1 or m_prime % m:
        raise FieldError(f"GF(2^{m}) is not a subfield of GF(2^{m_prime})")
    return ((1 << m_prime) - 1) // ((1 << m) - 1)


def subfield_generator(m: int, m_prime: int, tables: FieldTables) -> int:
    """beta = alpha^l generating GF(2^m) inside GF(2^m'); returned in log form."""
    if tables.degree != m_prime:
        raise FieldError(f"tables are for GF(2^{tables.degree}), not GF(2^{m_prime})")
    return subfield_exponent(m, m_prime) % tables.order


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise FieldError(f"{a} is not a unit mod {n}")
    k, v = 1, a % n
    while v != 1 % n:
        v = v * a % n
        k += 1
    return k


@dataclass(frozen=True, eq=False)
class SplittingField:
    """GF(2^m) inside the splitting field GF(2^m') of 1 + x^n.

    ``big`` is GF(2^m') with generator alpha; ``small`` is GF(2^m) built on
    the minimal polynomial of beta = alpha^l, so beta-exponents in ``small``
    embed into ``big`` by multiplying with ``l``.  ``alpha^r`` is a
    primitive n-th root of unity.
    """

    n: int
    m: int
    m_prime: int
    r: int
    l: int
    big: FieldTables
    small: FieldTables

    @property
    def p(self) -> int:
        return self.small.poly

    def embed(self, logs: np.ndarray) -> np.ndarray:
        logs = np.asarray(logs)
        return np.where(logs == ZERO, ZERO, logs * self.l % self.big.order)


@lru_cache(maxsize=64)
def splitting_field(n: int, m: int) -> SplittingField:
    """Construction steps 1 and 3: locate GF(2^m') and derive p(x) for GF(2^m).

    m' is the multiplicative order of 2 modulo n; GF(2^m) codes of length n
    exist here only when m divides m'.
    """
    from .cosets import coset_size_index, cyclotomic_cosets

    if n < 3 or n % 2 == 0:
        raise FieldError(f"code length must be odd and >= 3, got {n}")
    m_prime = multiplicative_order(2, n)
    if m < 1 or m_prime % m:
        raise FieldError(f"m={m} does not divide m'={m_prime}: no GF(2^{m}) cyclic code of length {n}")
    _check_degree(m_prime)
    big = build_field(m_prime)
    order = big.order
    sizes = coset_size_index(cyclotomic_cosets(order))
    s = min(lead for lead, size in sizes.items() if size == m)
    l = subfield_exponent(m, m_prime)
    if s % order != l % order and m > 1:
        raise FieldError("leader of the size-m coset is not alpha^l")  # pragma: no cover
    small = build_field(m, minimal_polynomial(s, big))
    return SplittingField(n, m, m_prime, order // n, l, big, small)
