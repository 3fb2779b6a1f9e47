"""Polynomials over GF(2^m) modulo 1 + x^n, plus plain-polynomial helpers.

Ring elements carry a length-n vector of log-form coefficients (``ZERO`` for
absent terms).  Plain polynomials, used for ``gcd(u, 1 + x^n)`` and the
generator ``g(x)``, are trimmed log-form arrays, low degree first.

Text form: nonzero terms ``c*x^e`` joined by ``+`` where ``c`` is ``1`` or
``b<j>`` for beta^j; the zero polynomial is ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .field import ZERO, FieldTables


class RingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RingPoly:
    coeffs: np.ndarray
    field: FieldTables

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.int64)
        if c.ndim != 1 or len(c) % 2 == 0:
            raise RingError(f"ring length must be odd, got {len(c)}")
        if np.any((c < ZERO) | (c >= self.field.order)):
            raise RingError(f"coefficients outside {self.field!r}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int, field: FieldTables) -> RingPoly:
        return cls(np.full(n, ZERO), field)

    @classmethod
    def from_terms(cls, n: int, field: FieldTables, terms: dict[int, int]) -> RingPoly:
        """Build from ``{exponent: log coefficient}``; exponents reduce mod n."""
        ints = np.zeros(n, dtype=np.int64)
        for e, c in terms.items():
            ints[e % n] ^= field.to_int(c)
        return cls(field.from_ints(ints), field)

    @classmethod
    def monomial(cls, n: int, field: FieldTables, exponent: int, coeff: int = 0) -> RingPoly:
        return cls.from_terms(n, field, {exponent: coeff})

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def ints(self) -> np.ndarray:
        return self.field.to_ints(self.coeffs)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs != ZERO)

    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs != ZERO))

    def degree(self) -> int:
        s = self.support()
        return int(s[-1]) if len(s) else -1

    def is_zero(self) -> bool:
        return self.weight() == 0

    def terms(self) -> dict[int, int]:
        return {int(e): int(self.coeffs[e]) for e in self.support()}

    def _same_ring(self, other: RingPoly) -> None:
        f, g = self.field, other.field
        if self.n != other.n or (f.degree, f.poly) != (g.degree, g.poly):
            raise RingError("operands live in different rings")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingPoly):
            return NotImplemented
        return (
            self.n == other.n
            and self.field.degree == other.field.degree
            and self.field.poly == other.field.poly
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self) -> int:
        return hash((self.field.degree, self.coeffs.tobytes()))

    def __add__(self, other: RingPoly) -> RingPoly:
        self._same_ring(other)
        return RingPoly(self.field.from_ints(self.ints ^ other.ints), self.field)

    def __mul__(self, other: RingPoly) -> RingPoly:
        return ring_mul(self, other)

    def scale(self, c: int) -> RingPoly:
        f = self.field
        if c == ZERO:
            return RingPoly.zero(self.n, f)
        out = np.where(self.coeffs == ZERO, ZERO, (self.coeffs + c) % f.order)
        return RingPoly(out, f)

    def shift(self, k: int) -> RingPoly:
        """Multiply by x^k (a cyclic shift)."""
        return RingPoly(np.roll(self.coeffs, k), self.field)

    def to_text(self) -> str:
        return format_terms(self.terms())

    def __repr__(self) -> str:
        return f"RingPoly(n={self.n}, GF(2^{self.field.degree}): {self.to_text()})"


def ring_mul(a: RingPoly, b: RingPoly) -> RingPoly:
    a._same_ring(b)
    f = a.field
    acc = np.zeros(a.n, dtype=np.int64)
    b_nz = b.coeffs != ZERO
    for e in a.support():
        prod = np.where(b_nz, f.exp[np.maximum(b.coeffs, 0) + a.coeffs[e]], 0)
        acc ^= np.roll(prod, int(e))
    return RingPoly(f.from_ints(acc), f)


def ring_square(a: RingPoly) -> RingPoly:
    """Frobenius on the ring: coefficient a_j^2 lands on x^(2j mod n)."""
    f = a.field
    out = np.full(a.n, ZERO, dtype=np.int64)
    for e in a.support():
        out[2 * e % a.n] = 2 * a.coeffs[e] % f.order
    return RingPoly(out, f)


def reciprocal(a: RingPoly) -> RingPoly:
    """``x^deg(a) * a(x^-1)``."""
    d = a.degree()
    if d < 0:
        raise RingError("reciprocal of the zero polynomial")
    out = np.full(a.n, ZERO, dtype=np.int64)
    out[: d + 1] = a.coeffs[d::-1]
    return RingPoly(out, a.field)


# plain polynomials (trimmed, log form, low degree first)


def _trim(ints: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(ints)
    return ints[: nz[-1] + 1] if len(nz) else ints[:0]


def _scaled(f: FieldTables, c: int, ints: np.ndarray) -> np.ndarray:
    """c (log form) times a vector of bit patterns."""
    logs = f.log[ints]
    return np.where(ints == 0, 0, f.exp[np.maximum(logs, 0) + c])


def _divmod(a: np.ndarray, b: np.ndarray, f: FieldTables) -> tuple[np.ndarray, np.ndarray]:
    b = _trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(a.copy())
    db = len(b) - 1
    lead_inv = f.inv(int(f.log[b[-1]]))
    q = np.zeros(max(len(r) - db, 1), dtype=np.int64)
    while len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = (int(f.log[r[-1]]) + lead_inv) % f.order
        q[shift] = f.exp[c]
        r[shift:] ^= _scaled(f, c, b)
        r = _trim(r)
    return _trim(q), r


def _xn_plus_one(n: int) -> np.ndarray:
    p = np.zeros(n + 1, dtype=np.int64)
    p[0] = p[n] = 1
    return p


def poly_degree(p: np.ndarray) -> int:
    return len(p) - 1


def poly_weight(p: np.ndarray) -> int:
    return int(np.count_nonzero(np.asarray(p) != ZERO))


def gcd_with_xn(a: RingPoly) -> np.ndarray:
    """Monic ``gcd(a(x), 1 + x^n)`` over GF(2^m)."""
    if a.is_zero():
        raise RingError("gcd with the zero polynomial")
    f = a.field
    x, y = _xn_plus_one(a.n), _trim(a.ints.copy())
    while len(y):
        x, y = y, _divmod(x, y, f)[1]
    x = _scaled(f, f.inv(int(f.log[x[-1]])), x)
    return f.from_ints(x)


def quotient_xn(h: np.ndarray, n: int, field: FieldTables) -> np.ndarray:
    """``(1 + x^n) / h(x)``; raises if the division leaves a remainder."""
    ints = _trim(field.to_ints(h))
    q, r = _divmod(_xn_plus_one(n), ints, field)
    if len(r):
        raise RingError("h(x) does not divide 1 + x^n")
    return field.from_ints(q)


def poly_mul(a: np.ndarray, b: np.ndarray, field: FieldTables) -> np.ndarray:
    ai, bi = field.to_ints(a), field.to_ints(b)
    out = np.zeros(max(len(ai) + len(bi) - 1, 0), dtype=np.int64)
    for i, v in enumerate(ai):
        if v:
            out[i : i + len(bi)] ^= _scaled(field, int(field.log[v]), bi)
    return field.from_ints(_trim(out))


def poly_mod(a: np.ndarray, b: np.ndarray, field: FieldTables) -> np.ndarray:
    r = _divmod(field.to_ints(a), field.to_ints(b), field)[1]
    return field.from_ints(r)


# text form


def format_coeff(c: int) -> str:
    return "0" if c == ZERO else "1" if c == 0 else f"b{c}"


def _format_term(e: int, c: int) -> str:
    if e == 0:
        return format_coeff(c)
    mono = "x" if e == 1 else f"x^{e}"
    return mono if c == 0 else f"{format_coeff(c)}*{mono}"


def format_terms(terms: dict[int, int]) -> str:
    """Canonical text: ascending exponents, unit coefficients and ``^1`` omitted."""
    parts = [_format_term(e, c) for e, c in sorted(terms.items()) if c != ZERO]
    return "+".join(parts) if parts else "0"


_TERM = re.compile(r"^(?:(?P<c>0|1|b\d*)\s*\*?\s*)?(?:(?P<x>x)(?:\^(?P<e>\d+))?)?$")


def parse_terms(text: str, *, lenient: bool = False) -> tuple[dict[int, int], list[str]]:
    """Parse the text form into ``{exponent: log coefficient}``.

    With ``lenient=True`` a comma between terms is read as ``+`` and reported
    in the returned notes instead of raising.
    """
    notes = []
    body = text.strip()
    if "," in body:
        if not lenient:
            raise RingError("',' is not a term separator")
        notes.append("comma-separator")
        body = body.replace(",", "+")
    terms: dict[int, int] = {}
    for raw in body.split("+"):
        tok = raw.strip().replace(" ", "")
        m = _TERM.match(tok)
        if not tok or not m or (m["c"] is None and m["x"] is None):
            raise RingError(f"bad term {raw!r}")
        c = m["c"]
        if c is None or c == "1":
            coeff = 0
        elif c == "0":
            continue
        else:
            coeff = int(c[1:] or 1)
        e = 0 if m["x"] is None else int(m["e"] or 1)
        if e in terms:
            raise RingError(f"exponent {e} repeated")
        terms[e] = coeff
    return terms, notes


def parse_poly(text: str, n: int, field: FieldTables, *, lenient: bool = False) -> tuple[RingPoly, list[str]]:
    terms, notes = parse_terms(text, lenient=lenient)
    if any(e >= n for e in terms):
        raise RingError(f"exponent beyond x^{n - 1}")
    if any(c >= field.order for c in terms.values()):
        raise RingError(f"coefficient exponent beyond beta^{field.order - 1}")
    return RingPoly.from_terms(n, field, terms), notes
