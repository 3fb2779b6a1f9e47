"""Cyclotomic idempotents, the parity-check idempotent u(x) and the codes it defines."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cosets import cyclotomic_cosets
from .field import ZERO, FieldTables, SplittingField, splitting_field
from .ring import RingPoly, poly_degree, poly_mod, ring_square
from .spectrum import SpectralAnalysis, analyze


class ConstructionError(ValueError):
    """Mathematical rejection of a construction (CLI exit code 2)."""


class InadmissibleCoefficient(ConstructionError):
    def __init__(self, leader: int, e0: int, m: int, subfield: int):
        self.leader, self.e0, self.subfield = leader, e0, subfield
        super().__init__(
            f"coefficient b{e0} for coset C_{leader} does not close the squaring chain; "
            f"it must lie in GF(2^{subfield}) (exponent a multiple of "
            f"{((1 << m) - 1) // ((1 << subfield) - 1)})"
        )


class DegenerateCode(ConstructionError):
    pass


def admissible_degree(m: int, coset_size: int) -> int:
    """Degree of the subfield the leading coefficient of a coset must live in."""
    return gcd(m, coset_size)


def admissible_exponents(m: int, coset_size: int) -> list[int]:
    """beta-exponents ``e`` with ``e * 2^|C_s| == e`` modulo ``2^m - 1``."""
    order = (1 << m) - 1
    step = order // ((1 << admissible_degree(m, coset_size)) - 1)
    return list(range(0, order, step)) if order > 1 else [0]


def is_admissible(e0: int, m: int, coset_size: int) -> bool:
    order = (1 << m) - 1
    return e0 != ZERO and (e0 * ((1 << coset_size) - 1)) % order == 0


def cyclotomic_idempotent(coset: Sequence[int], e0: int, field: FieldTables, n: int) -> RingPoly:
    """``sum_i e0^(2^i) x^(coset[i])`` for a coset listed in doubling order."""
    if not is_admissible(e0, field.degree, len(coset)):
        raise InadmissibleCoefficient(coset[0], e0, field.degree, admissible_degree(field.degree, len(coset)))
    coeffs = np.full(n, ZERO, dtype=np.int64)
    coeffs[list(coset)] = field.square_chain(e0, len(coset))
    return RingPoly(coeffs, field)


@dataclass(frozen=True)
class IdempotentSpec:
    """Chosen leaders with the beta-exponent of each leader's coefficient."""

    n: int
    m: int
    coefficients: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ConstructionError("the leader set must be nonempty")
        table = cyclotomic_cosets(self.n)
        order = (1 << self.m) - 1
        seen = set()
        for s, e0 in self.coefficients:
            if s not in table.by_leader:
                raise ConstructionError(f"{s} is not a coset leader mod {self.n}")
            if s in seen:
                raise ConstructionError(f"leader {s} listed twice")
            seen.add(s)
            if not 0 <= e0 < max(order, 1):
                raise ConstructionError(f"coefficient exponent {e0} outside GF(2^{self.m})")
            size = len(table[s])
            if not is_admissible(e0, self.m, size):
                raise InadmissibleCoefficient(s, e0, self.m, admissible_degree(self.m, size))
        object.__setattr__(self, "coefficients", tuple(sorted(self.coefficients)))

    @classmethod
    def of(cls, n: int, m: int, coefficients: Mapping[int, int] | Iterable[tuple[int, int]]) -> IdempotentSpec:
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        return cls(n, m, tuple((int(s), int(e)) for s, e in items))

    @property
    def leaders(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.coefficients)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.coefficients)


def parity_check_idempotent(spec: IdempotentSpec, sf: SplittingField | None = None) -> RingPoly:
    sf = sf or splitting_field(spec.n, spec.m)
    table = cyclotomic_cosets(spec.n)
    coeffs = np.full(spec.n, ZERO, dtype=np.int64)
    for s, e0 in spec.coefficients:
        part = cyclotomic_idempotent(table[s], e0, sf.small, spec.n)
        # cosets are disjoint, so the sum is a union of supports
        coeffs[list(table[s])] = part.coeffs[list(table[s])]
    return RingPoly(coeffs, sf.small)


def spec_from_poly(u: RingPoly) -> IdempotentSpec:
    """Recover leaders and leader coefficients from a sum of cyclotomic idempotents."""
    table = cyclotomic_cosets(u.n)
    out = []
    for s in sorted({table.leader_of[e] for e in u.support()}):
        out.append((s, int(u.coeffs[s])))
    if any(e == ZERO for _, e in out):
        raise ConstructionError("u(x) is not a sum of cyclotomic idempotents")
    spec = IdempotentSpec(u.n, u.field.degree, tuple(out))
    expanded = [cyclotomic_idempotent(table[s], e, u.field, u.n) for s, e in out]
    if sum(expanded[1:], expanded[0]) != u:
        raise ConstructionError("u(x) is not a sum of cyclotomic idempotents")
    return spec


def is_idempotent(p: RingPoly) -> bool:
    return ring_square(p) == p


def degeneracy_check(u: RingPoly) -> bool:
    """True when n and every nonzero exponent of u share a factor above one.

    A lone constant term has no nonzero exponent and counts as non-degenerate.
    """
    if u.is_zero():
        raise ConstructionError("degeneracy of the zero polynomial")
    exps = [int(e) for e in u.support() if e]
    if not exps:
        return False
    return gcd(u.n, reduce(gcd, exps)) > 1


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    """n x n circulant over GF(2^m); row i is the reversal of u shifted right by i.

    Entry ``(i, p)`` equals ``u[(deg(u) + i - p) mod n]``.
    """

    entries: np.ndarray
    field: FieldTables

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def row_weights(self) -> np.ndarray:
        return np.count_nonzero(self.entries != ZERO, axis=1)

    def col_weights(self) -> np.ndarray:
        return np.count_nonzero(self.entries != ZERO, axis=0)

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(checks, variables, coefficient logs)`` of the nonzero entries, row-major."""
        rows, cols = np.nonzero(self.entries != ZERO)
        return rows, cols, self.entries[rows, cols]

    def ints(self) -> np.ndarray:
        return self.field.to_ints(self.entries)


def build_parity_check_matrix(u: RingPoly) -> ParityCheckMatrix:
    if u.is_zero():
        raise ConstructionError("parity-check matrix of u = 0")
    if degeneracy_check(u):
        raise DegenerateCode(f"support of u(x) shares a factor with n={u.n}")
    n, d = u.n, u.degree()
    idx = (d + np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    entries = u.coeffs[idx]
    entries.setflags(write=False)
    return ParityCheckMatrix(entries, u.field)


# 4-cycle analysis


def difference_enumerator(u: RingPoly) -> np.ndarray:
    """Coefficients of f(x) f(x^-1) mod x^n - 1 over the integers, f the support of u."""
    n = u.n
    d = np.zeros(n, dtype=np.int64)
    sup = u.support()
    for x in sup:
        np.add.at(d, (x - sup) % n, 1)
    return d


def _pairs_by_difference(u: RingPoly) -> dict[int, list[tuple[int, int]]]:
    n = u.n
    sup = [int(e) for e in u.support()]
    out: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for x in sup:
        for y in sup:
            if x != y:
                out[(x - y) % n].append((x, y))
    return out


def coefficient_difference_enumerator(u: RingPoly) -> np.ndarray:
    """Like the difference enumerator, but pairs only count together when
    their coefficient ratios agree.

    Entry i is the largest number of support pairs ``(x, y)`` with
    ``x - y = i`` sharing one ratio ``u_x / u_y``.  Two such pairs span a
    2 x 2 submatrix of H with zero determinant; for binary codes this is the
    plain difference enumerator.
    """
    order = u.field.order
    c = u.coeffs
    d = np.zeros(u.n, dtype=np.int64)
    d[0] = u.weight()
    for delta, pairs in _pairs_by_difference(u).items():
        ratios = Counter(int(c[x] - c[y]) % order for x, y in pairs)
        d[delta] = max(ratios.values())
    return d


def four_cycle_counts(u: RingPoly) -> tuple[int, int]:
    """Numbers of (all, singular) 4-cycles in the Tanner graph of the circulant.

    Every ordered pair of distinct support pairs with a common difference
    yields n cycles (one per cyclic shift), and each cycle is reached four
    times by swapping its rows or its columns.
    """
    order = u.field.order
    c = u.coeffs
    total = singular = 0
    for pairs in _pairs_by_difference(u).values():
        total += len(pairs) * (len(pairs) - 1)
        for cnt in Counter(int(c[x] - c[y]) % order for x, y in pairs).values():
            singular += cnt * (cnt - 1)
    return u.n * total // 4, u.n * singular // 4


DIFFERENCE_SET = "difference-set"
ORTHOGONAL = "orthogonal"
FOUR_CYCLE_FREE = "4-cycle-free"
HAS_FOUR_CYCLES = "has-4-cycles"


@dataclass(frozen=True)
class GirthClass:
    label: str
    orthogonal: bool
    four_cycle_free: bool
    exact_dmin: int | None = None

    def __str__(self) -> str:
        return self.label


def girth_classify(d: np.ndarray, *, m: int = 1, coefficient_d: np.ndarray | None = None) -> GirthClass:
    """Classify from a difference enumerator.

    Orthogonal supports (every tail entry at most one) give girth >= 6; when
    the tail is all ones the code is a difference-set code.  For m = 1 the
    minimum distance of an orthogonal code is exactly ``1 + wt(u)``.  Over
    larger fields a support with repeated differences is still free of
    4-cycles when ``coefficient_d`` has a tail bounded by one: every
    4-cycle then has a nonsingular 2 x 2 coefficient block.
    """
    d = np.asarray(d)
    tail = d[1:]
    if np.all(tail <= 1):
        label = DIFFERENCE_SET if len(tail) and np.all(tail == 1) else ORTHOGONAL
        exact = int(d[0]) + 1 if m == 1 else None
        return GirthClass(label, True, True, exact)
    if m > 1 and coefficient_d is not None and np.all(np.asarray(coefficient_d)[1:] <= 1):
        return GirthClass(FOUR_CYCLE_FREE, False, True)
    return GirthClass(HAS_FOUR_CYCLES, False, False)


def classify(u: RingPoly) -> GirthClass:
    m = u.field.degree
    cd = coefficient_difference_enumerator(u) if m > 1 else None
    return girth_classify(difference_enumerator(u), m=m, coefficient_d=cd)


# assembled codes


@dataclass(frozen=True, eq=False)
class CodeBlueprint:
    sf: SplittingField
    u: RingPoly
    analysis: SpectralAnalysis
    girth: GirthClass
    spec: IdempotentSpec | None = None
    notes: tuple[str, ...] = field(default=())

    n = property(lambda self: self.sf.n)
    m = property(lambda self: self.sf.m)
    m_prime = property(lambda self: self.sf.m_prime)
    r = property(lambda self: self.sf.r)
    l = property(lambda self: self.sf.l)
    k = property(lambda self: self.analysis.k)
    d_lower = property(lambda self: self.analysis.lower)
    d_upper = property(lambda self: self.analysis.upper)
    g = property(lambda self: self.analysis.g)
    h = property(lambda self: self.analysis.h)

    @property
    def field(self) -> FieldTables:
        return self.sf.small

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def H(self) -> ParityCheckMatrix:
        return build_parity_check_matrix(self.u)

    def __repr__(self) -> str:
        return (
            f"GF(2^{self.m})({self.n},{self.k}) code, d_min in [{self.d_lower}, {self.d_upper}], "
            f"{self.girth.label}"
        )


def blueprint_from_poly(u: RingPoly, sf: SplittingField | None = None, spec: IdempotentSpec | None = None) -> CodeBlueprint:
    """Construction steps 5 and 6 for a given parity-check idempotent."""
    sf = sf or splitting_field(u.n, u.field.degree)
    if u.is_zero():
        raise ConstructionError("u(x) = 0")
    if not is_idempotent(u):
        raise ConstructionError("u(x) is not an idempotent")
    if degeneracy_check(u):
        raise DegenerateCode(f"support of u(x) shares a factor with n={u.n}")
    return CodeBlueprint(sf, u, analyze(u, sf), classify(u), spec)


def build_code(n: int, m: int, coefficients: Mapping[int, int] | Iterable[tuple[int, int]]) -> CodeBlueprint:
    """Run the six construction steps for leaders with given beta-exponents."""
    sf = splitting_field(n, m)
    spec = IdempotentSpec.of(n, m, coefficients)
    return blueprint_from_poly(parity_check_idempotent(spec, sf), sf, spec)


# encoding


def systematic_encode(bp: CodeBlueprint, message: Sequence[int]) -> RingPoly:
    """Codeword with the k message symbols (log form) in positions n-k .. n-1."""
    n, k, f = bp.n, bp.k, bp.field
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (k,):
        raise ValueError(f"message must hold k={k} symbols, got shape {message.shape}")
    shifted = np.concatenate([np.full(n - k, ZERO), message])
    parity = poly_mod(shifted, bp.g, f)
    word = f.to_ints(shifted)
    word[: len(parity)] ^= f.to_ints(parity)
    return RingPoly(f.from_ints(word), f)


def generator_rows(bp: CodeBlueprint) -> np.ndarray:
    """k x n matrix (bit patterns) whose rows are x^i g(x), i < k."""
    f = bp.field
    g = f.to_ints(bp.g)
    rows = np.zeros((bp.k, bp.n), dtype=np.int64)
    for i in range(bp.k):
        rows[i, i : i + len(g)] = g
    return rows


def binary_image_generators(bp: CodeBlueprint) -> list[int]:
    """GF(2) basis of the binary image: beta^j x^i g(x), packed as integers.

    Symbol p contributes bits ``p*m .. p*m+m-1`` (polynomial basis,
    least-significant coordinate first).
    """
    f, m = bp.field, bp.m
    out = []
    for row in generator_rows(bp):
        logs = f.from_ints(row)
        for j in range(m):
            bits = 0
            for p, e in enumerate(logs):
                if e != ZERO:
                    bits |= int(f.exp[e + j]) << (p * m)
            out.append(bits)
    return out


def binary_distance(bp: CodeBlueprint, cap: int = 22) -> int | None:
    """Exact minimum Hamming weight of the binary image, or None above the cap on m*k."""
    gens = binary_image_generators(bp)
    if len(gens) > cap:
        return None
    return _min_weight_gray(gens)


def _min_weight_gray(gens: list[int]) -> int:
    best = None
    word = 0
    for i in range(1, 1 << len(gens)):
        word ^= gens[(i & -i).bit_length() - 1]
        w = word.bit_count() if hasattr(word, "bit_count") else bin(word).count("1")
        if best is None or w < best:
            best = w
    return best if best is not None else 0
