"""Exhaustive search over sums of cyclotomic idempotents.

Candidates are screened on their Mattson-Solomon spectra before any
polynomial is built: the transform is linear and every cyclotomic
idempotent has a binary spectrum, so the spectrum of a sum is the XOR of
precomputed 0/1 masks.  Survivors of the weight, dimension, BCH and
degeneracy filters are then constructed in full and checked for 4-cycles.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .construct import (
    CodeBlueprint,
    IdempotentSpec,
    admissible_exponents,
    blueprint_from_poly,
    classify,
    cyclotomic_idempotent,
    parity_check_idempotent,
)
from .cosets import CosetTable, cyclotomic_cosets
from .field import SplittingField, splitting_field
from .spectrum import SpectralAnalysis, analyze, check_binary, ms_transform

FULL = "full"
CANONICAL = "canonical"


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConstraints:
    w_max: int
    k_min: int = 0
    d: int = 2
    allow_4cycles: bool = False
    mode: str = FULL

    def __post_init__(self) -> None:
        if self.w_max < 0 or self.k_min < 0 or self.d < 1:
            raise SearchError(f"invalid constraints {self}")
        if self.mode not in (FULL, CANONICAL):
            raise SearchError(f"unknown coefficient-scan mode {self.mode!r}")


@dataclass(frozen=True, eq=False)
class SearchRecord:
    spec: IdempotentSpec
    blueprint: CodeBlueprint
    key: tuple[tuple[int, int], ...]

    @property
    def weight(self) -> int:
        return self.blueprint.u.weight()


def frobenius_orbit_min(e: int, m: int) -> int:
    order = (1 << m) - 1
    return min(e * (1 << j) % order for j in range(m)) if order > 1 else 0


def canonicalize(record: SearchRecord | IdempotentSpec) -> tuple[tuple[int, int], ...]:
    """Smallest coefficient tuple over the orbit of global squaring.

    Squaring every coefficient of u(x) sends ``(s, e)`` to ``(s, 2e)`` for
    all leaders at once; the resulting code is u's code with coordinates
    permuted by ``i -> 2i``, so orbit members are equivalent codes.
    """
    spec = record.spec if isinstance(record, SearchRecord) else record
    order = (1 << spec.m) - 1
    leaders, exps = spec.leaders, spec.exponents
    best = min(tuple(e * (1 << j) % max(order, 1) for e in exps) for j in range(spec.m))
    return tuple(zip(leaders, best))


def leader_subsets(table: CosetTable, w_max: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonempty leader subsets with total coset size <= w_max, in lexicographic order.

    ``first`` restricts the stream to subsets whose smallest leader is ``first``.
    """
    leaders = list(table.leaders)
    sizes = [len(table[s]) for s in leaders]

    def walk(start: int, chosen: list[int], weight: int) -> Iterator[tuple[int, ...]]:
        for i in range(start, len(leaders)):
            w = weight + sizes[i]
            if w > w_max:
                continue
            chosen.append(leaders[i])
            yield tuple(chosen)
            yield from walk(i + 1, chosen, w)
            chosen.pop()

    if first is None:
        yield from walk(0, [], 0)
        return
    i = leaders.index(first)
    if sizes[i] <= w_max:
        yield (first,)
        yield from walk(i + 1, [first], sizes[i])


def _cyclic_runs(ones: np.ndarray) -> np.ndarray:
    """Row-wise longest cyclic run of True in a 2-D boolean array."""
    rows, n = ones.shape
    doubled = np.concatenate([ones, ones], axis=1)
    pos = np.arange(2 * n)
    last_false = np.maximum.accumulate(np.where(doubled, -1, pos[None, :]), axis=1)
    return np.minimum((pos[None, :] - last_false).max(axis=1), n)


class _Screen:
    """Precomputed spectrum masks of every admissible cyclotomic idempotent."""

    def __init__(self, sf: SplittingField, mode: str):
        self.sf = sf
        self.mode = mode
        self.table = cyclotomic_cosets(sf.n)
        self.options: dict[int, list[int]] = {}
        self.masks: dict[int, np.ndarray] = {}
        for s in self.table.leaders:
            coset = self.table[s]
            exps = admissible_exponents(sf.m, len(coset))
            rows = []
            for e in exps:
                spec = ms_transform(cyclotomic_idempotent(coset, e, sf.small, sf.n), sf)
                if not check_binary(spec):
                    raise SearchError(f"non-binary spectrum for C_{s}")  # pragma: no cover
                rows.append(spec.ones())
            self.options[s] = exps
            self.masks[s] = np.array(rows, dtype=bool)

    def degenerate(self, subset: tuple[int, ...]) -> bool:
        exps = [e for s in subset for e in self.table[s] if e]
        return bool(exps) and gcd(self.sf.n, reduce(gcd, exps)) > 1

    def candidates(self, subset: tuple[int, ...], k_min: int, d: int) -> Iterator[tuple[int, ...]]:
        """Exponent tuples passing the spectral filters, in ascending product order."""
        first, rest = subset[0], subset[1:]
        # all combinations of the remaining leaders, first leader slowest
        tail_masks = np.zeros((1, self.sf.n), dtype=bool)
        tail_exps: list[tuple[int, ...]] = [()]
        for s in rest:
            tail_masks = (tail_masks[:, None, :] ^ self.masks[s][None, :, :]).reshape(-1, self.sf.n)
            tail_exps = [t + (e,) for t in tail_exps for e in self.options[s]]
        first_idx = {e: i for i, e in enumerate(self.options[first])}
        for e0 in self.options[first]:
            ones = tail_masks ^ self.masks[first][first_idx[e0]]
            k = self.sf.n - ones.sum(axis=1)
            ok = k >= k_min
            if d > 1 and ok.any():
                runs = np.zeros(len(ones), dtype=np.int64)
                runs[ok] = _cyclic_runs(ones[ok])
                ok &= runs + 1 >= d
            for i in np.flatnonzero(ok):
                yield (e0,) + tail_exps[i]


def _search_prefix(n: int, m: int, c: SearchConstraints, first: int) -> list[SearchRecord]:
    sf = splitting_field(n, m)
    screen = _Screen(sf, c.mode)
    return list(_records(screen, c, first))


def _records(screen: _Screen, c: SearchConstraints, first: int | None = None) -> Iterator[SearchRecord]:
    for subset in leader_subsets(screen.table, c.w_max, first):
        if screen.degenerate(subset):
            continue
        seen: set[tuple[tuple[int, int], ...]] = set()
        # a code needs at least one information symbol
        for exps in screen.candidates(subset, max(c.k_min, 1), c.d):
            spec = IdempotentSpec(screen.sf.n, screen.sf.m, tuple(zip(subset, exps)))
            key = canonicalize(spec)
            if c.mode == CANONICAL and key in seen:
                continue
            u = parity_check_idempotent(spec, screen.sf)
            if not c.allow_4cycles and not classify(u).four_cycle_free:
                continue
            # the BCH bound is not an orbit invariant, so the first member
            # passing every filter stands in for its orbit
            seen.add(key)
            yield SearchRecord(spec, blueprint_from_poly(u, screen.sf, spec), key)


def enumerate_codes(n: int, m: int, constraints: SearchConstraints, workers: int = 1) -> Iterator[SearchRecord]:
    """Stream every admissible code meeting the constraints, in deterministic order.

    Order: leader subsets lexicographically, then coefficient exponents
    ascending with the smallest leader varying slowest.  With ``workers > 1``
    subsets are partitioned by their smallest leader and merged in order.
    """
    sf = splitting_field(n, m)
    if constraints.w_max < 1:
        return
    table = cyclotomic_cosets(n)
    if workers <= 1:
        yield from _records(_Screen(sf, constraints.mode), constraints)
        return
    firsts = [s for s in table.leaders if len(table[s]) <= constraints.w_max]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_search_prefix, n, m, constraints, s) for s in firsts]
        for fut in futures:
            yield from fut.result()


@dataclass(frozen=True, eq=False)
class AlignmentResult:
    leaders: tuple[int, ...]
    best_lower: int
    optima: list[tuple[int, ...]]
    analysis: SpectralAnalysis

    @property
    def best(self) -> tuple[int, ...]:
        return self.optima[0]


def coefficient_alignment_scan(leaders: Sequence[int], n: int, m: int) -> AlignmentResult:
    """Try every admissible coefficient tuple for a leader set and keep the
    assignments with the longest run of spectral ones (all ties reported)."""
    sf = splitting_field(n, m)
    screen = _Screen(sf, FULL)
    subset = tuple(sorted(leaders))
    if not subset or any(s not in screen.table.by_leader for s in subset):
        raise SearchError(f"{leaders} is not a set of coset leaders mod {n}")
    combos = list(screen.candidates(subset, 0, 1))
    ones = np.array(
        [np.logical_xor.reduce([screen.masks[s][screen.options[s].index(e)] for s, e in zip(subset, t)]) for t in combos]
    )
    runs = _cyclic_runs(ones)
    best = int(runs.max())
    optima = [combos[i] for i in np.flatnonzero(runs == best)]
    spec = IdempotentSpec(n, m, tuple(zip(subset, optima[0])))
    analysis = analyze(parity_check_idempotent(spec, sf), sf)
    return AlignmentResult(subset, best + 1, optima, analysis)


CSV_FIELDS = [
    "n", "m", "m_prime", "r", "l", "leaders", "exponents", "weight",
    "k", "bch_bound", "upper_bound", "girth", "u",
]


def record_row(rec: SearchRecord) -> dict[str, object]:
    bp = rec.blueprint
    return {
        "n": bp.n,
        "m": bp.m,
        "m_prime": bp.m_prime,
        "r": bp.r,
        "l": bp.l,
        "leaders": " ".join(map(str, rec.spec.leaders)),
        "exponents": " ".join(map(str, rec.spec.exponents)),
        "weight": rec.weight,
        "k": bp.k,
        "bch_bound": bp.d_lower,
        "upper_bound": bp.d_upper,
        "girth": bp.girth.label,
        "u": bp.u.to_text(),
    }


def write_csv(records, out: io.TextIOBase) -> int:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for rec in records:
        writer.writerow(record_row(rec))
        count += 1
    return count
