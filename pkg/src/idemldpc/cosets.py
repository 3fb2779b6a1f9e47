"""Binary cyclotomic cosets modulo an odd integer."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache


@dataclass(frozen=True)
class CosetTable:
    """Partition of ``{0, ..., modulus-1}`` into orbits under doubling.

    Each coset is stored in doubling order starting at its leader
    (``s, 2s, 4s, ...``), and cosets are sorted by leader.
    """

    modulus: int
    cosets: tuple[tuple[int, ...], ...]

    @cached_property
    def leaders(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    @cached_property
    def by_leader(self) -> dict[int, tuple[int, ...]]:
        return {c[0]: c for c in self.cosets}

    @cached_property
    def leader_of(self) -> tuple[int, ...]:
        owner = [0] * self.modulus
        for c in self.cosets:
            for e in c:
                owner[e] = c[0]
        return tuple(owner)

    def __getitem__(self, leader: int) -> tuple[int, ...]:
        return self.by_leader[leader]

    def __len__(self) -> int:
        return len(self.cosets)


@lru_cache(maxsize=64)
def cyclotomic_cosets(n: int) -> CosetTable:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"cyclotomic cosets need an odd modulus >= 3, got {n}")
    seen = bytearray(n)
    cosets = []
    for s in range(n):
        if seen[s]:
            continue
        coset = [s]
        seen[s] = 1
        nxt = 2 * s % n
        while nxt != s:
            coset.append(nxt)
            seen[nxt] = 1
            nxt = 2 * nxt % n
        cosets.append(tuple(coset))
    return CosetTable(n, tuple(cosets))


def coset_size_index(table: CosetTable) -> dict[int, int]:
    return {c[0]: len(c) for c in table.cosets}
