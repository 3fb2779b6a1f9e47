"""BPSK over AWGN for the binary image of GF(2^m) codewords.

Binary image convention: symbol ``v`` expands to its polynomial-basis
coordinates over ``(1, beta, ..., beta^(m-1))``, least-significant first;
bit ``b`` is sent as ``1 - 2b``.  Symbol priors are indexed by the same
bit pattern (the integer value of the symbol), which is also the index the
decoder's Walsh-Hadamard transforms work in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import FieldTables
from .ring import RingPoly


@dataclass(frozen=True)
class ChannelConfig:
    ebno_db: float
    rate: float
    seed: int = 0
    stream: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.rate <= 1:
            raise ValueError(f"code rate must be in (0, 1], got {self.rate}")

    @property
    def sigma(self) -> float:
        """Noise std-dev with unit bit energy: sigma^2 = 1 / (2 R Eb/N0)."""
        if math.isinf(self.ebno_db) and self.ebno_db > 0:
            return 0.0
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebno_db / 10.0)))


def bit_table(field: FieldTables) -> np.ndarray:
    """``(q, m)`` array: row v holds the coordinates of the symbol with value v."""
    v = np.arange(field.size)
    return (v[:, None] >> np.arange(field.degree)[None, :]) & 1


def to_bits(values: np.ndarray, field: FieldTables) -> np.ndarray:
    return bit_table(field)[np.asarray(values)].reshape(-1)


def modulate(codeword: RingPoly) -> np.ndarray:
    return 1.0 - 2.0 * to_bits(codeword.ints, codeword.field)


def frame_rng(seed: int, stream: int, frame: int) -> np.random.Generator:
    """Independent counter-based generator for one simulated frame."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream, frame])))


def transmit(x: np.ndarray, config: ChannelConfig, frame: int = 0, rng: np.random.Generator | None = None) -> np.ndarray:
    sigma = config.sigma
    if sigma == 0:
        return np.array(x, dtype=float)
    rng = rng or frame_rng(config.seed, config.stream, frame)
    return x + sigma * rng.standard_normal(len(x))


def symbol_priors(y: np.ndarray, sigma: float, field: FieldTables) -> np.ndarray:
    """``(n, q)`` symbol probabilities from the per-bit Gaussian likelihoods."""
    m = field.degree
    y = np.asarray(y, dtype=float)
    if len(y) % m:
        raise ValueError(f"{len(y)} channel values do not split into {m}-bit symbols")
    signs = 1.0 - 2.0 * bit_table(field)  # (q, m)
    y = y.reshape(-1, m)
    if sigma == 0:
        score = np.sign(y) @ signs.T
        p = (score == score.max(axis=1, keepdims=True)).astype(float)
    else:
        # log N(y; s, sigma^2) = const + y*s/sigma^2 since s^2 = 1
        score = (y @ signs.T) / sigma**2
        p = np.exp(score - score.max(axis=1, keepdims=True))
    return p / p.sum(axis=1, keepdims=True)
