"""q-ary sum-product decoding over GF(2^m) and frame-error-rate simulation.

Messages are probability vectors indexed by the integer (bit-pattern) value
of a symbol.  A check node multiplies each incoming distribution by its
edge coefficient (a permutation of indices), convolves over the additive
group of GF(2^m) with Walsh-Hadamard transforms, and permutes back.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import ChannelConfig, frame_rng, modulate, symbol_priors, to_bits, transmit
from .construct import CodeBlueprint, ParityCheckMatrix, systematic_encode
from .field import FieldTables
from .ring import RingPoly


@dataclass(frozen=True)
class DecoderConfig:
    max_iter: int = 100
    early_stop: bool = True
    floor: float = 1e-30

    def __post_init__(self) -> None:
        if self.max_iter < 1 or not self.floor > 0:
            raise ValueError(f"invalid decoder config {self}")


@dataclass(frozen=True, eq=False)
class DecodeRun:
    decision: RingPoly
    converged: bool
    iterations: int
    syndrome_weight: int


@lru_cache(maxsize=None)
def hadamard(q: int) -> np.ndarray:
    """Sylvester-Hadamard matrix: entry (i, j) is (-1)^popcount(i & j)."""
    i = np.arange(q)
    bits = np.bitwise_and(i[:, None], i[None, :])
    parity = np.zeros_like(bits)
    while bits.any():
        parity ^= bits & 1
        bits >>= 1
    return 1.0 - 2.0 * parity


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (length 2^m)."""
    a = np.array(a, dtype=float)
    shape = a.shape
    q = shape[-1]
    if q <= 256:
        return a @ hadamard(q)
    h = 1
    while h < q:
        a = a.reshape(*shape[:-1], q // (2 * h), 2, h)
        x, y = a[..., 0, :], a[..., 1, :]
        a = np.stack([x + y, x - y], axis=-2)
        h *= 2
    return a.reshape(shape)


def mul_table(field: FieldTables) -> np.ndarray:
    """``table[c, v]`` = bit pattern of beta^c times the symbol with pattern v."""
    v = np.arange(field.size)
    logs = field.log[v]
    c = np.arange(field.order)[:, None]
    return np.where(v[None, :] == 0, 0, field.exp[c + np.maximum(logs, 0)[None, :]])


def _exclusive_products(x: np.ndarray) -> np.ndarray:
    """For axis 1 of ``(N, d, q)``, the product over all other entries."""
    pre = np.ones_like(x)
    suf = np.ones_like(x)
    pre[:, 1:] = np.cumprod(x[:, :-1], axis=1)
    suf[:, :-1] = np.cumprod(x[:, :0:-1], axis=1)[:, ::-1]
    return pre * suf


def _flat_gather(index: np.ndarray) -> np.ndarray:
    """Turn per-row indices of an ``(E, q)`` array into indices of its ravel."""
    e, q = index.shape[0], index.shape[-1]
    return (np.arange(e)[:, None] * q + index.reshape(e, q)).reshape(-1)


def check_node_update(msgs: np.ndarray, coeffs: np.ndarray, field: FieldTables, table: np.ndarray | None = None) -> np.ndarray:
    """Outgoing check-to-variable messages for checks ``sum_j h_j c_j = 0``.

    ``msgs`` has shape ``(checks, d, q)`` and ``coeffs`` (log-form h_j) shape
    ``(checks, d)``.  Output j is the distribution of ``c_j`` implied by the
    other d-1 incoming messages, unnormalised floors aside.
    """
    table = mul_table(field) if table is None else table
    coeffs = np.asarray(coeffs)
    fwd = _flat_gather(table[coeffs].reshape(-1, field.size))  # v -> h v
    back = _flat_gather(table[(-coeffs) % field.order].reshape(-1, field.size))  # w -> w / h
    return _check_pass(np.asarray(msgs, dtype=float), fwd, back)


def _check_pass(msgs: np.ndarray, fwd: np.ndarray, back: np.ndarray) -> np.ndarray:
    shape = msgs.shape
    # permuted[w] = P(h c = w) = msg[w / h]
    permuted = msgs.reshape(-1)[back].reshape(shape)
    spectra = fwht(permuted)
    conv = fwht(_exclusive_products(spectra)) / shape[-1]
    # out[v] = P(sum of others = h v)
    return conv.reshape(-1)[fwd].reshape(shape)


def _normalize(p: np.ndarray, floor: float) -> np.ndarray:
    p = np.maximum(p, floor)
    return p / p.sum(axis=-1, keepdims=True)


class QSPDecoder:
    """Flooding sum-product decoder for a row- and column-regular H."""

    def __init__(self, H: ParityCheckMatrix, config: DecoderConfig | None = None):
        self.H = H
        self.field = H.field
        self.config = config or DecoderConfig()
        rows, cols, coeffs = H.edges()
        n_checks, n = H.entries.shape
        # order every node's edges by cyclic offset, not absolute index: each
        # node of a circulant then runs bit-identical arithmetic, which keeps
        # decoding exactly equivariant under cyclic shifts
        order = np.lexsort(((cols - rows) % n, rows))
        rows, cols, coeffs = rows[order], cols[order], coeffs[order]
        dc = np.bincount(rows, minlength=n_checks)
        dv = np.bincount(cols, minlength=n)
        if len(set(dc)) != 1 or len(set(dv)) != 1:
            raise ValueError("decoder needs uniform row and column degrees")
        self.n, self.n_checks = n, n_checks
        self.dc, self.dv = int(dc[0]), int(dv[0])
        self.cols = cols
        self.coeffs = coeffs.reshape(n_checks, self.dc)
        # edges are stored check-major; var_order lists them variable-major
        self.var_order = np.lexsort(((rows - cols) % n, cols))
        self.table = mul_table(self.field)
        self._edge_prod = self.table[coeffs]  # per-edge v -> h v
        self._fwd = _flat_gather(self._edge_prod)
        self._back = _flat_gather(self.table[(-coeffs) % self.field.order])

    def syndrome_weight(self, word_ints: np.ndarray) -> int:
        prods = np.take_along_axis(self._edge_prod, word_ints[self.cols][:, None], axis=1)[:, 0]
        checks = np.bitwise_xor.reduce(prods.reshape(self.n_checks, self.dc), axis=1)
        return int(np.count_nonzero(checks))

    def decode(self, priors: np.ndarray) -> DecodeRun:
        cfg, q, f = self.config, self.field.size, self.field
        priors = np.asarray(priors, dtype=float)
        if priors.shape != (self.n, q):
            raise ValueError(f"priors must have shape {(self.n, q)}, got {priors.shape}")
        if np.any(priors < 0) or np.any(priors.sum(axis=1) <= 0):
            raise ValueError("every symbol prior needs positive mass")
        priors = priors / priors.sum(axis=1, keepdims=True)

        def finish(post: np.ndarray, it: int) -> DecodeRun | None:
            word = np.argmax(post, axis=1)  # ties go to the lowest index
            sw = self.syndrome_weight(word)
            if (sw == 0 and cfg.early_stop) or it == cfg.max_iter:
                return DecodeRun(RingPoly(f.from_ints(word), f), sw == 0, it, sw)
            return None

        run = finish(priors, 0)
        if run is not None:
            return run
        v2c = _normalize(priors[self.cols], cfg.floor)  # check-major edges
        vo = self.var_order
        with np.errstate(divide="ignore"):
            log_prior = np.log(priors)
        for it in range(1, cfg.max_iter + 1):
            c2v = _check_pass(v2c.reshape(self.n_checks, self.dc, q), self._fwd, self._back)
            c2v = _normalize(c2v.reshape(-1, q), cfg.floor)
            # messages are floored above zero, so "all but one" is total minus own in logs
            log_in = np.log(c2v[vo]).reshape(self.n, self.dv, q)
            log_post = log_in.sum(axis=1) + log_prior
            log_ext = log_post[:, None, :] - log_in
            ext = np.exp(log_ext - log_ext.max(axis=-1, keepdims=True))
            v2c = np.empty_like(c2v)
            v2c[vo] = _normalize(ext, cfg.floor).reshape(-1, q)
            run = finish(log_post, it)
            if run is not None:
                return run
        raise AssertionError("unreachable")  # pragma: no cover


def decode(H: ParityCheckMatrix, priors: np.ndarray, config: DecoderConfig | None = None) -> DecodeRun:
    return QSPDecoder(H, config).decode(priors)


def syndrome(H: ParityCheckMatrix, word: RingPoly) -> int:
    """Number of unsatisfied parity checks."""
    if word.n != H.n:
        raise ValueError("word length does not match H")
    return QSPDecoder(H).syndrome_weight(word.ints)


# Monte-Carlo simulation


@dataclass(frozen=True)
class FerPoint:
    ebno_db: float
    frames: int
    frame_errors: int
    symbol_errors: int
    bit_errors: int
    iterations: int
    undetected: int
    n: int
    m: int

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ser(self) -> float:
        return self.symbol_errors / (self.frames * self.n) if self.frames else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n * self.m) if self.frames else 0.0

    @property
    def avg_iterations(self) -> float:
        return self.iterations / self.frames if self.frames else 0.0


_WORKER: dict = {}


def _init_worker(bp: CodeBlueprint, config: DecoderConfig) -> None:
    _WORKER["bp"] = bp
    _WORKER["dec"] = QSPDecoder(bp.H, config)


def simulate_frame(bp: CodeBlueprint, dec: QSPDecoder, ch: ChannelConfig, frame: int) -> tuple[int, int, int, int, int]:
    """One frame: (frame error, symbol errors, bit errors, iterations, undetected)."""
    f = bp.field
    rng = frame_rng(ch.seed, ch.stream, frame)
    msg = f.from_ints(rng.integers(0, f.size, bp.k))
    cw = systematic_encode(bp, msg)
    y = transmit(modulate(cw), ch, rng=rng)
    run = dec.decode(symbol_priors(y, ch.sigma, f))
    if run.converged and run.syndrome_weight:
        raise AssertionError("decoder reported convergence with a nonzero syndrome")
    diff = run.decision.ints ^ cw.ints
    sym = int(np.count_nonzero(diff))
    bits = int(to_bits(diff, f).sum())
    return int(sym > 0), sym, bits, run.iterations, int(sym > 0 and run.converged)


def _frames(ch: ChannelConfig, start: int, stop: int) -> list[tuple[int, int, int, int, int]]:
    bp, dec = _WORKER["bp"], _WORKER["dec"]
    return [simulate_frame(bp, dec, ch, i) for i in range(start, stop)]


def fer_sweep(
    bp: CodeBlueprint,
    ebno_db: list[float],
    max_frames: int,
    max_errors: int,
    seed: int = 0,
    config: DecoderConfig | None = None,
    workers: int = 1,
    batch: int = 200,
) -> list[FerPoint]:
    """Simulate each Eb/N0 point until ``max_errors`` frame errors or ``max_frames``.

    Frame i of point j always sees the noise of ``frame_rng(seed, j, i)`` and
    results are consumed in frame order, so the table does not depend on
    ``workers`` or ``batch``.
    """
    if max_frames < 1 or max_errors < 1:
        raise ValueError("frame and error budgets must be positive")
    config = config or DecoderConfig()
    points = []
    pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(bp, config)) if workers > 1 else None
    if pool is None:
        _init_worker(bp, config)
    try:
        for j, eb in enumerate(ebno_db):
            ch = ChannelConfig(float(eb), bp.rate, seed, j)
            tally = [0, 0, 0, 0, 0]
            frames = 0
            start = 0
            while frames < max_frames and tally[0] < max_errors:
                bounds = [(s, min(s + batch, max_frames)) for s in range(start, max_frames, batch)][: max(workers, 1)]
                start = bounds[-1][1]
                if pool is None:
                    chunks = [_frames(ch, a, b) for a, b in bounds]
                else:
                    chunks = list(pool.map(_frames, [ch] * len(bounds), *zip(*bounds)))
                for res in (r for chunk in chunks for r in chunk):
                    frames += 1
                    tally = [t + x for t, x in zip(tally, res)]
                    if tally[0] >= max_errors:
                        break
                else:
                    continue
                break
            points.append(FerPoint(float(eb), frames, *tally, n=bp.n, m=bp.m))
    finally:
        if pool is not None:
            pool.shutdown()
    return points


FER_FIELDS = ["ebno_db", "frames", "frame_errors", "fer", "ber", "avg_iterations"]


def write_fer_csv(points: list[FerPoint], out: io.TextIOBase) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FER_FIELDS)
    for p in points:
        w.writerow([f"{p.ebno_db:g}", p.frames, p.frame_errors, f"{p.fer:.6e}", f"{p.ber:.6e}", f"{p.avg_iterations:.3f}"])


def write_fer_dat(points: list[FerPoint], out: io.TextIOBase) -> None:
    out.write("# ebno_db fer ber\n")
    for p in points:
        out.write(f"{p.ebno_db:g} {p.fer:.6e} {p.ber:.6e}\n")
