"""Seeded Monte Carlo of the block-fading wiretap channel Y = diag(|h|) X + V.

X is the n x N matrix of a constellation point (column j = sigma(x_j)), so
vec(X) taken column by column is exactly the point's embedding vector.
Receivers know |h| and decode by exhaustive minimum distance.

Random numbers come from SplitMix64 with Box-Muller Gaussians.  Trial t uses
its own stream seeded from (seed, t), and that stream is reused for every SNR
value, so rates at different SNRs share fading, message and noise direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cosetcode import CosetCodebook, enumerate_constellation
from .errors import ConstellationTooLarge, RegionTooLarge

MASK64 = (1 << 64) - 1
MAX_CONSTELLATION = 4096
CSV_HEADER = "snr_db,bob_per,bob_ser,eve_ser,trials"


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood) with Box-Muller normals."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, m: int) -> int:
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m

    def normals(self, count: int) -> list[float]:
        out = []
        while len(out) < count:
            u1 = 1.0 - self.uniform()
            u2 = self.uniform()
            rad = math.sqrt(-2.0 * math.log(u1))
            out.append(rad * math.cos(2.0 * math.pi * u2))
            out.append(rad * math.sin(2.0 * math.pi * u2))
        return out[:count]


def trial_stream(seed: int, trial: int) -> SplitMix64:
    """Independent stream for one trial: seed the generator with one SplitMix64 output."""
    mixer = SplitMix64((seed ^ ((trial * 0xD1B54A32D192ED03) & MASK64)) & MASK64)
    return SplitMix64(mixer.next_u64())


@dataclass(frozen=True)
class ChannelConfig:
    """Channel parameters.

    ``sigma_h_*`` is the per-component standard deviation of the complex
    Gaussian fading, so E|h|^2 = 2 sigma_h^2.  ``sigma_b``/``sigma_e`` are
    noise standard deviations per real symbol; a nonempty ``snr_list`` (dB)
    replaces ``sigma_b`` with sqrt(Es / 10^(snr/10)), Es the mean energy per
    real coordinate of the constellation.
    """

    sigma_h_b: float = 1.0
    sigma_h_e: float = 1.0
    sigma_b: float = 1.0
    sigma_e: float = 1.0
    snr_list: tuple[float, ...] = ()
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        for name in ("sigma_h_b", "sigma_h_e", "sigma_b", "sigma_e"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        object.__setattr__(self, "snr_list", tuple(float(x) for x in self.snr_list))
        object.__setattr__(self, "seed", int(self.seed) & MASK64)


@dataclass(frozen=True)
class SimRow:
    snr_db: float
    bob_per: float
    bob_ser: float
    eve_ser: float
    trials: int


@dataclass(frozen=True)
class SimResult:
    rows: tuple[SimRow, ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.snr_db:.10g},{r.bob_per:.10g},{r.bob_ser:.10g},{r.eve_ser:.10g},{r.trials}")
        return "\n".join(lines) + "\n"


def fading_magnitudes(rng: SplitMix64, sigma_h: float, n: int) -> np.ndarray:
    g = rng.normals(2 * n)
    return sigma_h * np.hypot(np.array(g[0::2]), np.array(g[1::2]))


def vectorize_check(X: np.ndarray, h: Sequence[float], tol: float = 1e-12) -> bool:
    """vec(diag(h) X) == (I_N kron diag(h)) vec(X), with column-major vec."""
    X = np.asarray(X, dtype=float)
    h = np.asarray(h, dtype=float)
    n, N = X.shape
    if h.shape != (n,):
        raise ValueError("h must have one entry per row of X")
    lhs = (np.diag(h) @ X).flatten(order="F")
    rhs = np.kron(np.eye(N), np.diag(h)) @ X.flatten(order="F")
    return bool(np.max(np.abs(lhs - rhs), initial=0.0) <= tol)


def simulate(book: CosetCodebook, cfg: ChannelConfig) -> SimResult:
    try:
        pts = enumerate_constellation(book, "b", budget=MAX_CONSTELLATION)
    except RegionTooLarge as exc:
        raise ConstellationTooLarge(str(exc)) from exc
    n, N = book.n, book.N
    X = np.array([pt.embedding for pt in pts])
    coset_index = {s: i for i, s in enumerate(sorted({pt.secret for pt in pts}))}
    secret_ids = np.array([coset_index[pt.secret] for pt in pts])
    P = len(pts)
    Es = float(np.mean(np.sum(X * X, axis=1))) / (n * N)

    if cfg.snr_list:
        snrs = list(cfg.snr_list)
        sigmas = [math.sqrt(Es / 10 ** (s / 10)) if Es > 0 else 0.0 for s in snrs]
    else:
        sigmas = [cfg.sigma_b]
        snrs = [10 * math.log10(Es / cfg.sigma_b ** 2) if Es > 0 else float("-inf")]

    per = np.zeros(len(sigmas), dtype=np.int64)
    ser = np.zeros(len(sigmas), dtype=np.int64)
    eve = 0
    for t in range(cfg.trials):
        rng = trial_stream(cfg.seed, t)
        idx = rng.randbelow(P)
        hb = fading_magnitudes(rng, cfg.sigma_h_b, n)
        nb = np.array(rng.normals(n * N))
        he = fading_magnitudes(rng, cfg.sigma_h_e, n)
        ne = np.array(rng.normals(n * N))
        if P == 1:
            continue
        # Minimum distance: ||F(X_c - X_idx) - s*noise||^2 = a_c - 2 s b_c + const.
        Db = (X - X[idx]) * np.tile(hb, N)
        a = np.einsum("ij,ij->i", Db, Db)
        b = Db @ nb
        for j, s in enumerate(sigmas):
            dec = int(np.argmin(a - 2.0 * s * b))
            per[j] += dec != idx
            ser[j] += secret_ids[dec] != secret_ids[idx]
        De = (X - X[idx]) * np.tile(he, N)
        dec = int(np.argmin(np.einsum("ij,ij->i", De, De) - 2.0 * cfg.sigma_e * (De @ ne)))
        eve += secret_ids[dec] != secret_ids[idx]

    T = cfg.trials
    rows = tuple(SimRow(snr_db=snrs[j], bob_per=per[j] / T, bob_ser=ser[j] / T, eve_ser=eve / T, trials=T)
                 for j in range(len(sigmas)))
    return SimResult(rows=rows)
