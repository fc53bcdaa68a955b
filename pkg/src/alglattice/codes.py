"""Linear codes over a prime field F_p.

Symbols are ints in ``[0, p)``.  A code is stored by its reduced row echelon
generator in the original coordinates; ``col_perm`` lists the pivot columns
first, so ``G`` with its columns reordered by ``col_perm`` is ``(I_k | A)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, NotFound, RankDeficient

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LinearCode:
    p: int
    N: int
    k: int
    G: Rows
    A: Rows
    col_perm: tuple[int, ...]

    @property
    def info_positions(self) -> tuple[int, ...]:
        return self.col_perm[: self.k]

    @property
    def is_identity_perm(self) -> bool:
        return self.col_perm == tuple(range(self.N))

    def systematic_matrix(self) -> list[list[int]]:
        """``(I_k | A)`` in permuted coordinates."""
        return [[1 if j == i else 0 for j in range(self.k)] + list(self.A[i]) for i in range(self.k)]

    def codewords(self) -> Iterator[tuple[int, ...]]:
        for s in itertools.product(range(self.p), repeat=self.k):
            yield encode_code(self, s)

    def contains(self, word: Sequence[int]) -> bool:
        word = [w % self.p for w in word]
        s = [word[j] for j in self.info_positions]
        return list(encode_code(self, s)) == word


def _rref_mod_p(rows: Sequence[Sequence[int]], p: int, N: int) -> tuple[list[list[int]], list[int]]:
    R = [[int(x) % p for x in row] for row in rows]
    for row in R:
        if len(row) != N:
            raise ValueError(f"row length {len(row)} != N = {N}")
    pivots = []
    r = 0
    for c in range(N):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = pow(R[r][c], -1, p)
        R[r] = [(x * inv) % p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [(x - f * y) % p for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def systematic_form(G_raw: Sequence[Sequence[int]], p: int, N: int | None = None) -> LinearCode:
    """Row-reduce over F_p and record the column permutation reaching ``(I_k | A)``."""
    if N is None:
        if not G_raw:
            raise ValueError("N is required for an empty generator")
        N = len(G_raw[0])
    R, pivots = _rref_mod_p(G_raw, p, N)
    if len(R) < len(G_raw):
        raise RankDeficient(f"generator has rank {len(R)} < {len(G_raw)} rows over F_{p}")
    k = len(R)
    others = [c for c in range(N) if c not in pivots]
    perm = tuple(pivots + others)
    A = tuple(tuple(R[i][c] for c in others) for i in range(k))
    return LinearCode(p=p, N=N, k=k, G=tuple(tuple(row) for row in R), A=A, col_perm=perm)


def dual(C: LinearCode) -> LinearCode:
    """C-perp, from ``(-A^T | I_{N-k})`` in C's permuted coordinates."""
    p, N, k = C.p, C.N, C.k
    rows = []
    for t in range(N - k):
        permuted = [(-C.A[j][t]) % p for j in range(k)] + [int(t == u) for u in range(N - k)]
        row = [0] * N
        for j, c in enumerate(C.col_perm):
            row[c] = permuted[j]
        rows.append(row)
    return systematic_form(rows, p, N)


def dot(u: Sequence[int], v: Sequence[int], p: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % p


def is_self_orthogonal(C: LinearCode) -> bool:
    return all(dot(g, h, C.p) == 0 for g in C.G for h in C.G)


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.k == C.N and is_self_orthogonal(C)


def encode_code(C: LinearCode, s: Sequence[int]) -> tuple[int, ...]:
    if len(s) != C.k:
        raise ValueError(f"message length {len(s)} != k = {C.k}")
    word = [0] * C.N
    for si, row in zip(s, C.G):
        si %= C.p
        if si:
            for j, g in enumerate(row):
                word[j] += si * g
    return tuple(w % C.p for w in word)


def minimum_distance(C: LinearCode, max_length: int = 12) -> int | None:
    """Brute-force minimum Hamming weight; ``None`` for the zero code."""
    if C.N > max_length:
        raise BudgetExceeded(f"brute force limited to N <= {max_length}")
    weights = [sum(1 for c in w if c) for w in C.codewords()]
    nonzero = [w for w in weights if w]
    return min(nonzero) if nonzero else None


def random_self_orthogonal(p: int, N: int, k: int, seed: int, max_tries: int | None = None) -> LinearCode:
    """Seeded random search for a k-dimensional self-orthogonal code.

    Vectors are drawn from the dual of the span found so far and kept when
    isotropic and independent; a stalled partial code is discarded.
    """
    if 2 * k > N:
        raise ValueError("self-orthogonal codes need k <= N/2")
    if k == 0:
        return systematic_form([], p, N)
    rng = np.random.default_rng(seed)
    if max_tries is None:
        max_tries = 400 * p * p + 4000
    rows: list[list[int]] = []
    stall = 0
    for _ in range(max_tries):
        if rows:
            D = dual(systematic_form(rows, p, N))
            v = list(encode_code(D, [int(c) for c in rng.integers(0, p, size=D.k)]))
        else:
            v = [int(x) for x in rng.integers(0, p, size=N)]
        stall += 1
        if stall > 50 * p:
            rows, stall = [], 0
            continue
        if not any(v) or dot(v, v, p):
            continue
        try:
            systematic_form(rows + [v], p, N)
        except RankDeficient:
            continue
        rows.append(v)
        stall = 0
        if len(rows) == k:
            return systematic_form(rows, p, N)
    raise NotFound(f"no self-orthogonal ({N},{k}) code over F_{p} found in {max_tries} draws")


def count_subspaces(p: int, N: int, k: int) -> int:
    """Gaussian binomial coefficient [N choose k]_p."""
    num = den = 1
    for i in range(k):
        num *= p ** (N - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def all_subspaces(p: int, N: int, k: int, budget: int = 10_000) -> Iterator[LinearCode]:
    """Every k-dimensional code of length N, one RREF generator each."""
    total = count_subspaces(p, N, k)
    if total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed budget {budget}")
    for pivots in itertools.combinations(range(N), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, N) if j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            G = [[0] * N for _ in range(k)]
            for i, c in enumerate(pivots):
                G[i][c] = 1
            for (i, j), v in zip(free, vals):
                G[i][j] = v
            yield systematic_form(G, p, N)


def all_self_orthogonal(p: int, N: int, k: int, budget: int = 10_000) -> list[LinearCode]:
    """All self-orthogonal (N, k) codes, sorted by generator matrix."""
    codes = [C for C in all_subspaces(p, N, k, budget) if is_self_orthogonal(C)]
    codes.sort(key=lambda C: C.G)
    return codes


def format_code(C: LinearCode) -> str:
    lines = [f"{C.p} {C.N} {C.k}"]
    lines += [" ".join(str(x) for x in row) for row in C.G]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    toks = text.split()
    if len(toks) < 3:
        raise ValueError("code text needs a 'p N k' header")
    p, N, k = (int(t) for t in toks[:3])
    body = [int(t) for t in toks[3:]]
    if len(body) != N * k:
        raise ValueError(f"expected {N * k} symbols, got {len(body)}")
    return systematic_form([body[i * N:(i + 1) * N] for i in range(k)], p, N)
