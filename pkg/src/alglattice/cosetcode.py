"""Coset encoding over Construction A lattices and the eavesdropper confusion sum.

The fine lattice is Gamma_C and the coarse lattice is P^N (both carry the
same 1/sqrt(p) scaling when normalized); a secret s in F_p^k picks the coset lift(sG) + P^N, and an integer
randomizer vector picks the point inside it through the HNF basis of P.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import construction as cn
from . import numberfield as nf
from .codes import LinearCode, all_self_orthogonal, encode_code
from .errors import BudgetExceeded, NotInLattice, RegionTooLarge, TotallyRealOnly

DEFAULT_REGION_BUDGET = 10**6


@dataclass(frozen=True, eq=False)
class CosetCodebook:
    """Coset code on ``spec`` with randomizer coefficients in the box [-B, B]^(nN)."""

    spec: cn.LatticeSpec
    region_B: int
    precision: int = nf.DEFAULT_PRECISION

    def __post_init__(self):
        if self.region_B < 0:
            raise ValueError("region bound must be >= 0")
        object.__setattr__(self, "_M", nf.embedding_matrix(self.spec.field, precision=self.precision))
        gen = cn.build_generator(self.spec, self.precision)
        object.__setattr__(self, "_generator", np.array(gen.tolist(), dtype=float))
        object.__setattr__(self, "_basis", cn.basis_coords(self.spec))

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def num_cosets(self) -> int:
        return self.spec.p ** self.k

    @property
    def region_size(self) -> int:
        return (2 * self.region_B + 1) ** (self.n * self.N)

    @property
    def rand_bits(self) -> float:
        """Randomness spent per transmission, log2 of the number of randomizers."""
        return math.log2(self.region_size)

    @property
    def generator(self) -> np.ndarray:
        return self._generator

    def embed(self, coords: Sequence[int]) -> np.ndarray:
        vals = cn.embed_coords(self.spec, coords, self._M, self.precision)
        return np.array([float(v) for v in vals])


@dataclass(frozen=True, eq=False)
class CosetPoint:
    coords: tuple[int, ...]
    embedding: np.ndarray
    secret: tuple[int, ...] | None = None
    randomizer: tuple[int, ...] | None = None

    def matrix(self, n: int) -> np.ndarray:
        """The n x N matrix X whose column j is sigma(x_j)."""
        return self.embedding.reshape(-1, n).T


def ideal_part(book: CosetCodebook, r: Sequence[int]) -> list[int]:
    """O_K^N coordinates of the P^N element with HNF coefficients ``r``."""
    n, N = book.n, book.N
    if len(r) != n * N:
        raise ValueError(f"randomizer needs {n * N} coefficients, got {len(r)}")
    mu = book.spec.prime.ideal_basis
    out = [0] * (n * N)
    for pos in range(N):
        for l in range(n):
            c = r[pos * n + l]
            if c:
                for a in range(n):
                    out[pos * n + a] += c * mu[l][a]
    return out


def coset_encode(book: CosetCodebook, s: Sequence[int], r: Sequence[int] | None = None) -> CosetPoint:
    """x = lift(s G) + (element of P^N chosen by r)."""
    n, N = book.n, book.N
    if r is None:
        r = [0] * (n * N)
    c = encode_code(book.spec.code, s)
    coords = ideal_part(book, r)
    for pos in range(N):
        coords[pos * n] += c[pos]
    return CosetPoint(coords=tuple(coords), embedding=book.embed(coords),
                      secret=tuple(x % book.spec.p for x in s), randomizer=tuple(r))


def _coords_from_embedding(book: CosetCodebook, x: Sequence[float], tol: float) -> list[int]:
    x = np.asarray(x, dtype=float)
    G = book.generator
    if x.shape != (G.shape[1],):
        raise NotInLattice(f"expected a vector of length {G.shape[1]}")
    u = np.linalg.solve(G.T, x)
    ui = np.rint(u)
    if np.max(np.abs(ui @ G - x)) > tol:
        raise NotInLattice("vector is not a lattice point (residual too large)")
    basis = book._basis
    coords = [0] * len(basis[0])
    for c, row in zip(ui.astype(int).tolist(), basis):
        if c:
            coords = [a + c * b for a, b in zip(coords, row)]
    return coords


def coset_decode(book: CosetCodebook, x, tol: float = 1e-6) -> tuple[int, ...]:
    """Secret carried by a lattice point.

    ``x`` is a ``CosetPoint``, an exact integer coordinate vector, or a real
    embedding vector (resolved to lattice coordinates first).
    """
    if isinstance(x, CosetPoint):
        coords = list(x.coords)
    elif all(isinstance(v, (int, np.integer)) for v in x):
        coords = [int(v) for v in x]
        if len(coords) != book.n * book.N:
            raise NotInLattice(f"expected {book.n * book.N} coordinates, got {len(coords)}")
    else:
        coords = _coords_from_embedding(book, x, tol)
    word = cn.reduce_point(book.spec, coords)
    C = book.spec.code
    if not C.contains(word):
        raise NotInLattice(f"residue {word} is not a codeword")
    return tuple(word[j] for j in C.info_positions)


def enumerate_constellation(book: CosetCodebook, lattice: str = "e",
                            budget: int = DEFAULT_REGION_BUDGET) -> list[CosetPoint]:
    """Points of Lambda_e (``"e"``) or Lambda_b (``"b"``) with randomizer in the box.

    Order is lexicographic in (secret, randomizer coefficients).
    """
    if lattice not in ("e", "b"):
        raise ValueError("lattice must be 'e' or 'b'")
    secrets = [tuple([0] * book.k)] if lattice == "e" else \
        list(itertools.product(range(book.spec.p), repeat=book.k))
    total = len(secrets) * book.region_size
    if total > budget:
        raise RegionTooLarge(f"{total} points exceed budget {budget}")
    B = book.region_B
    box = list(itertools.product(range(-B, B + 1), repeat=book.n * book.N))
    # Embeddings are linear in the coordinates: precompute images of unit vectors.
    dim = book.n * book.N
    unit = np.array([book.embed([int(i == j) for j in range(dim)]) for i in range(dim)])
    out = []
    for s in secrets:
        for r in box:
            c = encode_code(book.spec.code, s)
            coords = ideal_part(book, r)
            for pos in range(book.N):
                coords[pos * book.n] += c[pos]
            out.append(CosetPoint(coords=tuple(coords), embedding=np.asarray(coords, dtype=float) @ unit,
                                  secret=tuple(s), randomizer=tuple(r)))
    return out


def _require_totally_real(book: CosetCodebook) -> None:
    if book.spec.cm or not book.spec.field.is_totally_real:
        raise TotallyRealOnly("diversity metrics need a totally real field")


def sum_of_squares_norm(book: CosetCodebook, coords: Sequence[int]) -> int:
    """Exact N_{K/Q}(sum_j x_j^2), independent of the 1/sqrt(p) scaling."""
    K = book.spec.field
    n = book.n
    acc = K.from_int(0)
    for pos in range(book.N):
        xj = K.element(coords[pos * n:(pos + 1) * n])
        acc = acc + xj * xj
    return nf.norm(acc)


@dataclass(frozen=True)
class ConfusionSum:
    direct: float
    norm_form: float
    exact: Fraction | None
    count: int


def _nonzero(points: Iterable[CosetPoint]) -> list[CosetPoint]:
    return [pt for pt in points if any(pt.coords)]


def confusion_sum(book: CosetCodebook, points: Iterable[CosetPoint]) -> ConfusionSum:
    """Sum over nonzero points of prod_i ||x_i||^-(N+2), x_i the rows of X.

    ``direct`` uses floating row norms; ``norm_form`` and ``exact`` use the
    integer N(sum_j x_j^2), scaled by p^-n when the lattice is normalized.
    ``exact`` is a Fraction for even N and None otherwise.
    """
    _require_totally_real(book)
    pts = _nonzero(points)
    n, N = book.n, book.N
    e = N + 2
    row_scale = Fraction(book.spec.p) ** n if book.spec.scaled else Fraction(1)
    direct = 0.0
    norm_form = 0.0
    exact = Fraction(0) if N % 2 == 0 else None
    for pt in pts:
        X = pt.matrix(n)
        row_norms = np.sqrt(np.sum(X * X, axis=1))
        assert np.all(row_norms > 0), "zero row on a nonzero point of a totally real lattice"
        direct += float(np.prod(row_norms ** (-e)))
        nm = sum_of_squares_norm(book, pt.coords)
        # prod_i ||x_i||^2 = N(sum x_j^2) / p^n under normalization
        prod_sq = Fraction(nm) / row_scale
        norm_form += float(prod_sq) ** (-e / 2)
        if exact is not None:
            exact += (1 / prod_sq) ** (e // 2)
    return ConfusionSum(direct=direct, norm_form=norm_form, exact=exact, count=len(pts))


def full_diversity_check(book: CosetCodebook, points: Iterable[CosetPoint]) -> bool:
    """Every nonzero point has N(sum_j x_j^2) a nonzero integer."""
    _require_totally_real(book)
    return all(sum_of_squares_norm(book, pt.coords) >= 1 for pt in _nonzero(points))


def constellation_rows(book: CosetCodebook, points: Sequence[CosetPoint]) -> list[dict]:
    """Per-point data for the CSV dump: coefficients, row norms, exact norm, term."""
    _require_totally_real(book)
    n, e = book.n, book.N + 2
    row_scale = Fraction(book.spec.p) ** n if book.spec.scaled else Fraction(1)
    rows = []
    for idx, pt in enumerate(points):
        X = pt.matrix(n)
        norms = np.sqrt(np.sum(X * X, axis=1))
        nm = sum_of_squares_norm(book, pt.coords)
        term = float(np.prod(norms ** (-e))) if nm else 0.0
        rows.append({"index": idx, "coefficients": pt.randomizer, "row_norms": norms.tolist(),
                     "norm": nm, "term": term, "term_exact": None if not nm or book.N % 2 else
                     (row_scale / nm) ** (e // 2)})
    return rows


def code_search(p: int, N: int, k: int, field: nf.FieldSpec, region_B: int, *,
                normalized: bool = True, budget: int = 10_000,
                precision: int = 64) -> tuple[LinearCode, float]:
    """Exhaustive search over self-orthogonal (N, k) codes for the smallest confusion sum.

    Ties break toward the lexicographically smallest generator.
    """
    candidates = all_self_orthogonal(p, N, k, budget)
    if not candidates:
        raise BudgetExceeded(f"no self-orthogonal ({N},{k}) code over F_{p}")
    best = None
    for C in candidates:
        spec = cn.make_spec(field, C, normalized=normalized, alpha_mode="inv_p" if normalized else "one")
        book = CosetCodebook(spec, region_B, precision)
        value = confusion_sum(book, enumerate_constellation(book, "e")).direct
        if best is None or value < best[1]:
            best = (C, value)
    return best
