"""Construction A over a number field: the lattice of all x in O_K^N reducing to C.

A lattice point is an integer vector of length n*N holding the power-basis
coordinates of x_1, ..., x_N (position-major).  The exact Gram matrix comes
from the trace form on those coordinates; the floating generator matrix
comes from the embeddings and is only a cross-check.

Coordinates stay in the code's original position order.  Basis rows follow
the block shape of the generator
``[[I_k (x) M, A (x) M], [0, I_{N-k} (x) DM]]``: information rows first in
(information position, power-basis index) order, then ideal rows.  When the
code needs a column permutation to reach ``(I_k | A)``, the blocks sit at the
permuted positions; ``LatticeSpec.code.col_perm`` records where.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import exactlin
from . import numberfield as nf
from .codes import LinearCode, is_self_orthogonal
from .errors import InconsistencyError, IntegralityWarning, NotCMField

ALPHA_MODES = ("one", "inv_p")


@dataclass(frozen=True)
class LatticeSpec:
    """Inputs of the construction.

    ``alpha_mode="inv_p"`` (trace form scaled by 1/p) and ``normalized=True``
    (lattice divided by sqrt(p)) describe the same lattice, so either flag
    selects that scaling and it is applied once.
    """

    field: nf.FieldSpec
    prime: nf.RamifiedPrimeData
    code: LinearCode
    alpha_mode: str = "inv_p"
    cm: bool = False
    normalized: bool = True

    def __post_init__(self):
        if self.alpha_mode not in ALPHA_MODES:
            raise ValueError(f"alpha_mode must be one of {ALPHA_MODES}")
        if self.prime.field != self.field:
            raise ValueError("prime data belongs to a different field")
        if self.code.p != self.prime.p:
            raise ValueError(f"code is over F_{self.code.p} but the prime is {self.prime.p}")
        if self.cm:
            if not (self.field.is_cm or self.field.kind == "rational"):
                raise NotCMField(f"conjugate trace form needs a cyclotomic field, got {self.field.kind}")
        elif not self.field.is_totally_real:
            raise NotCMField("trace form is indefinite on a field with complex embeddings; use cm=True")
        if self.scaled and not is_self_orthogonal(self.code):
            warnings.warn("code is not self-orthogonal: alpha = 1/p need not give an integral lattice",
                          IntegralityWarning, stacklevel=3)

    @property
    def scaled(self) -> bool:
        return self.alpha_mode == "inv_p" or self.normalized

    @property
    def form_scale(self) -> Fraction:
        return Fraction(1, self.prime.p) if self.scaled else Fraction(1)

    @property
    def n(self) -> int:
        return self.field.degree

    @property
    def N(self) -> int:
        return self.code.N

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def rank(self) -> int:
        return self.n * self.N

    @property
    def p(self) -> int:
        return self.prime.p


def make_spec(field: nf.FieldSpec, code: LinearCode, *, alpha_mode: str = "inv_p",
              normalized: bool = True, cm: bool = False) -> LatticeSpec:
    return LatticeSpec(field=field, prime=nf.ramified_prime_data(field, code.p), code=code,
                       alpha_mode=alpha_mode, cm=cm, normalized=normalized)


def basis_coords(spec: LatticeSpec) -> list[list[int]]:
    """Integer O_K^N coordinates of the basis rows of the lattice."""
    n, N, k = spec.n, spec.N, spec.k
    C = spec.code
    perm = C.col_perm
    rows = []
    for i in range(k):
        for j in range(n):
            v = [0] * (n * N)
            v[perm[i] * n + j] = 1
            for t in range(N - k):
                v[perm[k + t] * n + j] = C.A[i][t]
            rows.append(v)
    for t in range(N - k):
        pos = perm[k + t]
        for mu in spec.prime.ideal_basis:
            v = [0] * (n * N)
            v[pos * n:(pos + 1) * n] = list(mu)
            rows.append(v)
    return rows


def ambient_form(spec: LatticeSpec) -> list[list[Fraction]]:
    """Gram matrix of the trace form on the power-basis coordinates of O_K^N."""
    T = nf.trace_matrix(spec.field, conjugate=spec.cm)
    s = spec.form_scale
    return exactlin.kron(exactlin.identity(spec.N), exactlin.scale(T, s))


def _gram_from_coords(B: Sequence[Sequence], T: Sequence[Sequence], n: int, s) -> list[list]:
    """B (I_N kron T) B^T * s, using the block structure for speed."""
    BQ = []
    for row in B:
        out = []
        for pos in range(len(row) // n):
            seg = row[pos * n:(pos + 1) * n]
            out.extend(exactlin.vecmat(seg, T) if any(seg) else [0] * n)
        BQ.append(out)
    size = len(B)
    G = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            v = sum(a * b for a, b in zip(BQ[i], B[j])) * s
            G[i][j] = G[j][i] = v
    return G


def build_gram(spec: LatticeSpec) -> list[list[Fraction]]:
    """Exact Gram matrix from pairwise trace inner products of the basis rows."""
    T = nf.trace_matrix(spec.field, conjugate=spec.cm)
    return _gram_from_coords(basis_coords(spec), T, spec.n, spec.form_scale)


def embed_coords(spec: LatticeSpec, coords: Sequence, M: mpmath.matrix | None = None,
                 precision: int = nf.DEFAULT_PRECISION) -> list:
    """Real embedding (sigma(x_1), ..., sigma(x_N)) of an O_K^N coordinate vector."""
    n = spec.n
    with mpmath.workprec(precision):
        if M is None:
            M = nf.embedding_matrix(spec.field, precision=precision)
        factor = 1 / mpmath.sqrt(spec.p) if spec.scaled else mpmath.mpf(1)
        out = []
        for pos in range(len(coords) // n):
            seg = coords[pos * n:(pos + 1) * n]
            for col in range(n):
                acc = mpmath.mpf(0)
                for a, c in enumerate(seg):
                    if c:
                        acc += mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator * M[a, col]
                out.append(acc * factor)
        return out


def build_generator(spec: LatticeSpec, precision: int = nf.DEFAULT_PRECISION) -> mpmath.matrix:
    """Floating generator matrix M_C, rows = embeddings of the basis rows."""
    with mpmath.workprec(precision):
        M = nf.embedding_matrix(spec.field, precision=precision)
        rows = [embed_coords(spec, r, M, precision) for r in basis_coords(spec)]
        return mpmath.matrix(rows)


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """A lattice as basis rows in ambient coordinates with an ambient Gram ``form``."""

    coords: list
    form: list
    gram: list
    generator: mpmath.matrix | None = None
    spec: LatticeSpec | None = None
    precision: int = nf.DEFAULT_PRECISION

    @property
    def rank(self) -> int:
        return len(self.coords)

    @classmethod
    def from_basis(cls, coords: Sequence[Sequence], form: Sequence[Sequence] | None = None) -> "LatticeBasis":
        coords = [list(r) for r in coords]
        if form is None:
            form = exactlin.identity(len(coords[0]))
        form = [list(r) for r in form]
        gram = exactlin.matmul(exactlin.matmul(coords, form), exactlin.transpose(coords))
        return cls(coords=coords, form=form, gram=gram)

    def generator_floats(self) -> np.ndarray:
        if self.generator is None:
            raise ValueError("lattice has no generator matrix")
        return np.array(self.generator.tolist(), dtype=float)


def build_lattice(spec: LatticeSpec, precision: int = nf.DEFAULT_PRECISION,
                  with_generator: bool = True) -> LatticeBasis:
    gen = build_generator(spec, precision) if with_generator else None
    return LatticeBasis(coords=basis_coords(spec), form=ambient_form(spec), gram=build_gram(spec),
                        generator=gen, spec=spec, precision=precision)


def build_cm(spec: LatticeSpec, precision: int = nf.DEFAULT_PRECISION) -> LatticeBasis:
    """Lattice under the conjugate trace form sum tr(alpha x_i conj(y_i))."""
    if not spec.cm:
        raise ValueError("build_cm needs a spec with cm=True")
    return build_lattice(spec, precision)


def gram_residual(L: LatticeBasis) -> float:
    """max |gram - M_C M_C^T| evaluated at the lattice's working precision."""
    if L.generator is None:
        raise ValueError("lattice has no generator matrix")
    with mpmath.workprec(L.precision):
        MMt = L.generator * L.generator.T
        worst = mpmath.mpf(0)
        for i in range(L.rank):
            for j in range(L.rank):
                g = L.gram[i][j]
                g = mpmath.mpf(Fraction(g).numerator) / Fraction(g).denominator
                worst = max(worst, abs(MMt[i, j] - g))
        return float(worst)


def discriminant(spec: LatticeSpec) -> Fraction:
    return Fraction(exactlin.det_exact(build_gram(spec)))


def discriminant_formula(spec: LatticeSpec) -> Fraction:
    """|d_K|^N p^(2(N-k)) times the 1/p^(nN) normalisation when scaled."""
    dK = abs(nf.field_discriminant(spec.field))
    return Fraction(dK) ** spec.N * Fraction(spec.p) ** (2 * (spec.N - spec.k)) * spec.form_scale ** spec.rank


def check_discriminant(spec: LatticeSpec, gram: Sequence[Sequence] | None = None) -> Fraction:
    d = Fraction(exactlin.det_exact(gram if gram is not None else build_gram(spec)))
    expected = discriminant_formula(spec)
    if d != expected:
        raise InconsistencyError(f"discriminant {d} != closed form {expected}")
    return d


def dual_basis(L: LatticeBasis) -> LatticeBasis:
    """Dual lattice under the same ambient form: basis gram^-1 * B."""
    ginv = exactlin.invert_exact(L.gram)
    coords = exactlin.matmul(ginv, L.coords)
    gen = None
    if L.generator is not None:
        with mpmath.workprec(L.precision):
            G = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in ginv])
            gen = G * L.generator
    return LatticeBasis(coords=coords, form=L.form, gram=ginv, generator=gen, spec=None,
                        precision=L.precision)


def _as_basis(L) -> LatticeBasis:
    return L if isinstance(L, LatticeBasis) else LatticeBasis.from_basis(L)


def lattice_equal(L1, L2) -> bool:
    """True iff both bases generate the same lattice (integral unimodular change of basis)."""
    L1, L2 = _as_basis(L1), _as_basis(L2)
    if exactlin.shape(L1.coords) != exactlin.shape(L2.coords):
        raise ValueError("lattices of different rank or ambient dimension")
    if [[Fraction(x) for x in r] for r in L1.form] != [[Fraction(x) for x in r] for r in L2.form]:
        raise ValueError("lattices live in different ambient spaces")
    T = exactlin.matmul(L1.coords, exactlin.invert_exact(L2.coords))
    Tinv = exactlin.matmul(L2.coords, exactlin.invert_exact(L1.coords))
    if not (exactlin.is_integral(T) and exactlin.is_integral(Tinv)):
        return False
    return abs(exactlin.det_exact(T)) == 1


@dataclass(frozen=True)
class Classification:
    integral: bool
    unimodular: bool
    parity: str | None
    det: Fraction


def classify(L: LatticeBasis | Sequence[Sequence]) -> Classification:
    gram = L.gram if isinstance(L, LatticeBasis) else L
    det = Fraction(exactlin.det_exact(gram))
    integral = exactlin.is_integral(gram)
    parity = None
    if integral:
        parity = "odd" if any(Fraction(gram[i][i]).numerator % 2 for i in range(len(gram))) else "even"
    return Classification(integral=integral, unimodular=integral and abs(det) == 1,
                          parity=parity, det=det)


def norm_one_vectors(L: LatticeBasis | Sequence[Sequence]) -> list[tuple[int, ...]]:
    gram = L.gram if isinstance(L, LatticeBasis) else L
    return exactlin.enumerate_short_vectors(gram, 1)


def is_isometric_zn(L: LatticeBasis | Sequence[Sequence], max_rank: int = 8) -> bool:
    """For a unimodular lattice: does it have ``rank`` pairwise orthogonal norm-1 vectors?"""
    gram = L.gram if isinstance(L, LatticeBasis) else L
    n = len(gram)
    if n > max_rank:
        raise ValueError(f"rank {n} above the supported bound {max_rank}")
    if not classify(gram).unimodular:
        raise ValueError("Z^n probe requires a unimodular lattice")
    vecs = norm_one_vectors(gram)
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            u, v = vecs[a], vecs[b]
            ip = sum(u[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
            if ip != 0:
                return False
    return len(vecs) == n


def reduce_point(spec: LatticeSpec, coords: Sequence[int]) -> tuple[int, ...]:
    """Residue of each O_K coordinate block in F_p."""
    n = spec.n
    return tuple(nf.residue_reduce(coords[pos * n:(pos + 1) * n], spec.prime) for pos in range(spec.N))


# ---------------------------------------------------------------- bundle file

def _spec_lines(spec: LatticeSpec) -> list[str]:
    K = spec.field
    return [
        f"kind={K.kind}",
        f"p={spec.p}",
        f"r={'' if K.r is None else K.r}",
        f"minpoly={nf.format_poly(K.minpoly)}",
        f"N={spec.N}",
        f"k={spec.k}",
        f"alpha={spec.alpha_mode}",
        f"normalized={str(spec.normalized).lower()}",
        f"cm={str(spec.cm).lower()}",
        f"col_perm={','.join(str(c) for c in spec.code.col_perm)}",
        f"code={';'.join(' '.join(str(x) for x in row) for row in spec.code.G)}",
    ]


def format_bundle(L: LatticeBasis) -> str:
    parts = []
    if L.spec is not None:
        parts.append("SPEC\n" + "\n".join(_spec_lines(L.spec)) + "\n")
    parts.append("GRAM\n" + exactlin.format_matrix(L.gram))
    if L.generator is not None:
        parts.append("GENERATOR\n" + exactlin.format_matrix(L.generator_floats().tolist()))
    return "".join(parts)


def parse_bundle(text: str) -> dict:
    """Split a bundle into ``{"SPEC": {key: value}, "GRAM": matrix, "GENERATOR": matrix}``."""
    out: dict = {}
    current = None
    buf: list[str] = []

    def flush():
        if current is None:
            return
        if current == "SPEC":
            out["SPEC"] = dict(line.split("=", 1) for line in buf if line.strip())
        else:
            out[current] = exactlin.parse_matrix("\n".join(buf))

    for line in text.splitlines():
        if line.strip() in ("SPEC", "GRAM", "GENERATOR"):
            flush()
            current, buf = line.strip(), []
        else:
            buf.append(line)
    flush()
    return out
