"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists holding ``int`` or
``fractions.Fraction`` entries.  Every function returns fresh lists and
never mutates its arguments, so values can be shared freely.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotPosDef, RankDeficient, Singular

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence, M: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    cols = len(M[0]) if M else 0
    out = [0] * cols
    for vi, row in zip(v, M):
        if vi:
            for j, m in enumerate(row):
                out[j] += vi * m
    return out


def scale(M: Sequence[Sequence], c) -> Matrix:
    return [[c * x for x in row] for row in M]


def kron(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    """Kronecker product: block (i, j) of the result is ``A[i][j] * B``."""
    ar, ac = shape(A)
    br, bc = shape(B)
    out = zeros(ar * br, ac * bc)
    for i in range(ar):
        for j in range(ac):
            a = A[i][j]
            if not a:
                continue
            for k in range(br):
                row = out[i * br + k]
                for l in range(bc):
                    row[j * bc + l] = a * B[k][l]
    return out


def block_diag(blocks: Iterable[Sequence[Sequence]]) -> Matrix:
    blocks = list(blocks)
    rows = sum(shape(b)[0] for b in blocks)
    cols = sum(shape(b)[1] for b in blocks)
    out = zeros(rows, cols)
    r0 = c0 = 0
    for b in blocks:
        br, bc = shape(b)
        for i in range(br):
            out[r0 + i][c0:c0 + bc] = list(b[i])
        r0 += br
        c0 += bc
    return out


def is_integral(M: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def to_int(M: Sequence[Sequence]) -> Matrix:
    """Convert a matrix with integral entries to ``int`` entries."""
    out = []
    for row in M:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError(f"non-integral entry {f}")
            new.append(f.numerator)
        out.append(new)
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form of an integer matrix.

    The rows of ``M`` may be a redundant generating set, but they must
    span a module of full rank ``cols``.  Returns ``(H, U)`` where ``H`` is
    upper triangular with positive pivots and entries above each pivot
    reduced into ``[0, pivot)``, and ``U`` is an ``m x m`` unimodular matrix
    such that ``U @ M`` equals ``H`` stacked over ``m - cols`` zero rows
    (so ``U[:cols] @ M == H``).
    """
    A = [[int(x) for x in row] for row in M]
    m, ncols = shape(A)
    U = identity(m)

    def combine(r, i, a_coef, b_coef, c_coef, d_coef):
        # (row_r, row_i) <- (a*row_r + b*row_i, c*row_r + d*row_i)
        for T in (A, U):
            R, S = T[r], T[i]
            T[r] = [a_coef * u + b_coef * v for u, v in zip(R, S)]
            T[i] = [c_coef * u + d_coef * v for u, v in zip(R, S)]

    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            if a == 0:
                A[r], A[i] = A[i], A[r]
                U[r], U[i] = U[i], U[r]
                continue
            if b % a == 0:
                combine(r, i, 1, 0, -(b // a), 1)
            else:
                g, x, y = _xgcd(a, b)
                combine(r, i, x, y, -(b // g), a // g)
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[r])]
                U[i] = [u - q * v for u, v in zip(U[i], U[r])]
        r += 1
    if r < ncols:
        raise RankDeficient(f"module has rank {r} < {ncols}")
    return A[:r], U


def _row_lcm_clear(M: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Scale each row to integers; return the integer matrix and the product of scales."""
    out = []
    total = 1
    for row in M:
        fr = [Fraction(x) for x in row]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        out.append([(f * den).numerator for f in fr])
        total *= den
    return out, total


def det_exact(M: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination.

    Integer input gives an ``int``; any rational entry gives a ``Fraction``.
    """
    n, cols = shape(M)
    if n != cols:
        raise ValueError(f"det of non-square {n}x{cols} matrix")
    rational = any(isinstance(x, Fraction) and x.denominator != 1 for row in M for x in row)
    if n == 0:
        return 1
    A, den = _row_lcm_clear(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0) if rational else 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    d = sign * A[n - 1][n - 1]
    if rational or den != 1:
        return Fraction(d, den)
    return d


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    A, _ = _row_lcm_clear(M)
    m, n = shape(A)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                a, b = A[r][c], A[i][c]
                A[i] = [a * x - b * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def invert_exact(M: Sequence[Sequence]) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n, cols = shape(M)
    if n != cols:
        raise ValueError(f"inverse of non-square {n}x{cols} matrix")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def solve_left(B: Sequence[Sequence], v: Sequence):
    """Return ``c`` with ``c @ B == v`` (rational), or ``None`` if no solution.

    ``B`` must have full row rank; the solution is then unique.
    """
    m, n = shape(B)
    # Solve B^T c = v^T by elimination on the augmented system.
    A = [[Fraction(B[i][j]) for i in range(m)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            raise RankDeficient("basis rows are linearly dependent")
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][m] != 0 for i in range(r, n)):
        return None
    return [A[i][m] for i in range(m)]


def span_contains(B: Sequence[Sequence], v: Sequence) -> bool:
    """True iff ``v`` lies in the integer row span of ``B`` (full row rank)."""
    c = solve_left(B, v)
    return c is not None and all(x.denominator == 1 for x in c)


def leading_minors_positive(G: Sequence[Sequence]) -> bool:
    n, _ = shape(G)
    return all(det_exact([row[:k] for row in G[:k]]) > 0 for k in range(1, n + 1))


def _ldl(G: Sequence[Sequence]) -> tuple[Matrix, list]:
    n, _ = shape(G)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = Fraction(G[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        for i in range(j + 1, n):
            L[i][j] = (Fraction(G[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def quadratic_form(G: Sequence[Sequence], v: Sequence):
    return sum(v[i] * G[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def enumerate_short_vectors(G: Sequence[Sequence], bound) -> list[tuple[int, ...]]:
    """All nonzero integer ``v`` with ``v G v^T <= bound``, one per +-pair.

    Fincke-Pohst enumeration on the exact LDL^T factorisation of ``G``.
    The representative of each pair has its first nonzero entry positive;
    the list is sorted lexicographically.
    """
    n, cols = shape(G)
    if n != cols:
        raise ValueError("Gram matrix must be square")
    if any(Fraction(G[i][j]) != Fraction(G[j][i]) for i in range(n) for j in range(i)):
        raise NotPosDef("Gram matrix is not symmetric")
    if not leading_minors_positive(G):
        raise NotPosDef("Gram matrix is not positive definite")
    bound = Fraction(bound)
    if bound <= 0 or n == 0:
        return []
    L, D = _ldl(G)
    x = [0] * n
    found = []

    def search(i: int, remaining: Fraction) -> None:
        center = -sum(L[j][i] * x[j] for j in range(i + 1, n))
        s = remaining / D[i]
        reach = math.isqrt(math.floor(s)) + 1
        for xi in range(math.floor(center - reach), math.ceil(center + reach) + 1):
            t = D[i] * (xi - center) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                found.append(tuple(x))
            else:
                search(i - 1, remaining - t)
        x[i] = 0

    search(n - 1, bound)
    out = []
    for v in found:
        lead = next((c for c in v if c), 0)
        if lead > 0:
            out.append(v)
    out.sort()
    return out


def _fmt_entry(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _parse_entry(tok: str):
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def format_matrix(M: Sequence[Sequence]) -> str:
    """Render in the plain text matrix format: ``rows cols`` then one row per line."""
    r, c = shape(M)
    lines = [f"{r} {c}"]
    lines += [" ".join(_fmt_entry(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError("matrix text needs a 'rows cols' header")
    r, c = int(toks[0]), int(toks[1])
    body = toks[2:]
    if len(body) != r * c:
        raise ValueError(f"expected {r * c} entries, got {len(body)}")
    vals = [_parse_entry(t) for t in body]
    return [vals[i * c:(i + 1) * c] for i in range(r)]
