"""Independent reference computations used only by the tests.

Each oracle takes a different route from the package code: cofactor
expansion instead of elimination, box search instead of branch and bound,
sympy instead of hand-rolled field arithmetic.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import sympy


def cofactor_det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * Fraction(M[0][j]) * cofactor_det(minor)
    return total


def adjugate_inverse(M):
    n = len(M)
    d = cofactor_det(M)
    adj = [[(-1) ** (i + j) * cofactor_det([r[:i] + r[i + 1:] for k, r in enumerate(M) if k != j])
            for j in range(n)] for i in range(n)]
    return [[adj[i][j] / d for j in range(n)] for i in range(n)]


def box_short_vectors(G, bound):
    """All v != 0 with v^T G v <= bound, one of each +-pair, by box search.

    The box radius comes from the smallest eigenvalue: |v_i|^2 <= |v|^2 <= bound / lambda_min.
    """
    n = len(G)
    lam = float(np.linalg.eigvalsh(np.array(G, dtype=float)).min())
    radius = int(math.isqrt(int(math.floor(float(bound) / lam * 1.0001)) + 1)) + 1
    out = set()
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        if not any(v):
            continue
        q = sum(Fraction(G[i][j]) * v[i] * v[j] for i in range(n) for j in range(n))
        if q <= bound:
            first = next(x for x in v if x)
            out.add(v if first > 0 else tuple(-x for x in v))
    return out


def in_integer_span(rows, v, box=6):
    """Brute force: is v an integer combination of rows with coefficients in [-box, box]?"""
    for c in itertools.product(range(-box, box + 1), repeat=len(rows)):
        if all(sum(ci * r[j] for ci, r in zip(c, rows)) == v[j] for j in range(len(v))):
            return True
    return False


def sympy_discriminant(minpoly):
    x = sympy.Symbol("x")
    return int(sympy.discriminant(sympy.Poly(list(reversed(minpoly)), x)))


def sympy_real_subfield_minpoly(p, r=1):
    x = sympy.Symbol("x")
    m = p ** r
    expr = 2 * sympy.cos(2 * sympy.pi / m)
    poly = sympy.Poly(sympy.minimal_polynomial(expr, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def self_orthogonal_brute(p, N, k):
    """All self-orthogonal k-dim codes, as frozensets of codewords."""
    vecs = [v for v in itertools.product(range(p), repeat=N)
            if any(v) and sum(a * a for a in v) % p == 0]
    seen = set()
    for combo in itertools.combinations(vecs, k):
        if any(sum(a * b for a, b in zip(u, w)) % p for u in combo for w in combo):
            continue
        span = frozenset(
            tuple(sum(c * u[j] for c, u in zip(cs, combo)) % p for j in range(N))
            for cs in itertools.product(range(p), repeat=k))
        if len(span) == p ** k:
            seen.add(span)
    return seen


def binary_gram(G_rows, N):
    """(1/2) M M^T for M = [[I_k, A], [0, 2 I_{N-k}]] in the code's own column order.

    Pivots of the RREF generator are the information columns; the 2 e_j
    rows sit on the remaining columns.
    """
    k = len(G_rows)
    pivots = [next(j for j, x in enumerate(row) if x) for row in G_rows]
    rows = [list(r) for r in G_rows]
    for j in range(N):
        if j not in pivots:
            rows.append([2 if t == j else 0 for t in range(N)])
    M = sympy.Matrix(rows)
    return (M * M.T) / 2, k
