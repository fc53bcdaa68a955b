"""Exact arithmetic in Z[theta] for theta a root of a monic irreducible polynomial.

Elements are integer coordinate vectors in the power basis
``1, theta, ..., theta^(n-1)``.  Traces come from the power sums of the
roots (Newton's identities), so nothing correctness-critical touches floats.
Embeddings are evaluated with mpmath at a caller-chosen bit precision.

Polynomials are tuples of integer coefficients, constant term first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy

from . import exactlin
from .errors import (
    DegreeTooLarge,
    NotCMField,
    NotTotallyRamified,
    Reducible,
    ResidueDegreeNotOne,
)

DEFAULT_PRECISION = 128
DEFAULT_MAX_DEGREE = 32

Poly = tuple[int, ...]


# ---------------------------------------------------------------- polynomials

def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_rem(a: Sequence[int], f: Sequence[int]) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``, padded to ``deg f``."""
    n = len(f) - 1
    r = list(a)
    for top in range(len(r) - 1, n - 1, -1):
        c = r[top]
        if c:
            for i in range(n + 1):
                r[top - n + i] -= c * f[i]
    r = r[:n]
    return r + [0] * (n - len(r))


def charpoly(M: Sequence[Sequence[int]]) -> Poly:
    """Characteristic polynomial det(xI - M) by Faddeev-LeVerrier (exact)."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = exactlin.matmul(M, Mk)
        Mk = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AMk = exactlin.matmul(M, Mk)
        coeffs[n - k] = -sum(AMk[i][i] for i in range(n)) / k
    assert all(c.denominator == 1 for c in coeffs)
    return tuple(int(c) for c in coeffs)


def format_poly(f: Sequence[int]) -> str:
    return " ".join(str(c) for c in f)


def parse_poly(text: str) -> Poly:
    toks = text.replace(",", " ").split()
    if not toks:
        raise ValueError("empty polynomial")
    return tuple(int(t) for t in toks)


def poly_str(f: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            s = f"{coef} {mono}"
        else:
            s = f"{'-' if c < 0 else '+'} {abs(c)}{mono}"
        terms.append(s)
    if not terms:
        return "0"
    out = " ".join(terms)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


# ---------------------------------------------------------------- field data

def _newton_power_sums(f: Poly, count: int) -> tuple[int, ...]:
    n = len(f) - 1
    s = [n]
    for m in range(1, count):
        acc = 0
        for i in range(1, min(m - 1, n) + 1):
            acc += f[n - i] * s[m - i]
        if m <= n:
            acc += m * f[n - m]
        s.append(-acc)
    return tuple(s)


@dataclass(frozen=True)
class FieldSpec:
    """A number field Q(theta), theta a root of the monic integer ``minpoly``.

    ``kind`` is one of ``real_subfield``, ``cyclotomic``, ``rational``,
    ``generic``; ``p`` and ``r`` are set for the two cyclotomic kinds.
    """

    minpoly: Poly
    kind: str
    signature: tuple[int, int]
    p: int | None = None
    r: int | None = None
    power_sums: tuple[int, ...] = dc_field(default=(), repr=False, compare=False)

    def __post_init__(self):
        f = tuple(int(c) for c in self.minpoly)
        if len(f) < 2 or f[-1] != 1:
            raise ValueError(f"minimal polynomial must be monic of degree >= 1: {f}")
        object.__setattr__(self, "minpoly", f)
        n = len(f) - 1
        r1, r2 = self.signature
        if r1 + 2 * r2 != n:
            raise ValueError(f"signature {self.signature} inconsistent with degree {n}")
        if self.kind == "real_subfield" and r2 != 0:
            raise ValueError("real subfield must be totally real")
        if not self.power_sums:
            object.__setattr__(self, "power_sums", _newton_power_sums(f, max(2 * n - 1, 1)))
        assert self.power_sums[0] == n

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_totally_real(self) -> bool:
        return self.signature[1] == 0

    @property
    def is_cm(self) -> bool:
        return self.kind == "cyclotomic"

    @property
    def conductor(self) -> int | None:
        return None if self.p is None else self.p ** self.r

    def element(self, coords: Sequence[int]) -> "FieldElement":
        return FieldElement(self, tuple(coords))

    def from_int(self, c: int) -> "FieldElement":
        return self.element([c] + [0] * (self.degree - 1))

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def theta(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_int(-self.minpoly[0])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def power_basis(self) -> list["FieldElement"]:
        n = self.degree
        return [self.element([int(i == j) for j in range(n)]) for i in range(n)]

    def describe(self) -> str:
        tag = self.kind if self.p is None else f"{self.kind}(p={self.p}, r={self.r})"
        return f"{tag}: {poly_str(self.minpoly)}, degree {self.degree}, signature {self.signature}"


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.field.degree:
            raise ValueError(f"expected {self.field.degree} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(other * a for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.field.one()
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)


# ---------------------------------------------------------------- constructors

def rational_field() -> FieldSpec:
    """Q with theta = 0 (minpoly x), so coordinates are plain integers."""
    return FieldSpec(minpoly=(0, 1), kind="rational", signature=(1, 0), p=None, r=None)


def _cyclotomic_poly(p: int, r: int) -> list[int]:
    step = p ** (r - 1)
    coeffs = [0] * (step * (p - 1) + 1)
    for j in range(p):
        coeffs[j * step] = 1
    return coeffs


def _check_prime(p: int) -> None:
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")


def realsubfield_field(p: int, r: int = 1, max_degree: int = DEFAULT_MAX_DEGREE) -> FieldSpec:
    """Q(zeta + zeta^-1) for zeta a primitive p^r-th root of unity, p odd."""
    _check_prime(p)
    if p == 2:
        raise ValueError("real subfield constructor needs an odd prime")
    if r < 1:
        raise ValueError("r must be >= 1")
    n = p ** (r - 1) * (p - 1) // 2
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds bound {max_degree}")
    c = _cyclotomic_poly(p, r)
    # Basis b_0 = 1, b_m = zeta^m + zeta^-m; zeta^-n Phi(zeta) = 0 gives
    # b_n = -(c_n + sum_{m=1}^{n-1} c_{n+m} b_m).
    bn = [-c[n]] + [-c[n + m] for m in range(1, n)]

    def vec_b(m):
        if m == n:
            return list(bn)
        v = [0] * n
        v[m] = 1
        return v

    T = []
    for m in range(n):
        if m == 0:
            row = vec_b(1)
        else:
            row = [x + y for x, y in zip(vec_b(m + 1), vec_b(m - 1))]
            if m == 1:
                row = [x + (1 if i == 0 else 0) for i, x in enumerate(row)]
        T.append(row)
    f = charpoly(T)
    with mpmath.workprec(96):
        t = 2 * mpmath.cos(2 * mpmath.pi / p ** r)
        resid = mpmath.polyval(list(reversed(f)), t)
        if abs(resid) > mpmath.mpf(10) ** -15 * max(1, float(max(abs(x) for x in f))):
            raise AssertionError(f"minpoly {f} fails numeric check (residual {resid})")
    return FieldSpec(minpoly=f, kind="real_subfield", signature=(n, 0), p=p, r=r)


def cyclotomic_field(p: int, r: int = 1, max_degree: int = DEFAULT_MAX_DEGREE) -> FieldSpec:
    """Q(zeta_{p^r}); Q(zeta_2) collapses to the rational field."""
    _check_prime(p)
    if r < 1:
        raise ValueError("r must be >= 1")
    if p == 2 and r == 1:
        return rational_field()
    n = p ** (r - 1) * (p - 1)
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds bound {max_degree}")
    return FieldSpec(minpoly=tuple(_cyclotomic_poly(p, r)), kind="cyclotomic",
                     signature=(0, n // 2), p=p, r=r)


def field_from_minpoly(f: Sequence[int], max_degree: int = DEFAULT_MAX_DEGREE) -> FieldSpec:
    f = tuple(int(c) for c in f)
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    n = len(f) - 1
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds bound {max_degree}")
    if n > 1:
        a0 = abs(f[0])
        if a0 == 0:
            raise Reducible("x divides the polynomial")
        for d in sympy.divisors(a0):
            for root in (d, -d):
                if sum(c * root ** i for i, c in enumerate(f)) == 0:
                    raise Reducible(f"rational root {root}")
    x = sympy.Symbol("x")
    P = sympy.Poly(list(reversed(f)), x, domain="ZZ")
    if not P.is_irreducible:
        raise Reducible(f"{poly_str(f)} factors over Q")
    r1 = int(P.count_roots())
    return FieldSpec(minpoly=f, kind="generic", signature=(r1, (n - r1) // 2))


# ---------------------------------------------------------------- arithmetic

def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.field != b.field:
        raise ValueError("elements of different fields")
    prod = poly_mul(a.coords, b.coords)
    return FieldElement(a.field, tuple(poly_rem(prod, a.field.minpoly)))


def trace(a: FieldElement) -> int:
    s = a.field.power_sums
    return sum(c * s[i] for i, c in enumerate(a.coords))


def mult_matrix(a: FieldElement) -> list[list[int]]:
    """Row i holds the coordinates of a * theta^i."""
    return [list(mul(a, e).coords) for e in a.field.power_basis()]


def norm(a: FieldElement) -> int:
    """Absolute norm N_{K/Q}(a) as the determinant of multiplication by a."""
    return exactlin.det_exact(mult_matrix(a))


def cm_conjugate(a: FieldElement) -> FieldElement:
    """Image of ``a`` under zeta -> zeta^-1 (identity on the rational field)."""
    K = a.field
    if K.kind == "rational":
        return a
    if K.kind != "cyclotomic":
        raise NotCMField(f"complex conjugation undefined for kind {K.kind}")
    m = K.conductor
    poly = [0] * m
    for i, c in enumerate(a.coords):
        poly[(-i) % m] += c
    return FieldElement(K, tuple(poly_rem(poly, K.minpoly)))


def trace_matrix(K: FieldSpec, conjugate: bool = False) -> list[list[int]]:
    """[tr(theta^i * conj(theta^j))] on the power basis."""
    n = K.degree
    if not conjugate:
        s = K.power_sums
        return [[s[i + j] for j in range(n)] for i in range(n)]
    basis = K.power_basis()
    conj = [cm_conjugate(b) for b in basis]
    return [[trace(mul(bi, cj)) for cj in conj] for bi in basis]


def trace_gram(basis: Sequence[FieldElement], alpha_mode: str = "one",
               conjugate: bool = False) -> list[list[Fraction]]:
    """Exact matrix [tr(alpha * b_i * conj(b_j))] with alpha in {1, 1/p}."""
    if not basis:
        return []
    K = basis[0].field
    if conjugate and not (K.is_cm or K.kind == "rational"):
        raise NotCMField(f"conjugate trace form needs a CM field, got {K.kind}")
    if alpha_mode == "one":
        alpha = Fraction(1)
    elif alpha_mode == "inv_p":
        if K.p is None:
            raise ValueError("alpha = 1/p needs a field with a distinguished prime")
        alpha = Fraction(1, K.p)
    else:
        raise ValueError(f"unknown alpha mode {alpha_mode!r}")
    other = [cm_conjugate(b) for b in basis] if conjugate else list(basis)
    return [[alpha * trace(mul(bi, bj)) for bj in other] for bi in basis]


def field_discriminant(K: FieldSpec) -> int:
    """Discriminant of Z[theta]: det of the trace form on the power basis."""
    return exactlin.det_exact(trace_matrix(K))


# ---------------------------------------------------------------- embeddings

def embeddings(K: FieldSpec, precision: int = DEFAULT_PRECISION) -> list:
    """Images of theta under sigma_1..sigma_n.

    Real embeddings come first in decreasing order (for the real subfield this
    is k = 1, 2, ... in 2cos(2 pi k / p^r)).  Complex ones follow as the
    upper-half-plane roots by increasing argument, then their conjugates in
    the same order.
    """
    with mpmath.workprec(precision):
        if K.kind == "rational":
            return [mpmath.mpf(0)]
        if K.kind == "real_subfield":
            m = K.conductor
            return [2 * mpmath.cos(2 * mpmath.pi * k / m)
                    for k in range(1, (m + 1) // 2) if k % K.p]
        if K.kind == "cyclotomic":
            m = K.conductor
            upper = [mpmath.expjpi(mpmath.mpf(2 * k) / m)
                     for k in range(1, (m + 1) // 2) if k % K.p]
            return upper + [mpmath.conj(z) for z in upper]
        roots = mpmath.polyroots(list(reversed(K.minpoly)), maxsteps=500,
                                 extraprec=2 * precision)
        tol = mpmath.mpf(2) ** (-precision // 2)
        reals = sorted((mpmath.re(z) for z in roots if abs(mpmath.im(z)) < tol), reverse=True)
        upper = sorted((z for z in roots if mpmath.im(z) >= tol), key=mpmath.arg)
        return reals + upper + [mpmath.conj(z) for z in upper]


def evaluate(coords: Sequence[int], root):
    acc = 0
    for c in reversed(coords):
        acc = acc * root + c
    return acc


def embedding_matrix(K: FieldSpec, basis: Sequence[FieldElement] | None = None,
                     precision: int = DEFAULT_PRECISION) -> mpmath.matrix:
    """Rows are real embeddings of the basis elements, so that M M^T is the trace form.

    Totally real fields use (sigma_1, ..., sigma_n).  CM fields keep one
    embedding per conjugate pair and split it into sqrt(2)*Re and sqrt(2)*Im,
    which makes M M^T equal to tr(b_i * conj(b_j)).
    """
    if basis is None:
        basis = K.power_basis()
    if not K.is_totally_real and not K.is_cm:
        raise NotCMField("embedding matrix needs a totally real or CM field")
    with mpmath.workprec(precision):
        roots = embeddings(K, precision)
        n = K.degree
        M = mpmath.matrix(len(basis), n)
        if K.is_totally_real:
            for i, b in enumerate(basis):
                for j, t in enumerate(roots):
                    M[i, j] = evaluate(b.coords, t)
        else:
            s2 = mpmath.sqrt(2)
            upper = roots[: n // 2]
            for i, b in enumerate(basis):
                for j, t in enumerate(upper):
                    z = evaluate(b.coords, t)
                    M[i, 2 * j] = s2 * mpmath.re(z)
                    M[i, 2 * j + 1] = s2 * mpmath.im(z)
        return M


# ---------------------------------------------------------------- ramified prime

@dataclass(frozen=True)
class RamifiedPrimeData:
    """The prime P = (p, theta - a) above a totally ramified p, with f(x) = (x - a)^n mod p."""

    field: FieldSpec
    p: int
    residue_point: int
    ideal_basis: tuple[tuple[int, ...], ...]

    @property
    def ramification_index(self) -> int:
        return self.field.degree

    @property
    def residue_degree(self) -> int:
        return 1

    def basis_elements(self) -> list[FieldElement]:
        return [self.field.element(row) for row in self.ideal_basis]


def ramified_prime_data(K: FieldSpec, p: int) -> RamifiedPrimeData:
    _check_prime(p)
    f = K.minpoly
    n = K.degree
    a_found = None
    for a in range(p):
        # coefficients of (x - a)^n
        target = [math.comb(n, i) * (-a) ** (n - i) for i in range(n + 1)]
        if all((fc - tc) % p == 0 for fc, tc in zip(f, target)):
            a_found = a
            break
    if a_found is None:
        raise NotTotallyRamified(f"{poly_str(f)} is not a power of a linear factor mod {p}")
    a = a_found
    gens = [[p * int(i == j) for j in range(n)] for i in range(n)]
    t_minus_a = K.theta() - a
    for e in K.power_basis():
        gens.append(list(mul(t_minus_a, e).coords))
    H, _ = exactlin.hnf(gens)
    d = abs(exactlin.det_exact(H))
    if d != p:
        raise ResidueDegreeNotOne(f"ideal index {d} != {p}")
    return RamifiedPrimeData(field=K, p=p, residue_point=a,
                             ideal_basis=tuple(tuple(row) for row in H))


def residue_reduce(a: FieldElement | Sequence[int], pd: RamifiedPrimeData) -> int:
    """Reduction O_K -> O_K/P = F_p, evaluating coordinates at theta = a mod p."""
    coords = a.coords if isinstance(a, FieldElement) else a
    acc = 0
    for c in reversed(coords):
        acc = (acc * pd.residue_point + c) % pd.p
    return acc
