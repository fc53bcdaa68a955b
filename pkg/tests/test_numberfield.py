from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from alglattice import exactlin as el
from alglattice import numberfield as nf
from alglattice.errors import DegreeTooLarge, NotCMField, NotTotallyRamified, Reducible

from oracles import in_integer_span, sympy_discriminant, sympy_real_subfield_minpoly

K5 = nf.realsubfield_field(5, 1)
XI = K5.theta()
DEG5 = (1, 10, 5, -10, 0, 1)  # X^5 - 10X^3 + 5X^2 + 10X + 1


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2)])
def test_real_subfield_minpoly_matches_sympy(p, r):
    assert nf.realsubfield_field(p, r).minpoly == sympy_real_subfield_minpoly(p, r)


def test_real_subfield_examples():
    assert K5.minpoly == (-1, 1, 1)
    assert nf.realsubfield_field(7).minpoly == (-1, -2, 1, 1)
    K = nf.realsubfield_field(5, 2)
    assert K.degree == 10 and K.signature == (10, 0)
    with mpmath.workprec(128):
        t = 2 * mpmath.cos(2 * mpmath.pi / 25)
        assert abs(nf.evaluate(K.minpoly, t)) < 1e-12


def test_degree_bound():
    with pytest.raises(DegreeTooLarge):
        nf.realsubfield_field(5, 3, max_degree=20)
    with pytest.raises(DegreeTooLarge):
        nf.cyclotomic_field(67, 1)


def test_cyclotomic_examples():
    assert nf.cyclotomic_field(5).minpoly == (1, 1, 1, 1, 1)
    assert nf.cyclotomic_field(3, 2).minpoly == (1, 0, 0, 1, 0, 0, 1)
    assert nf.cyclotomic_field(5).signature == (0, 2)
    Q = nf.cyclotomic_field(2, 1)
    assert Q.kind == "rational" and Q.degree == 1


def test_field_from_minpoly_examples():
    K = nf.field_from_minpoly(DEG5)
    assert K.degree == 5 and K.signature == (5, 0)
    assert nf.field_from_minpoly((1, 0, 1)).signature == (0, 1)
    with pytest.raises(Reducible):
        nf.field_from_minpoly((-1, 0, 1))
    with pytest.raises(Reducible):
        nf.field_from_minpoly((1, 0, 2, 0, 1))  # (x^2+1)^2 has no rational root


def test_mul_examples():
    assert (XI * XI).coords == (1, -1)
    assert (XI * K5.one()).coords == XI.coords
    assert ((2 - XI) * XI).coords == (-1, 3)


def test_trace_examples():
    assert nf.trace(K5.one()) == 2
    assert nf.trace(XI) == -1
    assert nf.trace(XI * XI) == 3


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (11, 1), (3, 2), (5, 2)])
def test_power_sums_match_numeric_traces(p, r):
    K = nf.realsubfield_field(p, r)
    m = p ** r
    with mpmath.workprec(128):
        roots = [2 * mpmath.cos(2 * mpmath.pi * k / m) for k in range(1, (m + 1) // 2) if k % p]
        for e in range(2 * K.degree - 1):
            numeric = sum(t ** e for t in roots)
            assert abs(numeric - K.power_sums[e]) < 1e-6


def test_trace_gram_examples():
    G = nf.trace_gram([K5.one(), XI])
    assert G == [[2, -1], [-1, 3]] and el.det_exact(G) == 5
    K7 = nf.realsubfield_field(7)
    assert nf.trace_gram([K7.one()]) == [[3]]
    x = 2 - XI
    assert nf.trace_gram([x], alpha_mode="inv_p") == [[Fraction(3)]]
    with pytest.raises(NotCMField):
        nf.trace_gram([XI], conjugate=True)


@pytest.mark.parametrize("K", [
    K5, nf.realsubfield_field(7), nf.realsubfield_field(3, 2), nf.cyclotomic_field(5),
    nf.cyclotomic_field(7), nf.field_from_minpoly(DEG5), nf.field_from_minpoly((2, 0, 0, 1)),
], ids=lambda K: K.describe())
def test_discriminant_matches_resultant(K):
    assert nf.field_discriminant(K) == sympy_discriminant(K.minpoly)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_real_subfield_discriminant_closed_form(p):
    assert nf.field_discriminant(nf.realsubfield_field(p)) == p ** ((p - 1) // 2 - 1)


def test_embeddings_examples():
    s1, s2 = nf.embeddings(K5)
    assert abs(s1 - 0.6180339887498949) < 1e-15
    assert abs(s2 + 1.6180339887498949) < 1e-15
    with mpmath.workprec(128):
        assert abs(s2 - (-1 - s1)) < 1e-30
    assert nf.embeddings(nf.rational_field()) == [0]


def test_embedding_matrix_examples():
    M = nf.embedding_matrix(K5)
    assert [float(M[0, j]) for j in range(2)] == [1.0, 1.0]
    assert abs(M[1, 0] - 0.6180339887498949) < 1e-15 and abs(M[1, 1] + 1.6180339887498949) < 1e-15
    assert nf.embedding_matrix(nf.rational_field()).tolist() == [[1]]
    MMt = M * M.T
    for i, row in enumerate([[2, -1], [-1, 3]]):
        for j, v in enumerate(row):
            assert abs(MMt[i, j] - v) < 1e-12


@pytest.mark.parametrize("K,conj", [
    (nf.realsubfield_field(5, 2), False), (nf.realsubfield_field(13), False),
    (nf.field_from_minpoly(DEG5), False), (nf.cyclotomic_field(5), True),
    (nf.cyclotomic_field(11), True), (nf.cyclotomic_field(3, 2), True),
], ids=lambda v: v.describe() if hasattr(v, "describe") else str(v))
def test_embedding_matrix_reproduces_trace_form(K, conj):
    M = nf.embedding_matrix(K, precision=128)
    T = nf.trace_matrix(K, conjugate=conj)
    with mpmath.workprec(128):
        MMt = M * M.T
        worst = max(abs(MMt[i, j] - T[i][j]) for i in range(K.degree) for j in range(K.degree))
    assert worst <= 1e-10


def test_ramified_prime_examples():
    pd = nf.ramified_prime_data(K5, 5)
    assert pd.residue_point == 2 and pd.ramification_index == 2 and pd.residue_degree == 1
    D = [[2, -1], [-1, 3]]
    assert all(in_integer_span(D, row) for row in pd.ideal_basis)
    assert all(in_integer_span([list(r) for r in pd.ideal_basis], row) for row in D)

    Q = nf.ramified_prime_data(nf.rational_field(), 2)
    assert Q.residue_point == 0 and Q.ideal_basis == ((2,),)

    pd5 = nf.ramified_prime_data(nf.field_from_minpoly(DEG5), 5)
    assert pd5.residue_point == 4 and abs(el.det_exact(pd5.ideal_basis)) == 5


def test_not_totally_ramified():
    with pytest.raises(NotTotallyRamified):
        nf.ramified_prime_data(K5, 11)


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)])
def test_ideal_basis_is_the_kernel_of_reduction(p, r):
    K = nf.realsubfield_field(p, r)
    pd = nf.ramified_prime_data(K, p)
    assert abs(el.det_exact(pd.ideal_basis)) == p
    assert all(nf.residue_reduce(K.element(row), pd) == 0 for row in pd.ideal_basis)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=2))
def test_kernel_elements_lie_in_ideal_span(coords):
    pd = nf.ramified_prime_data(K5, 5)
    if nf.residue_reduce(coords, pd) == 0:
        c = el.solve_left([list(r) for r in pd.ideal_basis], coords)
        assert all(Fraction(x).denominator == 1 for x in c)


def test_residue_examples():
    pd = nf.ramified_prime_data(K5, 5)
    assert nf.residue_reduce(2 - XI, pd) == 0
    assert nf.residue_reduce(K5.one(), pd) == 1
    assert nf.residue_reduce(XI, pd) == 2


K7 = nf.realsubfield_field(7)
PD7 = nf.ramified_prime_data(K7, 7)
elems7 = st.lists(st.integers(-20, 20), min_size=3, max_size=3).map(K7.element)


@settings(max_examples=80, deadline=None)
@given(elems7, elems7)
def test_reduction_is_a_ring_morphism(a, b):
    red = lambda x: nf.residue_reduce(x, PD7)
    assert red(a * b) == red(a) * red(b) % 7
    assert red(a + b) == (red(a) + red(b)) % 7


def test_cm_conjugate_examples():
    C5 = nf.cyclotomic_field(5)
    zeta = C5.theta()
    assert nf.cm_conjugate(C5.one()) == C5.one()
    assert nf.cm_conjugate(zeta).coords == (-1, -1, -1, -1)
    with pytest.raises(NotCMField):
        nf.cm_conjugate(XI)


C9 = nf.cyclotomic_field(3, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=6, max_size=6))
def test_conjugation_is_an_involution(coords):
    a = C9.element(coords)
    assert nf.cm_conjugate(nf.cm_conjugate(a)) == a


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_norm_is_multiplicative(u, v):
    a, b = K7.element(u), K7.element(v)
    assert nf.norm(a * b) == nf.norm(a) * nf.norm(b)


def test_poly_text_format():
    assert nf.format_poly((-1, 1, 1)) == "-1 1 1"
    assert nf.parse_poly("-1 1 1") == (-1, 1, 1)
