
import pytest
from hypothesis import given, settings, strategies as st

from alglattice import codes
from alglattice.errors import NotFound, RankDeficient

from oracles import self_orthogonal_brute


def test_systematic_form_examples():
    C = codes.systematic_form([[1, 2]], 5)
    assert (C.k, C.A, C.col_perm) == (1, ((2,),), (0, 1))
    assert codes.systematic_form([[1, 1]], 2).A == ((1,),)
    assert codes.systematic_form([[2, 4]], 5).G == ((1, 2),)


def test_systematic_form_records_permutation():
    C = codes.systematic_form([[0, 1, 1], [0, 0, 0]][:1], 2)
    assert C.col_perm == (1, 0, 2)
    permuted = [[row[c] for c in C.col_perm] for row in C.G]
    assert permuted == C.systematic_matrix()


def test_rank_deficient():
    with pytest.raises(RankDeficient):
        codes.systematic_form([[1, 2], [2, 4]], 5)


def test_dual_examples():
    C = codes.systematic_form([[1, 2]], 5)
    D = codes.dual(C)
    assert D.G == C.G
    assert all(codes.dot(u, v, 5) == 0 for u in C.codewords() for v in D.codewords())
    zero = codes.systematic_form([], 3, 3)
    assert codes.dual(zero).k == 3


def test_self_orthogonality_examples():
    assert codes.is_self_dual(codes.systematic_form([[1, 2]], 5))
    assert codes.is_self_dual(codes.systematic_form([[1, 1]], 2))
    C = codes.systematic_form([[1, 0]], 5)
    assert not codes.is_self_orthogonal(C) and not codes.is_self_dual(C)


def test_encode_examples():
    C = codes.systematic_form([[1, 2]], 5)
    assert codes.encode_code(C, [0]) == (0, 0)
    assert codes.encode_code(C, [3]) == (3, 1)
    assert codes.encode_code(codes.systematic_form([[1, 1]], 2), [1]) == (1, 1)


def random_code(p_choices=(2, 3, 5, 7)):
    return st.sampled_from(p_choices).flatmap(lambda p: st.integers(1, 6).flatmap(
        lambda N: st.integers(0, N).flatmap(lambda k: st.lists(
            st.lists(st.integers(0, p - 1), min_size=N, max_size=N), min_size=k, max_size=k).map(
            lambda G: (p, N, G)))))


@settings(max_examples=120, deadline=None)
@given(random_code())
def test_dual_properties(args):
    p, N, G = args
    try:
        C = codes.systematic_form(G, p, N)
    except RankDeficient:
        return
    D = codes.dual(C)
    assert C.k + D.k == N
    assert all(codes.dot(g, h, p) == 0 for g in C.G for h in D.G)
    assert codes.dual(D) == C
    again = codes.systematic_form(C.G, p, N)
    assert (again.A, again.col_perm) == (C.A, C.col_perm)


def test_random_self_orthogonal_examples():
    for seed in range(5):
        C = codes.random_self_orthogonal(5, 2, 1, seed)
        assert C.G in (((1, 2),), ((1, 3),))
    for seed in range(5):
        C = codes.random_self_orthogonal(3, 4, 1, seed)
        assert sum(c * c for c in C.G[0]) % 3 == 0
    assert codes.random_self_orthogonal(7, 6, 2, 11) == codes.random_self_orthogonal(7, 6, 2, 11)


def test_random_self_orthogonal_not_found():
    # -1 is not a square mod 3, so no isotropic vector exists in F_3^2
    with pytest.raises(NotFound):
        codes.random_self_orthogonal(3, 2, 1, 0, max_tries=500)


@pytest.mark.parametrize("p,N,k", [(2, 4, 2), (2, 6, 3), (3, 4, 2), (5, 2, 1), (5, 4, 1), (3, 3, 1), (7, 4, 2)])
def test_self_orthogonal_enumeration_matches_brute_force(p, N, k):
    ours = {frozenset(C.codewords()) for C in codes.all_self_orthogonal(p, N, k)}
    assert ours == self_orthogonal_brute(p, N, k)


def test_known_counts():
    assert len(codes.all_self_orthogonal(2, 6, 3)) == 15
    assert len(codes.all_self_orthogonal(3, 4, 2)) == 8
    assert codes.count_subspaces(2, 6, 1) == 63


def test_minimum_distance():
    C = codes.systematic_form([[1, 1, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1]], 2)
    assert codes.minimum_distance(C) == 4
    assert codes.minimum_distance(codes.systematic_form([], 2, 3)) is None


def test_code_text_roundtrip():
    C = codes.random_self_orthogonal(5, 4, 2, 3)
    text = codes.format_code(C)
    assert text.splitlines()[0] == "5 4 2"
    assert codes.parse_code(text) == C
