import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropobstruct import exact_linalg as xl
from tropobstruct.errors import NotASublattice, ZeroVector

from oracles import coset_count, determinant, minors_gcd, nullspace, rational_rank, smith_by_minors


def test_primitive_vector_examples():
    assert xl.primitive_vector((2, 4, -6)) == (1, 2, -3)
    assert xl.primitive_vector((1, 0)) == (1, 0)
    assert xl.primitive_vector((0, 0, -7)) == (0, 0, -1)


def test_primitive_vector_rejects_zero():
    with pytest.raises(ZeroVector):
        xl.primitive_vector((0, 0))


def test_kernel_basis_examples():
    assert xl.kernel_basis([[1, 1]]) == [(-1, 1)]
    assert xl.kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    M = [[1, 2, 3], [2, 4, 6]]
    K = xl.kernel_basis(M)
    assert len(K) == 2
    for v in K:
        assert xl.mat_vec(M, v) == (0, 0)
    assert rational_rank(K, 3) == 2


def test_kernel_basis_matches_sympy_span():
    M = [[1, 2, 3], [2, 4, 6]]
    ours = xl.kernel_basis(M)
    ref = nullspace(M, 3)
    assert rational_rank(list(ours) + ref, 3) == rational_rank(ref, 3) == 2


def test_kernel_basis_vectors_are_primitive():
    for v in xl.kernel_basis([[3, 6, 9, 1], [0, 2, 4, 0]]):
        assert xl.content(v) == 1


def test_smith_examples():
    assert xl.smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert xl.smith_invariants([[2, 4], [6, 8]]) == [2, 4]
    assert xl.smith_invariants([[0, 0], [0, 0]]) == []


def test_smith_examples_against_minors():
    for M in ([[2, 0], [0, 3]], [[2, 4], [6, 8]]):
        assert xl.smith_invariants(M) == smith_by_minors(M)


def test_lattice_index_examples():
    assert xl.lattice_index([(2, 0), (0, 3)], [(1, 0), (0, 1)]) == 6
    assert xl.lattice_index([(1, 0), (0, 1)], [(1, 0), (0, 1)]) == 1
    assert xl.lattice_index([(1, 1), (1, -1)], [(1, 0), (0, 1)]) == 2
    assert coset_count([[1, 1], [1, -1]]) == 2


def test_lattice_index_infinite_on_rank_drop():
    assert xl.lattice_index([(1, 0)], [(1, 0), (0, 1)]) is xl.INFINITE


def test_lattice_index_rejects_outside_generator():
    with pytest.raises(NotASublattice) as err:
        xl.lattice_index([(1, 0, 0), (0, 0, 1)], [(1, 0, 0), (0, 1, 0)])
    assert err.value.details["generator"] == 1


def test_lattice_index_rejects_non_integral_combination():
    with pytest.raises(NotASublattice):
        xl.lattice_index([(1, 0)], [(2, 0)])


def test_annihilator_examples():
    assert xl.annihilator_basis([(1, 0, 0), (0, 1, 0)], 3) == [(0, 0, 1)]
    assert xl.annihilator_basis([(1, 0, 0), (0, 1, 0), (1, 1, 1)], 3) == []


def test_saturation_examples():
    assert xl.saturation([(2, 0)], 2) == [(1, 0)]
    assert xl.same_lattice(xl.saturation([(1, 1), (1, -1)], 2), [(1, 0), (0, 1)], 2)
    assert xl.saturation([], 2) == []


def test_rank_accepts_rationals():
    assert xl.rank([[Fraction(1, 2), 1], [1, 2]], 2) == 1
    assert xl.rank([["1/3", 0], [0, "2/5"]], 2) == 2


def test_rref_is_reduced():
    R, piv = xl.rref([[2, 4, 1], [1, 2, 3]], 3)
    assert piv == [0, 2]
    assert R[0] == (1, 2, 0) and R[1] == (0, 0, 1)


def test_hermite_normal_form_is_canonical():
    a = xl.hermite_normal_form([(2, 1), (0, 3)], 2)
    b = xl.hermite_normal_form([(2, 4), (2, 1)], 2)
    assert a == b


# properties


small = st.integers(-6, 6)


def _matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: _matrix(r, c))))
def test_smith_product_equals_minor_gcd(M):
    inv = xl.smith_invariants(M)
    r = rational_rank(M, len(M[0]))
    assert len(inv) == r
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0
    if r:
        prod = 1
        for d in inv:
            prod *= d
        assert prod == minors_gcd(M, r)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: _matrix(r, c))))
def test_kernel_basis_property(M):
    n = len(M[0])
    K = xl.kernel_basis(M, n)
    assert len(K) == n - rational_rank(M, n)
    for v in K:
        assert all(x == 0 for x in xl.mat_vec(M, v))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=n)))
def test_double_annihilator_is_saturation(S):
    n = len(S[0]) if S else 3
    if not S:
        return
    ann = xl.annihilator_basis(S, n)
    back = xl.annihilator_basis(ann, n) if ann else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    sat = xl.saturation(S, n)
    assert xl.same_lattice(back, sat, n)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_lattice_index_multiplicative(n, seed):
    rng = random.Random(seed)

    def full_rank():
        while True:
            M = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n)]
            if xl.rank(M, n) == n:
                return M

    A = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    P = full_rank()
    Q = full_rank()
    B = [tuple(int(x) for x in xl.mat_vec(xl.transpose(P), e)) for e in A]
    C = [tuple(int(x) for x in xl.mat_vec(xl.transpose(B), q)) for q in Q]
    assert xl.lattice_index(C, A, n) == xl.lattice_index(B, A, n) * xl.lattice_index(C, B, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_results_independent_of_generator_order(n, seed):
    rng = random.Random(seed)
    gens = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n + 1)]
    shuffled = gens[:]
    rng.shuffle(shuffled)
    assert xl.same_lattice(xl.hermite_normal_form(gens, n), xl.hermite_normal_form(shuffled, n), n)
    assert xl.same_lattice(xl.saturation(gens, n), xl.saturation(shuffled, n), n)


def test_lattice_index_vs_coset_enumeration_small():
    rng = random.Random(11)
    done = 0
    while done < 20:
        n = rng.choice([2, 3])
        M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if xl.rank(M, n) < n:
            continue
        if abs(determinant(M)) > 20:
            continue
        cols = [tuple(M[i][j] for i in range(n)) for j in range(n)]
        assert xl.lattice_index(cols, [tuple(int(i == j) for j in range(n)) for i in range(n)], n) == coset_count(M)
        done += 1
