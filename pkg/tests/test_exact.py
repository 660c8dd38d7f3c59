from fractions import Fraction

import flint
import pytest
from hypothesis import given, settings, strategies as st

from daw.errors import NonInvertible, RingMismatch
from daw.exact.linalg import SparseMatrix, matrix_rank, modular_rank, nullspace, rank_dense, rref
from daw.exact.rings import RingSpec, Scalar, scalar_arith
from daw.exact.snf import smith_normal_form

Q = RingSpec.rationals()
Z = RingSpec.integers()
F5 = RingSpec.prime_field(5)


def dense(ring, rows):
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, ring,
                        {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})


def test_add_rationals():
    a, b = Scalar(Q, Fraction(1, 2)), Scalar(Q, Fraction(1, 3))
    assert scalar_arith("add", a, b).value == Fraction(5, 6)


def test_inverse_mod_5():
    assert scalar_arith("inv", Scalar(F5, 2)).value == 3


def test_inverse_of_zero():
    with pytest.raises(NonInvertible):
        Q.inv(Q.zero)


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatch):
        Scalar(Q, Fraction(1)) + Scalar(F5, 1)


@pytest.mark.parametrize("text", ["Z", "Q", "F2", "F5", "F3^2", "F4"])
def test_ring_json_round_trip(text):
    r = RingSpec.parse(text)
    assert RingSpec.from_json(r.to_json()) == r


@pytest.mark.parametrize("rows,want", [([[1, 0], [0, 1]], 2), ([[0] * 4] * 3, 0), ([[1, 2], [2, 4]], 1)])
def test_rank_examples(rows, want):
    assert matrix_rank(dense(Q, rows)) == want


@pytest.mark.parametrize("rows,want", [([[2, 0], [0, 3]], [1, 6]), ([[0, 0], [0, 0]], []), ([[2]], [2])])
def test_snf_examples(rows, want):
    assert smith_normal_form(dense(Z, rows)).invariant_factors == want


small_int_matrix = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_int_matrix)
def test_snf_nonzero_count_is_rational_rank(rows):
    assert smith_normal_form(dense(Z, rows)).rank == matrix_rank(dense(Q, rows))


@settings(max_examples=150, deadline=None)
@given(small_int_matrix)
def test_snf_matches_flint(rows):
    s = flint.fmpz_mat(rows).snf()
    want = [abs(int(s[i, i])) for i in range(min(s.nrows(), s.ncols())) if s[i, i] != 0]
    assert smith_normal_form(dense(Z, rows)).invariant_factors == want


@settings(max_examples=100, deadline=None)
@given(small_int_matrix)
def test_snf_divisibility_chain(rows):
    f = smith_normal_form(dense(Z, rows)).invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


@settings(max_examples=100, deadline=None)
@given(small_int_matrix, st.sampled_from([2, 3, 5, 7]))
def test_sparse_rank_mod_p_matches_dense(rows, p):
    ring = RingSpec.prime_field(p)
    assert matrix_rank(dense(ring, rows)) == rank_dense(ring, rows, len(rows[0]))


@settings(max_examples=60, deadline=None)
@given(small_int_matrix)
def test_modular_rank_agrees_with_exact(rows):
    assert modular_rank(dense(Q, rows)) == matrix_rank(dense(Q, rows))


def test_nullspace_vectors_are_killed():
    rows = [[1, 2, 3], [2, 4, 6]]
    ns = nullspace(Q, rows, 3)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


def test_rref_pivots():
    _, piv = rref(Q, [[0, 1], [1, 0]], 2)
    assert piv == [0, 1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_is_order_two_automorphism(p):
    k = RingSpec.quad_ext(p)
    elems = list(k.elements())
    assert len(elems) == p * p
    for x in elems:
        assert k.frobenius(k.frobenius(x)) == x
        for y in elems:
            assert k.frobenius(k.mul(x, y)) == k.mul(k.frobenius(x), k.frobenius(y))
            assert k.frobenius(k.add(x, y)) == k.add(k.frobenius(x), k.frobenius(y))
    fixed = [x for x in elems if k.frobenius(x) == x]
    assert len(fixed) == p


@pytest.mark.parametrize("p", [2, 3, 5])
def test_quad_ext_is_a_field(p):
    k = RingSpec.quad_ext(p)
    for x in k.elements():
        if not k.is_zero(x):
            assert k.mul(x, k.inv(x)) == k.one
