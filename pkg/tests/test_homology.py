import json

import pytest
from hypothesis import given, settings, strategies as st

from daw.algebra import diagram_algebra, inclusion_map
from daw.diagrams import Flavor, Params
from daw.errors import NotAField, RingMismatch
from daw.exact.rings import RingSpec
from daw.groups import FiniteGroup, SemidirectSpec, group_algebra
from daw.exact.linalg import matrix_rank
from daw.finite_algebra import AlgebraMap
from daw.homology import BarComplex, TorResult, compare, group_homology, tor, tor_induced_map

Q = RingSpec.rationals()
F2 = RingSpec.prime_field(2)
F3 = RingSpec.prime_field(3)
Z = RingSpec.integers()
C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)
TRIV = FiniteGroup.trivial()


def alg(n, f, g=None, ring=Q, delta="1", eps="1"):
    return diagram_algebra(n, f, g, Params.make(ring, delta, eps))


def test_bar_d1_is_zero_and_d2_rank():
    a, chi = alg(2, Flavor.TL)
    bc = BarComplex(a, chi, 3)
    assert bc.dim(0) == 1 and bc.dim(1) == 1
    assert matrix_rank(bc.boundary(1)) == 0
    # d[U|U] = -U·U = -U is nonzero
    assert matrix_rank(bc.boundary(2)) == 1


@pytest.mark.parametrize("f", list(Flavor))
def test_dd_zero(f):
    a, chi = alg(2, f, None, F3, "2", "1")
    bc = BarComplex(a, chi, 3)
    for q in (2, 3):
        bc.check_dd(q)


def test_tor_of_ground_field():
    a, chi = alg(0, Flavor.BRAUER)
    assert a.dim == 1 and tor(a, chi, 3).dims == [1, 0, 0, 0]


@pytest.mark.parametrize("method", ["bar", "resolution"])
def test_group_homology_c2(method):
    assert group_homology(C2, F2, 4, method=method).dims == [1] * 5
    assert group_homology(C2, Q, 4, method=method).dims == [1, 0, 0, 0, 0]
    assert group_homology(TRIV, F2, 3, method=method).dims == [1, 0, 0, 0]


def test_tl2_delta1_acyclic():
    a, chi = alg(2, Flavor.TL)
    assert tor(a, chi, 3).dims == [1, 0, 0, 0]


def test_sym2_over_q_and_f2():
    s2 = SemidirectSpec(TRIV, 2)
    assert group_homology(s2, Q, 3).dims == [1, 0, 0, 0]
    assert group_homology(s2, F2, 3).dims == [1, 1, 1, 1]


def test_c3_homology_char3():
    assert group_homology(C3, F3, 4).dims == [1] * 5
    assert group_homology(C3, F2, 4).dims == [1, 0, 0, 0, 0]


CROSS = [
    (2, Flavor.TL, None, Q, "0"),
    (2, Flavor.BRAUER, None, F2, "0"),
    (2, Flavor.BRAUER, None, F2, "1"),
    (2, Flavor.MOTZKIN, None, F3, "2"),
    (2, Flavor.ROOK, C2, F2, "1"),
    (1, Flavor.ROOK_BRAUER, C2, F2, "0"),
]


@pytest.mark.parametrize("n,f,g,ring,delta", CROSS)
def test_bar_vs_resolution(n, f, g, ring, delta):
    a, chi = alg(n, f, g, ring, delta)
    assert tor(a, chi, 3, method="bar").dims == tor(a, chi, 3, method="resolution").dims


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_resolution_extends_for_any_seed(seed):
    from daw.homology import FreeResolution

    a, chi = alg(2, Flavor.BRAUER, None, F2, "0")
    res = FreeResolution(a, chi, seed=seed)
    for _ in range(3):
        res.extend()
    dims = [len(res.reduced_differential(q)) for q in range(1, 3)]
    assert tor(a, chi, 3, method="bar").dims == tor(a, chi, 3, method="resolution").dims
    assert all(d >= 0 for d in dims)


def test_integer_mode_c2():
    a, chi = group_algebra(C2, Z)
    res = tor(a, chi, 4)
    assert res.mode == "integer"
    assert res.invariants == [
        {"free": 1, "torsion": []},
        {"free": 0, "torsion": [2]},
        {"free": 0, "torsion": []},
        {"free": 0, "torsion": [2]},
        {"free": 0, "torsion": []},
    ]


def test_integer_mode_errors():
    a, chi = group_algebra(C2, Z)
    with pytest.raises(NotAField):
        tor(a, chi, 2, method="resolution")
    b, chi_b = group_algebra(C2, Q)
    with pytest.raises(RingMismatch):
        tor(b, chi_b, 2, mode="integer")


def test_compare_examples():
    a = TorResult(Q, "field", [1, 0])
    b = TorResult(Q, "field", [1, 1])
    rep = compare(a, b)
    assert rep.equal_through == 0 and not rep.all_equal
    assert compare(a, a).all_equal
    with pytest.raises(RingMismatch):
        compare(a, TorResult(F2, "field", [1, 0]))


def test_tor_result_json_round_trip():
    a, chi = group_algebra(C2, Z)
    for r in (tor(a, chi, 3), group_homology(C2, F2, 3)):
        text = json.dumps(r.to_json())
        assert TorResult.from_json(json.loads(text)) == r


def test_induced_map_identity_full_rank():
    a, chi = alg(2, Flavor.BRAUER, None, F2)
    ident = AlgebraMap(a, a, [{k: F2.one} for k in range(a.dim)])
    dims = tor(a, chi, 2).dims
    assert tor_induced_map(ident, chi, chi, 2) == dims


def test_induced_map_rook_1_to_2():
    s, cs = alg(1, Flavor.ROOK, None, F2)
    b, cb = alg(2, Flavor.ROOK, None, F2)
    ranks = tor_induced_map(inclusion_map(s, b), cs, cb, 1)
    assert ranks[0] == 1
    assert ranks[1] == min(tor(s, cs, 1).dims[1], tor(b, cb, 1).dims[1]) == 0
