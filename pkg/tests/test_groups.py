import itertools
import random

import pytest

from daw.errors import InfiniteGroup, InvalidGroup, RingMismatch
from daw.exact.rings import RingSpec, Scalar
from daw.groups import (
    FiniteGroup,
    GRingAction,
    GroupElement,
    Permutation,
    SemidirectElement,
    SemidirectSpec,
    action_apply,
    direct_power,
    group_algebra,
    group_spec_from_json,
    semidirect_multiply,
)

C2 = FiniteGroup.cyclic(2)
F2 = RingSpec.prime_field(2)
Q = RingSpec.rationals()


def s3_table():
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(q[p[i]] for i in range(3))] for q in perms] for p in perms], idx[(0, 1, 2)]


def elem(*labels, perm):
    return SemidirectElement(tuple(GroupElement(C2, g) for g in labels), Permutation(perm))


def test_semidirect_right_identity():
    x = elem(1, 0, perm=(2, 1))
    assert x * SemidirectElement.identity(C2, 2) == x


def test_semidirect_worked_example():
    assert elem(0, 1, perm=(2, 1)) * elem(1, 0, perm=(2, 1)) == SemidirectElement.identity(C2, 2)


def test_identity_squared():
    e = SemidirectElement.identity(C2, 2)
    assert e * e == e


@pytest.mark.parametrize("group,n", [(FiniteGroup.trivial(), 3), (C2, 1), (C2, 2), (C2, 3)])
def test_semidirect_group_axioms_exhaustive(group, n):
    spec = SemidirectSpec(group, n)
    elems = spec.elements()
    assert len(elems) == spec.order == len(set(elems))
    e = SemidirectElement.identity(group, n)
    for a in elems:
        assert a * e == a == e * a
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a * b) * c == a * (b * c)


def test_semidirect_associative_random_c3():
    rng = random.Random(1)
    elems = SemidirectSpec(FiniteGroup.cyclic(3), 3).elements()
    for _ in range(2000):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert semidirect_multiply(semidirect_multiply(a, b), c) == semidirect_multiply(a, semidirect_multiply(b, c))


def test_group_algebra_examples():
    alg, chi = group_algebra(C2, F2)
    assert alg.dim == 2 and all(v == F2.one for v in chi.values)
    alg, _ = group_algebra(SemidirectSpec(FiniteGroup.trivial(), 2), Q)
    assert alg.dim == 2
    alg, chi = group_algebra(SemidirectSpec(C2, 2), F2)
    assert alg.dim == 8
    assert chi.is_multiplicative(alg) and alg.check_associative() and alg.check_unit()


def test_braid_top_is_infinite():
    with pytest.raises(InfiniteGroup):
        group_algebra(SemidirectSpec(C2, 2, "braid"), F2)


@pytest.mark.parametrize("moduli", [[2], [3], [2, 2], [2, 3], [4]])
def test_cyclic_products_commute(moduli):
    g = FiniteGroup.cyclic_product(moduli)
    for a, b in itertools.product(range(g.order), repeat=2):
        assert g.mul(a, b) == g.mul(b, a)
        assert g.mul(a, g.inv(a)) == g.identity_index
    assert g.abelian


def test_cayley_validation():
    table, e = s3_table()
    s3 = FiniteGroup.cayley(table, e)
    assert s3.order == 6 and not s3.abelian
    with pytest.raises(InvalidGroup):
        FiniteGroup.cayley([[0, 1], [1, 1]])


def test_element_orders():
    g = FiniteGroup.cyclic_product([2, 3])
    assert sorted(g.element_order(x) for x in range(6)) == [1, 2, 3, 3, 6, 6]


@pytest.mark.parametrize("text", ["trivial", "C2", "C2xC3", "C4"])
def test_group_parse_and_json(text):
    g = FiniteGroup.parse(text)
    assert FiniteGroup.from_json(g.to_json()) == g
    assert group_spec_from_json(g.to_json()) == g


def test_semidirect_spec_json():
    s = SemidirectSpec(C2, 3)
    assert group_spec_from_json(s.to_json()) == s


def test_direct_power():
    assert direct_power(C2, 3).order == 8
    table, e = s3_table()
    s3sq = direct_power(FiniteGroup.cayley(table, e), 2)
    assert s3sq.order == 36 and not s3sq.abelian


def test_permutation_composition_left_to_right():
    s, t = Permutation((2, 1, 3)), Permutation((1, 3, 2))
    assert s.then(t)(1) == t(s(1)) == 3
    assert s.then(s.inverse()).is_identity


def test_identity_action():
    k = RingSpec.quad_ext(2)
    act = GRingAction.trivial(C2, k)
    for lam in k.elements():
        assert action_apply(act, GroupElement(C2, 1), Scalar(k, lam)).value == lam


def test_frobenius_action_on_f4():
    k = RingSpec.quad_ext(2)
    act = GRingAction(C2, k, ((0, "frobenius"),))
    g, e = GroupElement(C2, 1), GroupElement(C2, 0)
    fixed = []
    for lam in k.elements():
        s = Scalar(k, lam)
        assert action_apply(act, g, s).value == k.mul(lam, lam)
        assert action_apply(act, e, s).value == lam
        if action_apply(act, g, s).value == lam:
            fixed.append(lam)
    assert len(fixed) == 2


def test_frobenius_needs_even_order_generator():
    with pytest.raises(InvalidGroup):
        GRingAction(FiniteGroup.cyclic(3), RingSpec.quad_ext(2), ((0, "frobenius"),))


def test_frobenius_needs_quad_ext():
    with pytest.raises(RingMismatch):
        GRingAction(C2, F2, ((0, "frobenius"),))


def test_action_is_homomorphism_on_c2xc2():
    g = FiniteGroup.cyclic_product([2, 2])
    act = GRingAction(g, RingSpec.quad_ext(3), ((0, "frobenius"), (1, "frobenius")))
    ex = act.frobenius_exponents
    for a, b in itertools.product(range(4), repeat=2):
        assert ex[g.mul(a, b)] == (ex[a] + ex[b]) % 2
