import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from daw.diagrams import (
    DEFECT,
    MISSING,
    Deletion,
    Diagram,
    Flavor,
    GSplice,
    LabelReplace,
    LinkState,
    Params,
    apply_link_move,
    compose,
    compose_detailed,
    count_diagrams,
    enumerate_diagrams,
    enumerate_link_states,
    extend,
    is_planar,
    jp_member,
    left_link_state,
    rank,
    render,
    rho,
    right_link_state,
    size_estimate,
    validate_flavor,
)
from daw.errors import FlavorViolation, NonAbelianGroup, NotADefect, SizeCapExceeded
from daw.exact.rings import RingSpec
from daw.groups import FiniteGroup, GRingAction

C2 = FiniteGroup.cyclic(2)
F5 = RingSpec.prime_field(5)
Q = RingSpec.rationals()
P = Params.make(F5, "2", "3")


def planar_by_stack(x: Diagram) -> bool:
    # walk the boundary L1..Ln, Rn..R1; chords must close like brackets
    n = x.n
    order = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    stack = []
    for v in order:
        w = x.partner[v]
        if w == -1:
            continue
        if stack and stack[-1] == w:
            stack.pop()
        else:
            stack.append(v)
    return not stack


def test_identity_valid_everywhere():
    for f in Flavor:
        assert validate_flavor(Diagram.identity(3), f)


def test_crossing_not_tl():
    x = Diagram.from_edges(2, [("L1", "R2"), ("L2", "R1")])
    assert not validate_flavor(x, Flavor.TL) and validate_flavor(x, Flavor.BRAUER)


def test_cup_cap_flavors():
    x = Diagram.from_edges(2, [("L1", "L2"), ("R1", "R2")])
    assert validate_flavor(x, Flavor.TL) and not validate_flavor(x, Flavor.ROOK)


@pytest.mark.parametrize("n,f,g,want", [(1, Flavor.MOTZKIN, None, 2), (2, Flavor.ROOK, None, 7), (2, Flavor.BRAUER, C2, 12)])
def test_enumeration_examples(n, f, g, want):
    assert len(enumerate_diagrams(n, f, g)) == want


@pytest.mark.parametrize("f", list(Flavor))
def test_enumeration_canonical_and_duplicate_free(f):
    ds = enumerate_diagrams(3, f, C2) if f != Flavor.ROOK_BRAUER else enumerate_diagrams(3, f)
    assert len(set(ds)) == len(ds)
    assert all(validate_flavor(d, f) for d in ds)


@pytest.mark.parametrize("f", list(Flavor))
@pytest.mark.parametrize("order", [1, 2, 3])
def test_size_estimate_matches_enumeration(f, order):
    g = FiniteGroup.cyclic(order) if order > 1 else None
    for n in range(0, 4):
        assert size_estimate(n, f, order) == count_diagrams(n, f, g)


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_diagrams(9, Flavor.ROOK_BRAUER)


def test_nonabelian_group_rejected_for_loop_flavors():
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    s3 = FiniteGroup.cayley([[idx[tuple(q[p[i]] for i in range(3))] for q in perms] for p in perms], idx[(0, 1, 2)])
    with pytest.raises(NonAbelianGroup):
        enumerate_diagrams(1, Flavor.BRAUER, s3)
    assert len(enumerate_diagrams(1, Flavor.ROOK, s3)) == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_planarity_matches_stack_oracle(n):
    for d in enumerate_diagrams(n, Flavor.ROOK_BRAUER):
        assert is_planar(d) == planar_by_stack(d)


def test_rho_squared():
    r = rho(2, 1)
    s, d, counts = compose_detailed(r, r, P)
    assert (s, d) == (P.eps, r) and counts.contractible == 1 and counts.loops == 0


def test_identity_is_neutral():
    for f in Flavor:
        e = Diagram.identity(2, C2)
        for x in enumerate_diagrams(2, f, C2):
            assert compose(e, x, f, P) == (F5.one, x) == compose(x, e, f, P)


def test_tl_loop():
    e = Diagram.from_edges(2, [("L1", "L2"), ("R1", "R2")])
    assert compose(e, e, Flavor.TL, P) == (P.delta, e)


def test_labelled_loop_trivial_action():
    x = Diagram.from_edges(2, [("L1", "L2", 0), ("R1", "R2", 1)], C2)
    assert compose(x, x, Flavor.BRAUER, P) == (P.delta, x)


def test_labelled_loop_frobenius_action():
    k = RingSpec.quad_ext(2)
    act = GRingAction(C2, k, ((0, "frobenius"),))
    gen = k.parse_value("a")
    p = Params.make(k, gen, "1", act)
    x = Diagram.from_edges(2, [("L1", "L2", 0), ("R1", "R2", 1)], C2)
    s, d = compose(x, x, Flavor.BRAUER, p)
    assert d == x and s == k.frobenius(gen) != gen
    y = Diagram.from_edges(2, [("L1", "L2", 0), ("R1", "R2", 0)], C2)
    assert compose(y, y, Flavor.BRAUER, p)[0] == gen


def test_compose_rejects_wrong_flavor():
    x = Diagram.from_edges(2, [("L1", "L2"), ("R1", "R2")])
    with pytest.raises(FlavorViolation):
        compose(x, x, Flavor.ROOK, P)


def test_labels_multiply_left_to_right_on_through_strands():
    c3 = FiniteGroup.cyclic(3)
    x = Diagram.from_edges(1, [("L1", "R1", 1)], c3)
    y = Diagram.from_edges(1, [("L1", "R1", 1)], c3)
    assert compose(x, y, Flavor.ROOK, Params.make(Q)) == (Q.one, Diagram.from_edges(1, [("L1", "R1", 2)], c3))


@pytest.mark.parametrize("f", list(Flavor))
def test_flavor_closure_and_rank_bound(f):
    ds = enumerate_diagrams(3, f)
    for x, y in itertools.product(ds, repeat=2):
        s, d, counts = compose_detailed(x, y, P)
        assert validate_flavor(d, f)
        assert d.rank <= min(x.rank, y.rank)
        assert counts.through == len(d.edges())


@pytest.mark.parametrize("f", list(Flavor))
def test_max_rank_closure(f):
    full = [d for d in enumerate_diagrams(3, f) if d.rank == 3]
    for x, y in itertools.product(full, repeat=2):
        s, d = compose(x, y, f, P)
        assert s == F5.one and d.rank == 3


@pytest.mark.parametrize("f", list(Flavor))
def test_extension_is_multiplicative(f):
    ds = enumerate_diagrams(2, f, C2)
    for x, y in itertools.product(ds, repeat=2):
        s, d = compose(x, y, f, P)
        assert compose(extend(x), extend(y), f, P) == (s, extend(d))


def test_extend_examples():
    assert extend(Diagram.identity(2)) == Diagram.identity(3)
    for d in enumerate_diagrams(2, Flavor.MOTZKIN):
        assert validate_flavor(extend(d), Flavor.MOTZKIN) and rank(extend(d)) == rank(d) + 1


def test_rank_examples():
    assert rank(Diagram.identity(3)) == 3
    assert rank(rho(2, 1)) == 1
    assert rank(Diagram.from_edges(2, [("L1", "L2"), ("R1", "R2")])) == 0


rb3 = enumerate_diagrams(3, Flavor.ROOK_BRAUER, C2)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(rb3), st.sampled_from(rb3), st.sampled_from(rb3),
       st.sampled_from(["0", "1", "2", "3", "4"]), st.sampled_from(["0", "1", "2", "3", "4"]))
def test_associativity_random_labelled(x, y, z, delta, eps):
    p = Params.make(F5, delta, eps)
    s1, xy, _ = compose_detailed(x, y, p)
    s2, l, _ = compose_detailed(xy, z, p)
    t1, yz, _ = compose_detailed(y, z, p)
    t2, r = compose_detailed(x, yz, p)[:2]
    assert F5.mul(s1, s2) == F5.mul(t1, t2)
    if not F5.is_zero(F5.mul(s1, s2)):
        assert l == r


def test_diagram_json_round_trip():
    for d in enumerate_diagrams(2, Flavor.ROOK_BRAUER, C2):
        assert Diagram.from_json(d.to_json(Flavor.ROOK_BRAUER)) == d


def test_render_lists_every_node():
    assert render(Diagram.identity(2)).count("\n") == 1


def test_link_state_examples():
    ident = right_link_state(Diagram.identity(3, C2))
    assert all(k == DEFECT and g == 0 for k, _, g in ident.nodes)
    r = right_link_state(rho(2, 1))
    assert r.nodes[0][0] == MISSING and r.nodes[1][0] == DEFECT
    x = Diagram.from_edges(2, [("L1", "R2", 1)], C2)
    s = right_link_state(x)
    assert s.nodes[1] == (DEFECT, -1, 1) and s.nodes[0][0] == MISSING
    assert left_link_state(x).nodes[0] == (DEFECT, -1, 1)


def test_link_state_enumeration_examples():
    assert len(enumerate_link_states(2, 2, Flavor.BRAUER)) == 1
    assert len(enumerate_link_states(2, 0, Flavor.BRAUER, C2)) == 2
    assert len(enumerate_link_states(1, 1, Flavor.BRAUER, C2)) == 2


@pytest.mark.parametrize("f", list(Flavor))
def test_link_states_are_right_link_states_of_diagrams(f):
    n = 3
    seen = {right_link_state(d) for d in enumerate_diagrams(n, f, C2 if f != Flavor.ROOK_BRAUER else None)}
    g = C2 if f != Flavor.ROOK_BRAUER else None
    listed = {s for i in range(n + 1) for s in enumerate_link_states(n, i, f, g)}
    assert listed == seen


def test_link_moves():
    s = right_link_state(Diagram.identity(2, C2))
    spliced = apply_link_move(s, GSplice(1, 2, 1))
    assert spliced.pairs == [(0, 1, 1)]
    assert apply_link_move(s, Deletion(1)).nodes[0][0] == MISSING
    twice = apply_link_move(apply_link_move(s, LabelReplace(1, 1)), LabelReplace(1, 1))
    assert twice == s
    with pytest.raises(NotADefect):
        apply_link_move(spliced, Deletion(1))


def test_link_state_json_round_trip():
    for s in enumerate_link_states(3, 1, Flavor.ROOK_BRAUER, C2):
        assert LinkState.from_json(s.to_json()) == s


def test_jp_membership_examples():
    x = Diagram.from_edges(2, [("L1", "L2"), ("R1", "R2")])
    assert jp_member(x, right_link_state(x))
    p = LinkState.make(2, defects=[1, 2])
    assert all(jp_member(d, p) for d in enumerate_diagrams(2, Flavor.BRAUER))
    paired = LinkState.make(2, pairs=[(1, 2)])
    assert not jp_member(Diagram.identity(2), paired)


def test_jp_matches_explicit_move_closure():
    # breadth-first search over the moves is an independent route to reachability
    n = 3
    states = {s for i in range(n + 1) for s in enumerate_link_states(n, i, Flavor.ROOK_BRAUER, C2)}
    for p in random.Random(0).sample(sorted(states, key=lambda s: s.nodes), 25):
        closure, frontier = {p}, [p]
        while frontier:
            nxt = []
            for s in frontier:
                moves = [Deletion(a + 1) for a in s.defects]
                moves += [LabelReplace(a + 1, g) for a in s.defects for g in range(2)]
                moves += [GSplice(a + 1, b + 1, g) for a, b in itertools.combinations(s.defects, 2) for g in range(2)]
                for m in moves:
                    t = apply_link_move(s, m)
                    if t not in closure:
                        closure.add(t)
                        nxt.append(t)
            frontier = nxt
        for d in enumerate_diagrams(n, Flavor.ROOK_BRAUER, C2):
            assert jp_member(d, p) == (right_link_state(d) in closure)
