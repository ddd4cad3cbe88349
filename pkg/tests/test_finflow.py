import numpy as np
import pytest

from flowrel.finflow import (
    FactorMap,
    FiniteFlow,
    FlowParseError,
    MonoidTooLarge,
    NotAFactorMap,
    brute_minimal_left_ideals,
    close,
    equivalent_idempotents,
    fixed_point_set,
    format_flow,
    ideal_structure,
    idempotents,
    induced_theta,
    kernel_signature,
    minimal_left_ideals,
    parse_flow,
)
from flowrel.fuzz import CONSTANTS_FLOW, ROTATION3_FLOW, SINGLE_IDEAL_SEED_FLOW, TWO_IDEAL_FLOW


def test_flow_validation():
    with pytest.raises(ValueError):
        FiniteFlow(0, (tuple(),))
    with pytest.raises(ValueError):
        FiniteFlow(2, ())
    with pytest.raises(ValueError):
        FiniteFlow(2, ((0, 2),))
    with pytest.raises(ValueError):
        FiniteFlow(2, ((0,),))


def test_parse_and_format_roundtrip():
    text = "# demo\nstates: 3\n1 2 0\n0 0 0\n"
    flow = parse_flow(text)
    assert flow.n_states == 3
    assert flow.generators == ((1, 2, 0), (0, 0, 0))
    again = parse_flow(format_flow(flow, comment="roundtrip"))
    assert again == flow


def test_parse_errors():
    for bad in ("", "states: x\n0", "1 0\n", "states: 2\n", "states: 2\n0 2\n"):
        with pytest.raises(FlowParseError):
            parse_flow(bad)


def test_close_identity_only():
    m = close(FiniteFlow(2, ((0, 1),)))
    assert m.size == 1
    assert m.image_tuple(0) == (0, 1)


def test_close_constants():
    # hand closure: constants absorb, so {id, c0, c1} and nothing else
    m = close(CONSTANTS_FLOW)
    assert [m.image_tuple(i) for i in range(m.size)] == [(0, 1), (0, 0), (1, 1)]


def test_close_rotation_group():
    m = close(ROTATION3_FLOW)
    assert m.size == 3
    assert set(m.image_tuple(i) for i in range(3)) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def test_close_deterministic_order_and_cap():
    m1 = close(TWO_IDEAL_FLOW)
    m2 = close(TWO_IDEAL_FLOW)
    assert np.array_equal(m1.elements, m2.elements)
    # BFS layer 1 is the lexicographically sorted generator set
    assert m1.image_tuple(1) == (0, 0, 2, 2)
    assert m1.image_tuple(2) == (0, 2, 2, 0)
    with pytest.raises(MonoidTooLarge):
        close(TWO_IDEAL_FLOW, cap=4)


def test_closure_idempotence():
    for flow in (CONSTANTS_FLOW, ROTATION3_FLOW, TWO_IDEAL_FLOW, SINGLE_IDEAL_SEED_FLOW):
        m = close(flow)
        again = close(m.as_flow())
        assert set(map(tuple, m.elements.tolist())) == set(map(tuple, again.elements.tolist()))


def test_compose_convention():
    m = close(TWO_IDEAL_FLOW)
    # (p*q)(x) = p(q(x))
    for i in range(m.size):
        for j in range(m.size):
            k = m.compose(i, j)
            for x in range(4):
                assert m.apply(k, x) == m.apply(i, m.apply(j, x))


def test_minimal_ideals_constants():
    m = close(CONSTANTS_FLOW)
    ideals = minimal_left_ideals(m)
    assert len(ideals) == 1
    assert [m.image_tuple(i) for i in ideals[0].members] == [(0, 0), (1, 1)]
    assert idempotents(m, ideals[0]) == ideals[0].members


def test_minimal_ideal_of_group_is_whole_group():
    m = close(ROTATION3_FLOW)
    ideals = minimal_left_ideals(m)
    assert len(ideals) == 1
    assert len(ideals[0].members) == 3
    assert [m.image_tuple(u) for u in idempotents(m, ideals[0])] == [(0, 1, 2)]


def test_two_ideal_fixture_structure():
    # hand computation: nine elements, two kernel classes of rank-two maps
    m = close(TWO_IDEAL_FLOW)
    assert m.size == 9
    st = ideal_structure(m)
    assert len(st.ideals) == 2
    kernels = {ideal.kernel for ideal in st.ideals}
    assert kernels == {(0, 0, 1, 1), (0, 1, 1, 0)}
    idem_images = [
        sorted(m.image_tuple(u) for u in js) for js in st.idempotents_by_ideal
    ]
    assert idem_images == [
        [(0, 0, 2, 2), (1, 1, 3, 3)],
        [(0, 2, 2, 0), (3, 1, 1, 3)],
    ]


def test_minimal_ideals_match_brute_force():
    for flow in (CONSTANTS_FLOW, ROTATION3_FLOW, TWO_IDEAL_FLOW, SINGLE_IDEAL_SEED_FLOW):
        m = close(flow)
        fast = sorted(ideal.members for ideal in minimal_left_ideals(m))
        assert fast == brute_minimal_left_ideals(m)


def test_mp_equals_m_and_pu_equals_p():
    m = close(TWO_IDEAL_FLOW)
    st = ideal_structure(m)
    for k, ideal in enumerate(st.ideals):
        members = set(ideal.members)
        for p in ideal.members:
            assert {m.compose(s, p) for s in range(m.size)} == members
            for u in st.idempotents_by_ideal[k]:
                assert m.compose(p, u) == p


def test_equivalent_idempotents_two_ideal():
    # u1~v1 and u2~v2 in the fixture, nothing else
    m = close(TWO_IDEAL_FLOW)
    pairs = {
        tuple(sorted((m.image_tuple(u), m.image_tuple(v)))) for u, v in equivalent_idempotents(m)
    }
    assert pairs == {
        ((0, 0, 2, 2), (0, 2, 2, 0)),
        ((1, 1, 3, 3), (3, 1, 1, 3)),
    }


def test_equivalent_idempotents_single_ideal_empty():
    assert equivalent_idempotents(close(CONSTANTS_FLOW)) == []


def test_fixed_point_sets():
    m = close(CONSTANTS_FLOW)
    assert fixed_point_set(m, 0) == frozenset({0, 1})
    assert fixed_point_set(m, 1) == frozenset({0})
    assert fixed_point_set(m, 2) == frozenset({1})
    m2 = close(TWO_IDEAL_FLOW)
    u = m2.index[(1, 1, 3, 3)]
    assert fixed_point_set(m2, u) == frozenset({1, 3})
    not_idem = m2.index[(1, 3, 3, 1)]
    with pytest.raises(ValueError):
        fixed_point_set(m2, not_idem)


def test_idempotent_power():
    m = close(TWO_IDEAL_FLOW)
    e = m.index[(1, 3, 3, 1)]  # squares to (3,1,1,3)
    u = m.idempotent_power(e)
    assert m.is_idempotent(u)
    assert m.image_tuple(u) == (3, 1, 1, 3)


def test_kernel_signature():
    assert kernel_signature((1, 1, 3, 3)) == (0, 0, 1, 1)
    assert kernel_signature((3, 1, 1, 3)) == (0, 1, 1, 0)
    assert kernel_signature((2, 2, 2, 2)) == (0, 0, 0, 0)


def test_factor_map_validation():
    src = CONSTANTS_FLOW
    with pytest.raises(NotAFactorMap):
        FactorMap(src, FiniteFlow(1, ((0,),)), (0,))  # arity mismatch
    with pytest.raises(NotAFactorMap):
        FactorMap(src, FiniteFlow(2, ((0, 0), (1, 1))), (0, 0))  # not onto
    # collapse to a point is fine
    point = FiniteFlow(1, ((0,), (0,)))
    f = FactorMap(src, point, (0, 0))
    assert f.fiber(0) == (0, 1)


def test_induced_theta_identity_and_collapse():
    m = close(CONSTANTS_FLOW)
    ident = FactorMap(CONSTANTS_FLOW, CONSTANTS_FLOW, (0, 1))
    theta = induced_theta(ident, m, m)
    assert list(theta) == list(range(m.size))
    point = FiniteFlow(1, ((0,), (0,)))
    mp = close(point)
    theta2 = induced_theta(FactorMap(CONSTANTS_FLOW, point, (0, 0)), m, mp)
    assert set(int(t) for t in theta2) == {0}


def test_induced_theta_is_homomorphism():
    m = close(TWO_IDEAL_FLOW)
    f = FactorMap(TWO_IDEAL_FLOW, TWO_IDEAL_FLOW, (0, 1, 2, 3))
    theta = induced_theta(f, m, m)
    for i in range(m.size):
        for j in range(m.size):
            assert theta[m.compose(i, j)] == m.compose(int(theta[i]), int(theta[j]))
