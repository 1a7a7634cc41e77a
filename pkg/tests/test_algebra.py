import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bordered_hfk.algebra import (
    AlgebraElement,
    AlgebraError,
    all_matchings,
    algebra,
    canonicalize,
    curvature_element,
    enumerate_local_states,
    idempotent,
    is_far,
    l_element,
    local_state,
    matching,
    plat_matching,
    r_element,
    transfer_vector,
    u_element,
    unit,
    weight,
)
from bordered_hfk.bimodules import o_involution
from bordered_hfk.laws import check_algebra_laws, check_associativity_literal

from strategies import composable, elements


def ls(n, *ivs):
    return local_state(n, ivs)


def test_local_state_validation():
    assert ls(2, 3, 1).intervals == (1, 3)
    with pytest.raises(AlgebraError):
        ls(2, 1, 1)
    with pytest.raises(AlgebraError):
        ls(2, 1, 4)
    assert len(enumerate_local_states(3)) == 10


def test_transfer_vector_reference_values():
    assert transfer_vector(ls(2, 1, 2), ls(2, 2, 3)) == (0, 1, 1, 0)
    assert transfer_vector(ls(1, 1), ls(1, 1)) == (0, 0)
    x = ls(3, 1, 3, 5)
    assert transfer_vector(x, x) == (0,) * 6


def test_weight_of_R_and_L_is_half():
    r = r_element(2, 2).generators()[0]
    assert [float(w) for w in weight(r).entries] == [0, 0.5, 0, 0]


def test_u_kills_idempotent_missing_neighbours():
    # {1} at n=1 meets both U1 and U2
    assert u_element(1, 1) and u_element(2, 1)
    # {1,2} at n=2 misses intervals 3 and 4 around U4
    e = idempotent(ls(2, 1, 2)) * u_element(4, 2)
    assert not e


def test_far_states_vanish():
    x, y = ls(2, 1, 2), ls(2, 2, 3)
    assert not is_far(x, y)
    assert is_far(ls(2, 1, 2), ls(2, 2, 3)) is False
    far = canonicalize(ls(3, 1, 2, 3), ls(3, 3, 4, 5), (0,) * 6)
    assert not far


def test_R_R_and_L_L_relations():
    for i in (1, 2):
        assert not r_element(i, 2) * r_element(i + 1, 2)
        assert not l_element(i + 1, 2) * l_element(i, 2)


def test_R_L_gives_U():
    # R_2 L_2 = U_2 on states containing 1 but not 2
    x = ls(2, 1, 3)
    lhs = idempotent(x) * r_element(2, 2) * l_element(2, 2)
    assert lhs == idempotent(x) * u_element(2, 2)


def test_unit_and_idempotents():
    one = unit(2)
    for x in enumerate_local_states(2):
        e = idempotent(x)
        assert e * e == e
        assert one * e == e == e * one


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraError):
        unit(1) * unit(2)


def test_curvature_of_plat_matching():
    w = curvature_element(plat_matching(1))
    assert w == u_element(1, 1) * u_element(2, 1)
    assert len(all_matchings(2)) == 3 and len(all_matchings(3)) == 15


def test_json_round_trip():
    e = r_element(2, 2) + u_element(1, 2)
    assert AlgebraElement.from_json(e.to_json()) == e


@pytest.mark.parametrize("n", [1, 2])
def test_literal_associativity_small(n):
    rep = check_associativity_literal(n, 2)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("n", [1, 2])
def test_law_suite_small(n):
    rep = check_algebra_laws(n, 2)
    assert rep.passed, rep.failures


# -- properties ---------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(composable(3, 3))
def test_associativity_on_random_triples(chain):
    a, b, c = (AlgebraElement(3, [g]) for g in chain)
    assert (a * b) * c == a * (b * c)


@settings(max_examples=150, deadline=None)
@given(elements(2), elements(2), elements(2))
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=200, deadline=None)
@given(composable(3, 2))
def test_weight_additivity(chain):
    a, b = (AlgebraElement(3, [g]) for g in chain)
    p = a * b
    if p:
        (g,) = p.generators()
        wa, wb = (weight(x).doubled for x in (a.generators()[0], b.generators()[0]))
        assert weight(g).doubled == tuple(x + y for x, y in zip(wa, wb))


@settings(max_examples=200, deadline=None)
@given(composable(2, 2))
def test_o_involution_is_anti_automorphism(chain):
    a, b = (AlgebraElement(2, [g]) for g in chain)
    assert o_involution(o_involution(a)) == a
    assert o_involution(a * b) == o_involution(b) * o_involution(a)


@settings(max_examples=100, deadline=None)
@given(elements(3, 1), st.sampled_from(all_matchings(3)))
def test_curvature_is_central(a, m):
    w = curvature_element(m)
    assert w * a == a * w


def test_matching_validation():
    with pytest.raises(AlgebraError):
        matching(2, [(1, 2), (2, 3)])
    assert matching(2, [(4, 3), (2, 1)]) == plat_matching(2)
    assert algebra(2) is algebra(2)


def test_R_relations_four_pairs():
    for i in range(1, 7):
        assert not r_element(i, 4) * r_element(i + 1, 4)
        assert not l_element(i + 1, 4) * l_element(i, 4)
