import pytest

from bordered_hfk.algebra import AlgebraElement, local_state, matching, plat_matching, u_element
from bordered_hfk.bimodules import (
    maxima_d_structure,
    minimum_bimodule,
    minimum_context,
    negative_crossing,
    positive_crossing,
    trivial_bimodule,
)
from bordered_hfk.dstructures import (
    DepthExceeded,
    DGenerator,
    DStructure,
    IncompatibleBoundary,
    NotFlat,
    box_da_d,
    box_da_da,
    iterate_delta,
    to_flat_complex,
    verify_d_structure,
    verify_da_bimodule,
)
from bordered_hfk.engine import assemble
from bordered_hfk.knots import builtin

from structures import canonical_form, isomorphic_by_relabeling, random_structure


@pytest.mark.parametrize("n", [1, 2, 3])
def test_caps_structure_is_curved_type_d(n):
    X = maxima_d_structure(n)
    assert len(X) == 1
    assert verify_d_structure(X).passed


def test_wrong_curvature_is_detected():
    X = maxima_d_structure(2)
    rep = verify_d_structure(X, matching(2, [(1, 3), (2, 4)]))
    assert not rep.passed and rep.failures


def test_json_round_trip():
    X = random_structure(2, seed=3)
    Y = DStructure.from_json(X.to_json())
    assert canonical_form(X) == canonical_form(Y)


def test_coefficients_must_respect_idempotents():
    x, y = local_state(1, [1]), local_state(1, [1])
    gens = [DGenerator("a", x), DGenerator("b", y)]
    with pytest.raises(ValueError):
        DStructure(2, plat_matching(1), gens)
    with pytest.raises(KeyError):
        DStructure(1, plat_matching(1), gens, {"a": [(u_element(1, 1), "zz")]})


def test_iterate_delta_counts_chains():
    X = DStructure(1, plat_matching(1), [DGenerator("a", local_state(1, [1]))],
                   {"a": [(u_element(1, 1), "a")]})
    assert len(iterate_delta(X, "a", 0)) == 1
    ((chain, g),) = iterate_delta(X, "a", 3)
    assert len(chain) == 3 and g == "a"


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_identity_bimodule_is_a_unit(n, seed):
    X = random_structure(n, seed)
    Y = box_da_d(trivial_bimodule(n), X)
    assert isomorphic_by_relabeling(X, Y)


def test_interface_mismatch_is_rejected():
    X = maxima_d_structure(2)
    B = positive_crossing(2, 2, matching_in=matching(2, [(1, 3), (2, 4)]))
    with pytest.raises(IncompatibleBoundary):
        box_da_d(B, X)
    with pytest.raises(IncompatibleBoundary):
        box_da_d(trivial_bimodule(3), X)


def test_depth_cap_is_enforced():
    with pytest.raises(DepthExceeded):
        assemble(builtin("figure8"), depth_cap=1)


@pytest.mark.parametrize("n", [1, 2])
def test_trivial_sweep(n):
    assert verify_da_bimodule(trivial_bimodule(n), 3, 2).passed


@pytest.mark.parametrize("make", [positive_crossing, negative_crossing])
@pytest.mark.parametrize("n, pos", [(1, 1), (2, 1), (2, 3)])
def test_crossing_sweep_at_the_edges(make, n, pos):
    assert verify_da_bimodule(make(n, pos), 3, 2).passed


@pytest.mark.parametrize("pairs", [[(1, 3), (2, 4)], [(1, 4), (2, 3)]])
def test_minimum_sweep_four_strands(pairs):
    B = minimum_bimodule(minimum_context(matching(2, pairs)))
    assert verify_da_bimodule(B, 3, 2).passed


def test_composite_agrees_with_sequential_boxing():
    X = maxima_d_structure(2)
    B1 = positive_crossing(2, 1)
    B2 = negative_crossing(2, 3, matching_in=B1.matching_out)
    seq = box_da_d(B2, box_da_d(B1, X))
    comp = box_da_d(box_da_da(B2, B1), X)
    assert canonical_form(seq) == canonical_form(comp)


def test_flat_complex_of_a_flat_structure():
    X = DStructure(1, plat_matching(1), [DGenerator("a", local_state(1, [1])), DGenerator("b", local_state(1, [1]))],
                   {"a": [(u_element(1, 1), "b")]})
    F = to_flat_complex(X, mode="quotient")
    assert [d for _, d in F.differential["a"]] == ["b"]
    with pytest.raises(NotFlat):
        to_flat_complex(X, mode="strict")
    sq = DStructure(1, plat_matching(1), [DGenerator("a", local_state(1, [1]))],
                    {"a": [(u_element(1, 1), "a")]})
    with pytest.raises(NotFlat):
        to_flat_complex(sq, mode="quotient")


def test_delta_bar_identities_on_built_structures():
    from bordered_hfk.dstructures import check_delta_bar_identities
    from bordered_hfk.knots import builtin_names
    X = box_da_d(positive_crossing(2, 1), maxima_d_structure(2))
    assert check_delta_bar_identities(X).passed
    for name in builtin_names():
        assert check_delta_bar_identities(assemble(builtin(name)).structure).passed
