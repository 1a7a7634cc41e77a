import time

import pytest

from bordered_hfk.engine import (
    F2Matrix,
    NotADifferential,
    assemble,
    compute,
    hat_matrix,
    hat_rank,
    matrix_from_rows,
    pipeline,
)
from bordered_hfk.kauffman import enumerate_closed_states
from bordered_hfk.knots import builtin, builtin_names, parse, to_closed_diagram

from make_golden import GOLDEN, golden_output


def test_hat_rank_small_matrices():
    assert hat_rank(matrix_from_rows([[0]])) == 1
    assert hat_rank(matrix_from_rows([[0, 1], [0, 0]])) == 0
    assert hat_rank(matrix_from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])) == 1
    with pytest.raises(NotADifferential):
        hat_rank(matrix_from_rows([[0, 1], [1, 0]]))


def test_matrix_square():
    m = matrix_from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert m.square() == F2Matrix(m.labels, (frozenset({2}), frozenset(), frozenset()))


def test_pipeline_interfaces_line_up():
    pl = pipeline(builtin("figure8"))
    assert pl.structure.matching == pl.bimodules[0].matching_in
    for a, b in zip(pl.bimodules, pl.bimodules[1:]):
        assert a.matching_out == b.matching_in and a.n_out == b.n_in
    assert pl.bimodules[-1].n_out == 1


def test_hat_matrix_needs_two_strand_algebra():
    pl = pipeline(builtin("trefoil_left"))
    with pytest.raises(ValueError):
        hat_matrix(pl.structure)


@pytest.mark.parametrize("name", builtin_names())
def test_generators_match_closed_states(name):
    p = builtin(name)
    res = compute(p)
    states = enumerate_closed_states(to_closed_diagram(p))
    assert len(res.structure) == len(states)
    assert res.matrix.square().is_zero()


@pytest.mark.parametrize("name, rank", [
    ("unknot", 1), ("unknot_r1_pos", 1), ("unknot_r1_neg", 1),
    ("trefoil_left", 3), ("trefoil_right", 3), ("figure8", 5),
])
def test_hat_ranks(name, rank):
    assert compute(builtin(name)).hat_rank == rank


def test_levels_report_sizes():
    res = assemble(builtin("trefoil_left"))
    assert [lv.generators for lv in res.levels] == [1, 3, 5, 7, 3]
    assert [lv.n for lv in res.levels] == [2, 2, 2, 2, 1]
    assert not any(lv.verified for lv in res.levels)


def test_invariance_across_slicings():
    trefoils = ["caps 2; x2-; x2-; x2-; min; min", "caps 2; x2-; x2-; x1+; min2; min",
                "caps 2; x2-; x2+; x2-; x2-; x2-; min; min"]
    assert {compute(parse(t)).hat_rank for t in trefoils} == {3}
    unknots = ["caps 1; min", "caps 2; min2; min", "caps 1; x1+; x1-; min"]
    assert {compute(parse(t)).hat_rank for t in unknots} == {1}


def test_threads_do_not_change_the_result():
    a = compute(builtin("figure8"))
    b = compute(builtin("figure8"), threads=4)
    assert a.structure.to_json() == b.structure.to_json()


@pytest.mark.parametrize("name", builtin_names())
def test_golden(name):
    assert golden_output(name) == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


def test_trefoil_is_fast():
    t = time.perf_counter()
    compute(builtin("trefoil_left"))
    assert time.perf_counter() - t < 1.0
