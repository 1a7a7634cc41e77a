import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bordered_hfk.knots import (
    Crossing,
    Min,
    PresentationSyntaxError,
    SlicePresentation,
    ValidationError,
    builtin,
    builtin_names,
    components,
    from_json,
    matching_trace,
    normalize,
    parse,
    serialize,
    validate,
)
from bracket_oracle import normalized_bracket


def test_text_and_json_agree():
    p = parse("caps 2; x2-; x2-; x2-; min; min")
    q = parse(json.dumps(p.to_json()))
    assert p == q
    assert parse(p.to_json()) == p


def test_text_comments_and_newlines():
    p = parse("caps 1  # one cap\nx1+\nmin\n")
    assert p.events == (Crossing(1, 1), Min(1))


@pytest.mark.parametrize("doc, where", [
    ({"caps": "2", "events": []}, "caps"),
    ({"caps": 1, "events": [{"crossing": {"pos": 1}}]}, "events[0].crossing"),
    ({"caps": 1, "events": [{"twist": {}}]}, "events[0]"),
    ({"caps": 1, "events": [{"crossing": {"pos": 1, "sign": True}}, {"min": {}}]}, "events[0].crossing.sign"),
    ({"format": "other", "caps": 1, "events": []}, "format"),
])
def test_json_errors_name_the_field(doc, where):
    with pytest.raises(PresentationSyntaxError, match=rf"^{__import__('re').escape(where)}"):
        from_json(doc)


@pytest.mark.parametrize("text, msg", [
    ("caps 1; x2+; min", "pos"),
    ("caps 1", "does not close"),
    ("caps 1; min; x1+", "already joined"),
    ("caps 2; min; min", "already joined"),
    ("caps 1; x1*; min", "cannot read"),
])
def test_validation_errors(text, msg):
    with pytest.raises(ValueError, match=msg):
        parse(text)


def test_links_are_rejected():
    # two unlinked caps closed separately
    with pytest.raises(ValidationError):
        parse("caps 2; x2+; x2+; min; min")
    assert components(SlicePresentation(2, (Crossing(2, 1), Crossing(2, 1), Min(), Min()))) == 2


def test_matching_trace_starts_with_plat():
    tr = matching_trace(builtin("trefoil_left"))
    assert tr[0].pairs == ((1, 2), (3, 4))
    assert tr[1].pairs == ((1, 3), (2, 4))
    assert tr[len(tr) - 1] is None


def test_builtins_are_valid_knots_with_expected_brackets():
    assert set(builtin_names()) >= {"unknot", "unknot_r1_pos", "unknot_r1_neg", "trefoil_left",
                                    "trefoil_right", "figure8"}
    unknot = normalized_bracket(builtin("unknot"))
    assert normalized_bracket(builtin("unknot_r1_pos")) == unknot
    assert normalized_bracket(builtin("unknot_r1_neg")) == unknot
    left = normalized_bracket(builtin("trefoil_left"))
    right = normalized_bracket(builtin("trefoil_right"))
    assert left != unknot and right != unknot and left in (tuple(reversed(right)), tuple(-c for c in reversed(right)))
    f8 = normalized_bracket(builtin("figure8"))
    assert f8 == (1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 1)
    assert f8 == tuple(reversed(f8))


def test_normalize_preserves_knot_type():
    p = parse("caps 2; x2-; x2-; x1+; min2; min")
    q = normalize(p)
    assert q.is_standard and not p.is_standard
    assert normalized_bracket(q) == normalized_bracket(p) == normalized_bracket(builtin("trefoil_left"))


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("nope")


# -- properties ---------------------------------------------------------------


@st.composite
def presentations(draw):
    """Random valid presentations with at most eight crossings."""
    caps = draw(st.integers(1, 3))
    events = []
    strands = 2 * caps
    while strands:
        if len(events) < 8 and strands > 2 and draw(st.booleans()):
            events.append(Crossing(draw(st.integers(1, strands - 1)), draw(st.sampled_from([1, -1]))))
        else:
            events.append(Min(draw(st.integers(1, strands - 1))))
            strands -= 2
    p = SlicePresentation(caps, tuple(events))
    assume(components(p) == 1)
    return validate(p)


@settings(max_examples=100, deadline=None)
@given(presentations())
def test_round_trip(p):
    assert parse(serialize(p)) == p
    assert parse(p.text()) == p


@settings(max_examples=60, deadline=None)
@given(presentations())
def test_normalize_idempotent_and_type_preserving(p):
    q = normalize(p)
    assert normalize(q) == q
    assert q.is_standard
    if len(q.crossings) <= 12:
        assert normalized_bracket(q) == normalized_bracket(p)
