import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from desire_kernel.model import (
    CredalSet,
    Gamble,
    GambleAssessment,
    ModelError,
    OptionSet,
    OptionSetAssessment,
    Ordering,
    SpaceMismatch,
    SpaceSpec,
    dominates_background,
    dump_model,
    format_rational,
    gamble_add,
    gamble_scale,
    gamble_sub,
    model_from_dict,
    parse_model,
    to_rational,
)

from helpers import assessments, credal_sets, gambles, rationals


def test_parse_option_set_assessment():
    m = parse_model(
        '{"space":["x1","x2"],"ordering":"nonneg","assessment":[[["1","-1"],["-1","1"]]]}'
    )
    assert isinstance(m, OptionSetAssessment)
    assert m.sets == (OptionSet.of((1, -1), (-1, 1)),)
    assert m.ordering is Ordering.NONNEG


def test_parse_half_singleton_defaults_to_nonneg():
    m = parse_model('{"space":["x1"],"assessment":[[["1/2"]]]}')
    assert m.sets == (OptionSet.of((Fraction(1, 2),)),)
    assert m.ordering is Ordering.NONNEG


def test_unnormalised_vertex_is_reported_with_path():
    with pytest.raises(ModelError, match="vertex not normalized") as exc:
        parse_model('{"space":["a","b"],"credal":[["1/2","1/3"]]}')
    assert exc.value.path == "$.credal[0]"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{not json", "malformed JSON"),
        ('{"space":["a","b"],"desirable":[["1"]]}', "length mismatch"),
        ('{"space":["a"],"ordering":"weak","desirable":[]}', "unknown ordering variant"),
        ('{"space":["a"],"desirable":[["0.5"]]}', "not a rational literal"),
        ('{"space":["a"],"desirable":[[0.5]]}', "expected an integer"),
        ('{"space":["a"],"desirable":[["1/0"]]}', "zero denominator"),
        ('{"space":["a","a"],"desirable":[]}', "unique"),
        ('{"space":[],"desirable":[]}', "non-empty"),
        ('{"space":["a"]}', "exactly one"),
        ('{"space":["a"],"desirable":[],"credal":[["1"]]}', "exactly one"),
        ('{"space":["a"],"desirable":[],"extra":1}', "unknown keys"),
        ('{"space":["a","b"],"credal":[["-1","2"]]}', "negative"),
        ('{"space":["a"],"credal":[]}', "at least one vertex"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ModelError, match=fragment):
        parse_model(text)


def test_gamble_length_error_points_into_document():
    with pytest.raises(ModelError) as exc:
        parse_model('{"space":["a","b"],"assessment":[[["1","2"]],[["1"]]]}')
    assert exc.value.path == "$.assessment[1][0]"


def test_arithmetic_examples():
    assert gamble_add(Gamble.of(1, -1), Gamble.of(-1, 1)) == Gamble.of(0, 0)
    assert gamble_scale(2, Gamble.of(1, -1)) == Gamble.of(2, -2)
    assert gamble_sub(Gamble.of(1, 0), Gamble.of(0, 1)) == Gamble.of(1, -1)


def test_arithmetic_space_mismatch():
    with pytest.raises(SpaceMismatch):
        gamble_add(Gamble.of(1), Gamble.of(1, 2))
    with pytest.raises(SpaceMismatch):
        OptionSet.of((1,), (1, 2))


def test_background_examples():
    assert dominates_background(Gamble.of(1, 0), Ordering.NONNEG)
    assert not dominates_background(Gamble.of(1, 0), Ordering.STRICT)
    for o in Ordering:
        assert not dominates_background(Gamble.of(0, 0), o)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-2, 6)) == "-1/3"
    assert to_rational(" 3 / 6 ") == Fraction(1, 2)


def test_option_sets_are_canonical():
    a = OptionSet.of((1, 0), (0, 1), (1, 0))
    assert a.gambles == (Gamble.of(0, 1), Gamble.of(1, 0))
    assert a == OptionSet.of((0, 1), (1, 0))
    assert OptionSet(()).dim is None


def test_assessments_sort_and_dedupe_sets():
    a = OptionSetAssessment.of([[(1, 0)], [(0, 1)], [(1, 0)]])
    assert len(a) == 2 and list(a.sets) == sorted(a.sets)


def test_lift_gives_singletons():
    g = GambleAssessment.of([(1, 2), (-1, 0)])
    assert [len(s) for s in g.lift()] == [1, 1]


def test_credal_dedupes_vertices():
    m = CredalSet.of([("1/2", "1/2"), ("1/2", "1/2"), (1, 0)])
    assert len(m.vertices) == 2
    assert m.lower(Gamble.of(1, -1)) == 0
    assert m.upper(Gamble.of(1, -1)) == 1


@given(rationals, rationals, rationals)
def test_exact_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(gambles(3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_background_is_upward_closed(u, v):
    if dominates_background(u, Ordering.NONNEG):
        assert dominates_background(u + Gamble(tuple(v)), Ordering.NONNEG)


@given(assessments(3))
def test_assessment_round_trip(a):
    assert parse_model(dump_model(a)) == a
    assert dump_model(parse_model(dump_model(a))) == dump_model(a)


@given(credal_sets(3))
def test_credal_round_trip(m):
    assert parse_model(dump_model(m)) == m


@given(st.lists(gambles(2), max_size=4), st.sampled_from(list(Ordering)))
def test_gamble_assessment_round_trip(gs, ordering):
    g = GambleAssessment(tuple(gs), SpaceSpec.of_size(2), ordering)
    assert model_from_dict(json.loads(dump_model(g))) == g
