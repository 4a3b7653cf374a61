from fractions import Fraction

import pytest
from hypothesis import assume, given

from desire_kernel.cones import cone_consistent
from desire_kernel.desirability import (
    DesirabilityModel,
    InconsistentModelError,
    d_consistent,
    d_entails,
    d_maximality_choice,
    envelope_from_strict,
    lowprev_from_model,
    strict_desirable_under_lowprev,
)
from desire_kernel.model import (
    CredalSet,
    EmptyOptionSetError,
    Gamble,
    GambleAssessment,
    OptionSet,
)

from helpers import credal_sets, gambles, generator_sets, option_sets

G = Gamble.of
half = Fraction(1, 2)


def test_d_consistent_examples():
    assert d_consistent(GambleAssessment.of([(-1, 2)]))
    assert not d_consistent(GambleAssessment.of([(1, -1), (-1, 1)]))
    assert d_consistent(GambleAssessment.of([], n=2))


def test_inconsistent_model_refused():
    with pytest.raises(InconsistentModelError):
        DesirabilityModel.of([(1, -1), (-1, 1)])


def test_d_entails_examples():
    m = DesirabilityModel.of([(-1, 2)])
    assert d_entails(m, G(-1, 2)) is not None
    assert d_entails(m, G(-1, 1)) is None
    assert d_entails(DesirabilityModel.of([], n=2), G(1, 0)) is not None
    assert d_entails(m, G(0, 0)) is None


def test_maximality_examples():
    vac = DesirabilityModel.of([], n=2)
    assert d_maximality_choice(vac, OptionSet.of((0, 0), (1, 1))) == OptionSet.of((1, 1))
    both = OptionSet.of((1, -1), (-1, 1))
    assert d_maximality_choice(vac, both) == both
    m = DesirabilityModel.of([(-1, 2)])
    assert d_maximality_choice(m, OptionSet.of((0, 0), (-1, 2))) == OptionSet.of((-1, 2))
    with pytest.raises(EmptyOptionSetError):
        d_maximality_choice(vac, OptionSet(()))


def test_lowprev_examples():
    m = DesirabilityModel.of([(-1, 2)])
    assert lowprev_from_model(m, G(0, 1)) == Fraction(1, 3)
    assert lowprev_from_model(m, G(1, 0)) == 0
    assert lowprev_from_model(DesirabilityModel.of([], n=2), G(1, 0)) == 0


def test_strict_desirability_examples():
    m = CredalSet.of([(1, 0), (0, 1)])
    assert strict_desirable_under_lowprev(m, G(1, 1))
    assert not strict_desirable_under_lowprev(m, G(1, -1))
    assert strict_desirable_under_lowprev(CredalSet.of([(half, half)]), G(1, 0))


def test_envelope_example():
    m = CredalSet.of([("1/3", "2/3"), ("3/4", "1/4")])
    f = G("1/2", -3)
    assert envelope_from_strict(m, f) == min(f.dot(v) for v in m.vertices)


@given(credal_sets(3), gambles(3))
def test_envelope_round_trip(m, f):
    assert envelope_from_strict(m, f) == m.lower(f)


@given(generator_sets(3), option_sets(3, max_size=4))
def test_maximality_idempotent_and_nonempty(gens, a):
    assume(cone_consistent(gens, 3))
    m = DesirabilityModel(GambleAssessment.of(gens, n=3))
    once = d_maximality_choice(m, a)
    assert len(once) > 0
    assert d_maximality_choice(m, once) == once


@given(credal_sets(2), option_sets(2, max_size=4))
def test_credal_maximality_idempotent(m, a):
    once = d_maximality_choice(m, a)
    assert len(once) > 0 and d_maximality_choice(m, once) == once


@given(generator_sets(2), gambles(2), gambles(2))
def test_entailment_monotone(gens, extra, f):
    assume(cone_consistent(gens + (extra,), 2))
    small = DesirabilityModel(GambleAssessment.of(gens, n=2))
    big = DesirabilityModel(GambleAssessment.of(gens + (extra,), n=2))
    if d_entails(small, f) is not None:
        assert d_entails(big, f) is not None
