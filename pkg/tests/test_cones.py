from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from desire_kernel.cones import (
    UNBOUNDED,
    ConeWitness,
    MixWitness,
    check_cone_witness,
    check_mix_witness,
    cone_consistent,
    cone_contains,
    credal_accepts,
    credal_minimax,
    lower_prevision,
    posi_meets_cone,
)
from desire_kernel.model import (
    CredalSet,
    EmptyOptionSetError,
    Gamble,
    GambleAssessment,
    OptionSet,
    Ordering,
    SpaceMismatch,
)

from helpers import (
    close_rational,
    credal_sets,
    gambles,
    generator_sets,
    option_sets,
    scipy_cone_contains,
    scipy_lower_prevision,
)

G = lambda *c: Gamble.of(*c)  # noqa: E731
half = Fraction(1, 2)


class TestConeContains:
    def test_background_member(self):
        w = cone_contains([G(-1, 2)], G(1, 0))
        assert w is not None and w.slack == G(1, 0) and w.coefficient(G(-1, 2)) == 0

    def test_hand_infeasible(self):
        assert cone_contains([G(-1, 2)], G(-1, 1)) is None

    def test_generator_scaling(self):
        w = cone_contains([G(-1, 2)], G(-2, 4))
        assert w.coefficient(G(-1, 2)) == 2 and w.slack.is_zero()

    def test_cancellation_witness(self):
        gens = [G(1, -1), G(-1, 1)]
        w = cone_contains(gens, G(0, 0))
        # any positive multiple of (1, 1) is a witness; the normalisation picks 1/2 each
        assert w.coefficient(G(1, -1)) == w.coefficient(G(-1, 1)) > 0
        assert check_cone_witness(gens, G(0, 0), w)

    def test_zero_not_in_background(self):
        assert cone_contains([], G(0, 0)) is None

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            cone_contains([G(1, 2)], G(1, 2, 3))
        with pytest.raises(SpaceMismatch):
            cone_contains(GambleAssessment.of([(1, 2)]), G(1))

    def test_strict_ordering(self):
        s = Ordering.STRICT
        assert cone_contains([], G(1, 0), s) is None
        assert cone_contains([], G(1, 1), s) is not None
        w = cone_contains([G(1, -1)], G(2, 0), s)
        assert w is not None and check_cone_witness([G(1, -1)], G(2, 0), w, s)
        assert cone_contains([G(1, -1)], G(1, -1), s) is not None
        assert cone_contains([G(1, -1)], G(0, 0), s) is None

    def test_witness_json_round_trip(self):
        w = cone_contains([G(-1, 2)], G(-2, 5))
        assert ConeWitness.from_json(w.to_json()) == w


class TestConsistency:
    def test_examples(self):
        assert cone_consistent([G(-1, 2)])
        assert not cone_consistent([G(1, -1), G(-1, 1)])
        assert cone_consistent([], n=2)

    def test_strict_is_weaker_requirement(self):
        # (1,0) and (-1,0) cancel under either ordering; (0,-1) alone is
        # inconsistent only when (0,1) is a background positive
        assert not cone_consistent([G(1, 0), G(-1, 0)], ordering=Ordering.STRICT)
        assert not cone_consistent([G(0, -1)])
        assert cone_consistent([G(0, -1)], ordering=Ordering.STRICT)


class TestPosiMeetsCone:
    def test_cancellation_only(self):
        assert posi_meets_cone(OptionSet.of((-1, 1), (1, -1)), []) is None

    def test_positive_member(self):
        w = posi_meets_cone(OptionSet.of((2, 0)), [])
        assert w is not None and w.cone.slack == G(2, 0)

    def test_half_generator(self):
        gens = [G(-2, 2)]
        b = OptionSet.of((-1, 1))
        w = posi_meets_cone(b, gens)
        assert w.mu == (1,)
        assert w.cone.coefficient(G(-2, 2)) == half
        assert check_mix_witness(b, gens, w)
        assert MixWitness.from_json(w.to_json()) == w

    def test_midpoint(self):
        b = OptionSet.of((-1, 2), (2, -1))
        w = posi_meets_cone(b, [])
        assert w is not None and check_mix_witness(b, [], w)

    def test_empty_set(self):
        with pytest.raises(EmptyOptionSetError):
            posi_meets_cone(OptionSet(()), [])

    def test_strict(self):
        s = Ordering.STRICT
        assert posi_meets_cone(OptionSet.of((1, 0)), [], s) is None
        assert posi_meets_cone(OptionSet.of((1, 0), (0, 1)), [], s) is not None
        w = posi_meets_cone(OptionSet.of((-1, 1)), [G(-2, 2)], s)
        assert w is not None and check_mix_witness(OptionSet.of((-1, 1)), [G(-2, 2)], w, s)


class TestLowerPrevision:
    def test_examples(self):
        assert lower_prevision([G(-1, 2)], G(0, 1)) == Fraction(1, 3)
        assert lower_prevision([G(-1, 2)], G(1, 0)) == 0
        assert lower_prevision([], G(1, 0)) == 0
        assert lower_prevision([G(1, -1), G(-1, 1)], G(5, 7)) is UNBOUNDED

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            lower_prevision([G(1, 1)], G(1))


class TestCredal:
    M = CredalSet.of([(1, 0), (0, 1)])

    def test_examples(self):
        assert not credal_accepts(self.M, OptionSet.of((1, -1), (-1, 1)))
        assert credal_minimax(self.M, OptionSet.of((1, -1), (-1, 1))) == 0
        assert credal_accepts(self.M, OptionSet.of((1, 1)))
        assert not credal_accepts(CredalSet.of([(half, half)]), OptionSet.of((1, -1)))

    def test_errors(self):
        with pytest.raises(EmptyOptionSetError):
            credal_accepts(self.M, OptionSet(()))
        with pytest.raises(SpaceMismatch):
            credal_accepts(self.M, OptionSet.of((1, 1, 1)))

    @given(credal_sets(3, max_vertices=1), option_sets(3))
    def test_single_vertex_reduces_to_dot_products(self, m, b):
        p = m.vertices[0]
        assert credal_accepts(m, b) == any(g.dot(p) > 0 for g in b)

    @given(credal_sets(2, max_vertices=3), option_sets(2))
    def test_minimax_against_grid(self, m, b):
        # the minimum over the hull is at most the value at any vertex
        value = credal_minimax(m, b)
        for v in m.vertices:
            assert max(g.dot(v) for g in b) >= value


# -- property tests --------------------------------------------------------------


@given(generator_sets(3), gambles(3))
def test_witness_reverifies(gens, f):
    w = cone_contains(gens, f)
    if w is not None:
        assert check_cone_witness(gens, f, w)
        assert w.combination() == f


@given(generator_sets(3), gambles(3))
def test_agrees_with_highs(gens, f):
    assert (cone_contains(gens, f) is not None) == scipy_cone_contains(gens, f)


@given(generator_sets(3), gambles(3), gambles(3))
def test_monotone_in_generators(gens, extra, f):
    if cone_contains(gens, f) is not None:
        assert cone_contains(gens + (extra,), f) is not None


@given(generator_sets(3), gambles(3), st.integers(1, 6), st.integers(1, 6))
def test_positive_homogeneity(gens, f, p, q):
    lam = Fraction(p, q)
    assume(not f.is_zero())
    assert (cone_contains(gens, f) is None) == (cone_contains(gens, lam * f) is None)
    lp = lower_prevision(gens, f)
    if lp is not UNBOUNDED:
        assert lower_prevision(gens, lam * f) == lam * lp


@given(generator_sets(3), gambles(3), gambles(3))
def test_superadditive_and_bounded_below(gens, f, g):
    pf = lower_prevision(gens, f)
    if pf is UNBOUNDED:
        assert not cone_consistent(gens, 3)
        return
    assert pf >= min(f)
    assert lower_prevision(gens, f + g) >= pf + lower_prevision(gens, g)


@given(generator_sets(3), gambles(3))
def test_lower_prevision_agrees_with_highs(gens, f):
    assume(cone_consistent(gens, 3))
    ref = scipy_lower_prevision(gens, f)
    assert ref is not None
    assert close_rational(ref, lower_prevision(gens, f))


@given(option_sets(2), generator_sets(2))
def test_mix_witness_reverifies(b, gens):
    assume(cone_consistent(gens, 2))
    w = posi_meets_cone(b, gens)
    if w is not None:
        assert check_mix_witness(b, gens, w)
    # a member already in the cone is a trivial mixture
    if any(cone_contains(gens, x) for x in b):
        assert w is not None


@given(generator_sets(2), gambles(2), st.sampled_from(list(Ordering)))
def test_determinism(gens, f, o):
    assert cone_contains(gens, f, o) == cone_contains(tuple(reversed(gens)), f, o)
