"""Sets of desirable gambles: natural extension, maximality, lower previsions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .cones import ConeWitness, cone_consistent, cone_contains, lower_prevision
from .model import (
    CredalSet,
    EmptyOptionSetError,
    Gamble,
    GambleAssessment,
    OptionSet,
    Ordering,
)


class InconsistentModelError(ValueError):
    """The generators put the zero gamble in their natural extension."""


def d_consistent(assessment: GambleAssessment) -> bool:
    """An assessment of desirable gambles avoids a sure loss of nothing-for-nothing."""
    return cone_consistent(assessment)


@dataclass(frozen=True)
class DesirabilityModel:
    """Natural extension of a finite, consistent set of desirable gambles."""

    generators: GambleAssessment

    def __post_init__(self):
        if not d_consistent(self.generators):
            raise InconsistentModelError("generators are inconsistent: zero is entailed")

    @classmethod
    def of(
        cls,
        gambles: Iterable,
        n: Optional[int] = None,
        ordering: Ordering = Ordering.NONNEG,
    ) -> "DesirabilityModel":
        return cls(GambleAssessment.of(gambles, n, ordering))

    @property
    def dim(self) -> int:
        return self.generators.dim

    @property
    def ordering(self) -> Ordering:
        return self.generators.ordering


def d_entails(model: DesirabilityModel, f: Gamble) -> Optional[ConeWitness]:
    """Witness that ``f`` is desirable under the model, or ``None``.

    The zero gamble is never desirable.
    """
    if f.is_zero():
        if len(f) != model.dim:
            cone_contains(model.generators, f)  # raises the space mismatch
        return None
    return cone_contains(model.generators, f)


def strict_desirable_under_lowprev(credal: CredalSet, f: Gamble) -> bool:
    """``f`` has positive lower expectation over the convex hull of ``credal``."""
    return credal.lower(f) > 0


def _prefers(model: Union[DesirabilityModel, CredalSet], diff: Gamble) -> bool:
    if isinstance(model, CredalSet):
        return strict_desirable_under_lowprev(model, diff)
    return d_entails(model, diff) is not None


def d_maximality_choice(
    model: Union[DesirabilityModel, CredalSet], options: OptionSet
) -> OptionSet:
    """Options not strictly dominated by another option in the set.

    ``v`` dominates ``u`` when ``v - u`` is desirable.  A :class:`CredalSet`
    stands for the gambles with positive lower envelope, which gives
    maximality with respect to that envelope.
    """
    if not len(options):
        raise EmptyOptionSetError("maximality needs a non-empty option set")
    chosen = [
        u for u in options
        if not any(_prefers(model, v - u) for v in options if v != u)
    ]
    return OptionSet(tuple(chosen))


def lowprev_from_model(model: DesirabilityModel, f: Gamble) -> Fraction:
    """Lower prevision induced by the model; finite because the model is consistent."""
    return lower_prevision(model.generators, f)


def envelope_from_strict(credal: CredalSet, f: Gamble) -> Fraction:
    """Recover ``sup{mu : f - mu strictly desirable}`` from the strict predicate alone.

    The predicate holds exactly for ``mu`` below a threshold that lies in
    ``[min f, max f]``; it is a sum of products of vertex masses and payoffs,
    so its denominator divides ``den`` below and bisection over that grid
    finds it exactly.
    """
    den = math.lcm(*(c.denominator for v in credal.vertices for c in v)) * math.lcm(
        *(c.denominator for c in f)
    )
    lo = math.floor(min(f) * den)  # predicate true strictly below min f
    hi = math.ceil(max(f) * den)  # and false at max f
    while strict_desirable_under_lowprev(credal, f.shift(-Fraction(lo, den))) is False:
        lo -= 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if strict_desirable_under_lowprev(credal, f.shift(-Fraction(mid, den))):
            lo = mid
        else:
            hi = mid
    return Fraction(hi, den)
