"""Set-level operators on explicit finite families of option sets.

These act on listed families only.  Their closure-level counterparts are
expressed through the entailment predicates in :mod:`desire_kernel.choice`;
here they serve as transforms for the CLI and as constructors for the
property suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .lp import LinearProgram, Relation, Status, lp_solve
from .model import (
    EmptyOptionSetError,
    Gamble,
    OptionSet,
    Ordering,
    RationalLike,
    SpaceMismatch,
    SpaceSpec,
    nonpositive_background,
    to_rational,
)

DEFAULT_FAMILY_CAP = 10**5

_ZERO = Fraction(0)
_ONE = Fraction(1)


class FamilyCapExceeded(RuntimeError):
    """An operator would enumerate more option sets than allowed."""


@dataclass(frozen=True)
class FiniteFamily:
    """An explicitly enumerated family of option sets (not a closure)."""

    sets: tuple[OptionSet, ...]
    space: SpaceSpec
    ordering: Ordering = Ordering.NONNEG

    def __post_init__(self):
        sets = tuple(sorted(set(self.sets)))
        for s in sets:
            if s.dim is not None and s.dim != len(self.space):
                raise SpaceMismatch(f"option set on {s.dim} states, family on {len(self.space)}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def of(cls, sets: Iterable, n: int, ordering: Ordering = Ordering.NONNEG) -> "FiniteFamily":
        ss = tuple(s if isinstance(s, OptionSet) else OptionSet.of(*s) for s in sets)
        return cls(ss, SpaceSpec.of_size(n), ordering)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[OptionSet]:
        return iter(self.sets)

    def __contains__(self, s: object) -> bool:
        return s in self.sets

    def to_json(self) -> list:
        return [s.to_json() for s in self.sets]


def translate(options: OptionSet, u: Gamble) -> OptionSet:
    """``{v - u : v in options}``."""
    if options.dim is not None and options.dim != len(u):
        raise SpaceMismatch("option set and shift live on different spaces")
    return options.translate(u)


def _positive_pair(pair, where: str) -> tuple[Fraction, Fraction]:
    if len(pair) != 2:
        raise ValueError(f"{where}: expected a (lambda, mu) pair")
    lam, mu = to_rational(pair[0]), to_rational(pair[1])
    if lam < 0 or mu < 0 or lam + mu == 0:
        raise ValueError(f"{where}: coefficients must be non-negative and not both zero")
    return lam, mu


def k3_combine(
    b1: OptionSet,
    b2: OptionSet,
    coeffs: Mapping[tuple[Gamble, Gamble], tuple[RationalLike, RationalLike]],
) -> OptionSet:
    """``{lam_uv * u + mu_uv * v : u in b1, v in b2}``.

    >>> a, b = Gamble.of(1, -1), Gamble.of(-1, 1)
    >>> B = OptionSet.of(a, b)
    >>> c = {(u, v): (1, 1) for u in B for v in B}
    >>> c[(a, a)] = (1, 0)
    >>> print(k3_combine(B, B, c))
    {(-2, 2), (0, 0), (1, -1)}
    """
    out = []
    for u in b1:
        for v in b2:
            if (u, v) not in coeffs:
                raise ValueError(f"missing coefficients for pair ({u}, {v})")
            lam, mu = _positive_pair(coeffs[(u, v)], f"pair ({u}, {v})")
            out.append(lam * u + mu * v)
    return OptionSet(tuple(out))


def rescale(options: OptionSet, scales: Mapping[Gamble, RationalLike]) -> OptionSet:
    """Scale each member by its own positive factor (default 1)."""
    out = []
    for u in options:
        lam = to_rational(scales.get(u, 1))
        if lam <= 0:
            raise ValueError(f"scale for {u} must be positive, got {lam}")
        out.append(lam * u)
    return OptionSet(tuple(out))


def _removable(c: OptionSet, ordering: Ordering) -> tuple[Gamble, ...]:
    return tuple(g for g in c if nonpositive_background(g, ordering))


def rn_transform(family: FiniteFamily, cap: int = DEFAULT_FAMILY_CAP) -> FiniteFamily:
    """Add every ``B`` with ``C minus V<=0  ⊆  B  ⊆  C`` for some member ``C``."""
    total = sum(2 ** len(_removable(c, family.ordering)) for c in family)
    if total > cap:
        raise FamilyCapExceeded(f"{total} option sets exceed the cap of {cap}")
    out = []
    for c in family:
        drop = _removable(c, family.ordering)
        for r in range(len(drop) + 1):
            for subset in itertools.combinations(drop, r):
                out.append(c - OptionSet(subset))
    return FiniteFamily(tuple(out), family.space, family.ordering)


def su_contains(family: FiniteFamily, options: OptionSet) -> bool:
    """Some member is a subset of ``options``."""
    return any(c.issubset(options) for c in family)


def rs_contains(family: FiniteFamily, options: OptionSet) -> bool:
    """Some member, stripped of its non-positive gambles, is a subset of ``options``."""
    return any(
        (c - OptionSet(_removable(c, family.ordering))).issubset(options) for c in family
    )


def _combination_lp(options: OptionSet, f: Gamble, normalise: bool) -> bool:
    bs = options.gambles
    k = len(bs)
    rows = [tuple(b[x] for b in bs) for x in range(len(f))]
    rhs = list(f.coords)
    if normalise:
        rows.append((_ONE,) * k)
        rhs.append(_ONE)
    lp = LinearProgram((_ZERO,) * k, tuple(rows), (Relation.EQ,) * len(rows), tuple(rhs))
    return lp_solve(lp).status is not Status.INFEASIBLE


def posi_contains(options: OptionSet, f: Gamble) -> bool:
    """``f`` is a non-trivial non-negative combination of members."""
    if not len(options):
        return False
    if len(f) != options.dim:
        raise SpaceMismatch("gamble and option set live on different spaces")
    return _combination_lp(options, f, normalise=f.is_zero())


def chull_contains(options: OptionSet, f: Gamble) -> bool:
    """``f`` is a convex combination of members."""
    if not len(options):
        raise EmptyOptionSetError("the convex hull of the empty set is empty")
    if len(f) != options.dim:
        raise SpaceMismatch("gamble and option set live on different spaces")
    return _combination_lp(options, f, normalise=True)


def rp_contains(family: FiniteFamily, options: OptionSet) -> bool:
    """Some member ``C`` satisfies ``options ⊆ C ⊆ posi(options)``."""
    if not len(options):
        raise EmptyOptionSetError("RP membership needs a non-empty option set")
    return any(
        options.issubset(c) and all(posi_contains(options, g) for g in c - options)
        for c in family
    )


def family_from_json(raw: list, n: int, ordering: Ordering = Ordering.NONNEG) -> FiniteFamily:
    from .model import parse_option_set

    if not isinstance(raw, list):
        raise ValueError("a family must be an array of option sets")
    sets = tuple(parse_option_set(s, n, f"$[{i}]") for i, s in enumerate(raw))
    return FiniteFamily(sets, SpaceSpec.of_size(n), ordering)


__all__ = [
    "DEFAULT_FAMILY_CAP",
    "FamilyCapExceeded",
    "FiniteFamily",
    "chull_contains",
    "family_from_json",
    "k3_combine",
    "posi_contains",
    "rescale",
    "rn_transform",
    "rp_contains",
    "rs_contains",
    "su_contains",
    "translate",
]
