"""Conic feasibility predicates over the positive cone plus finitely many gambles.

Every query here reduces to one or two exact linear programs.  For a
finite generator set ``G`` write ``D_G`` for the set of all non-trivial
combinations ``s + sum(lam_g * g)`` with ``lam >= 0`` and ``s`` in the
background positive cone (or zero).  ``D_G`` is the smallest coherent set of
desirable gambles containing ``G`` whenever it avoids the zero gamble.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .lp import LinearProgram, Relation, Status, lp_solve
from .model import (
    CredalSet,
    EmptyOptionSetError,
    Gamble,
    GambleAssessment,
    OptionSet,
    Ordering,
    SpaceMismatch,
    dominates_background,
    format_rational,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)
LE, GE, EQ = Relation.LE, Relation.GE, Relation.EQ


class Unbounded(enum.Enum):
    """Marker for an infinite supremum (returned, never raised)."""

    UNBOUNDED = "unbounded"

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __str__(self) -> str:
        return "unbounded"


UNBOUNDED = Unbounded.UNBOUNDED
Extended = Union[Fraction, Unbounded]


@dataclass(frozen=True)
class ConeWitness:
    """``target == slack + sum(coefficients[g] * g)`` with every coefficient >= 0."""

    coefficients: tuple[tuple[Gamble, Fraction], ...]
    slack: Gamble

    def combination(self) -> Gamble:
        total = self.slack
        for g, lam in self.coefficients:
            if lam:
                total = total + lam * g
        return total

    def coefficient(self, g: Gamble) -> Fraction:
        return dict(self.coefficients).get(g, _ZERO)

    def to_json(self) -> dict:
        return {
            "lambda": {",".join(g.to_json()): format_rational(lam) for g, lam in self.coefficients},
            "slack": self.slack.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ConeWitness":
        from .model import to_rational

        coeffs = tuple(
            (Gamble(tuple(key.split(","))), to_rational(val))
            for key, val in doc["lambda"].items()
        )
        return cls(coeffs, Gamble(tuple(doc["slack"])))


@dataclass(frozen=True)
class MixWitness:
    """A common point ``sum(mu_b * b)`` of ``posi(B)`` and a generated cone.

    ``mu`` is indexed like the canonical order of ``B`` and sums to one.
    """

    mu: tuple[Fraction, ...]
    cone: ConeWitness

    def point(self, option_set: OptionSet) -> Gamble:
        total = Gamble.zero(len(self.cone.slack))
        for m, b in zip(self.mu, option_set):
            if m:
                total = total + m * b
        return total

    def to_json(self) -> dict:
        doc = {"mu": [format_rational(m) for m in self.mu]}
        doc.update(self.cone.to_json())
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "MixWitness":
        from .model import to_rational

        return cls(tuple(to_rational(m) for m in doc["mu"]), ConeWitness.from_json(doc))


def _slack_ok(s: Gamble, ordering: Ordering) -> bool:
    return s.is_zero() or dominates_background(s, ordering)


def check_cone_witness(
    generators: Iterable[Gamble],
    target: Gamble,
    witness: ConeWitness,
    ordering: Ordering = Ordering.NONNEG,
) -> bool:
    """Re-verify a membership witness with exact arithmetic only."""
    gens = set(generators)
    if len(witness.slack) != len(target):
        return False
    for g, lam in witness.coefficients:
        if g not in gens or lam < 0 or len(g) != len(target):
            return False
    if not _slack_ok(witness.slack, ordering):
        return False
    if witness.slack.is_zero() and not any(lam for _, lam in witness.coefficients):
        return False
    return witness.combination() == target


def check_mix_witness(
    option_set: OptionSet,
    generators: Iterable[Gamble],
    witness: MixWitness,
    ordering: Ordering = Ordering.NONNEG,
) -> bool:
    if len(witness.mu) != len(option_set) or any(m < 0 for m in witness.mu):
        return False
    if sum(witness.mu) != 1:
        return False
    return check_cone_witness(generators, witness.point(option_set), witness.cone, ordering)


def _gens(generators: Union[GambleAssessment, Iterable[Gamble]]) -> tuple[Gamble, ...]:
    if isinstance(generators, GambleAssessment):
        return generators.gambles
    return tuple(sorted(set(generators)))


def _check_dim(gens: Sequence[Gamble], f: Gamble, n: Optional[int] = None) -> None:
    if n is not None and len(f) != n:
        raise SpaceMismatch(f"gamble of length {len(f)} on a space of size {n}")
    for g in gens:
        if len(g) != len(f):
            raise SpaceMismatch(f"generator of length {len(g)}, target of length {len(f)}")


def _witness(gens: Sequence[Gamble], lam: Sequence[Fraction], target: Gamble) -> ConeWitness:
    partial = Gamble.zero(len(target))
    for g, c in zip(gens, lam):
        if c:
            partial = partial + c * g
    return ConeWitness(tuple(zip(gens, lam)), target - partial)


@lru_cache(maxsize=1 << 16)
def _member(gens: tuple[Gamble, ...], f: Gamble, ordering: Ordering) -> Optional[ConeWitness]:
    n, m = len(f), len(gens)
    if ordering is Ordering.NONNEG:
        # variables: lam (m) then s (n); sum lam g + s = f
        rows = [tuple(g[x] for g in gens) + tuple(_ONE if y == x else _ZERO for y in range(n))
                for x in range(n)]
        rels = [EQ] * n
        rhs = list(f.coords)
        if f.is_zero():
            rows.append((_ONE,) * (m + n))
            rels.append(EQ)
            rhs.append(_ONE)
        out = lp_solve(LinearProgram((_ZERO,) * (m + n), tuple(rows), tuple(rels), tuple(rhs)))
        if out.status is Status.INFEASIBLE:
            return None
        return _witness(gens, out.x[:m], f)

    # strict ordering, zero slack: sum lam g = f, non-trivial
    if m:
        rows = [tuple(g[x] for g in gens) for x in range(n)]
        rels = [EQ] * n
        rhs = list(f.coords)
        if f.is_zero():
            rows.append((_ONE,) * m)
            rels.append(EQ)
            rhs.append(_ONE)
        out = lp_solve(LinearProgram((_ZERO,) * m, tuple(rows), tuple(rels), tuple(rhs)))
        if out.status is not Status.INFEASIBLE:
            return _witness(gens, out.x, f)
    # strict ordering, strictly positive slack: max t s.t. sum lam g + t <= f, t <= 1
    rows = [tuple(g[x] for g in gens) + (_ONE,) for x in range(n)]
    rows.append((_ZERO,) * m + (_ONE,))
    out = lp_solve(
        LinearProgram((_ZERO,) * m + (_ONE,), tuple(rows), (LE,) * (n + 1), tuple(f.coords) + (_ONE,))
    )
    if out.status is Status.OPTIMAL and out.value > 0:
        return _witness(gens, out.x[:m], f)
    return None


def cone_contains(
    generators: Union[GambleAssessment, Iterable[Gamble]],
    f: Gamble,
    ordering: Optional[Ordering] = None,
) -> Optional[ConeWitness]:
    """Decide ``f`` in the cone generated by the positive gambles and ``generators``.

    Returns a :class:`ConeWitness` (truthy) when ``f`` is a member and ``None``
    otherwise.  ``ordering`` defaults to the assessment's own ordering.
    """
    gens = _gens(generators)
    n = generators.dim if isinstance(generators, GambleAssessment) else None
    if ordering is None:
        ordering = generators.ordering if isinstance(generators, GambleAssessment) else Ordering.NONNEG
    _check_dim(gens, f, n)
    return _member(gens, f, ordering)


def inconsistency_witness(
    generators: Union[GambleAssessment, Iterable[Gamble]],
    n: Optional[int] = None,
    ordering: Optional[Ordering] = None,
) -> Optional[ConeWitness]:
    """Witness that the zero gamble lies in the generated cone, if it does."""
    if isinstance(generators, GambleAssessment):
        n = generators.dim
        ordering = ordering or generators.ordering
    gens = _gens(generators)
    if n is None:
        if not gens:
            return None
        n = len(gens[0])
    return _member(gens, Gamble.zero(n), ordering or Ordering.NONNEG)


def cone_consistent(
    generators: Union[GambleAssessment, Iterable[Gamble]],
    n: Optional[int] = None,
    ordering: Optional[Ordering] = None,
) -> bool:
    """True iff the zero gamble is outside the generated cone."""
    return inconsistency_witness(generators, n, ordering) is None


def _maximise_with_fallback(lp: LinearProgram, floor_row: tuple[Fraction, ...]) -> Optional[tuple]:
    """Point with positive objective, or None when the optimum is zero.

    On an unbounded program a second feasibility solve with
    ``floor_row . x >= 1`` recovers a concrete point.
    """
    out = lp_solve(lp)
    if out.status is Status.OPTIMAL:
        return out.x if out.value > 0 else None
    if out.status is Status.INFEASIBLE:
        return None
    pinned = LinearProgram(
        (_ZERO,) * lp.n_vars,
        lp.rows + (floor_row,),
        lp.relations + (GE,),
        lp.rhs + (_ONE,),
    )
    return lp_solve(pinned).x


def posi_meets_cone(
    option_set: OptionSet,
    generators: Union[GambleAssessment, Iterable[Gamble]],
    ordering: Optional[Ordering] = None,
) -> Optional[MixWitness]:
    """Decide whether ``posi(option_set)`` meets the generated cone.

    The common point is returned as ``sum(mu_b * b)`` with ``mu`` summing to
    one, together with its cone decomposition.  ``generators`` should be
    consistent; an inconsistent cone contains zero and the answer is
    meaningless.
    """
    if not len(option_set):
        raise EmptyOptionSetError("posi of the empty option set is empty")
    gens = _gens(generators)
    if ordering is None:
        ordering = generators.ordering if isinstance(generators, GambleAssessment) else Ordering.NONNEG
    bs = option_set.gambles
    n, k, m = len(bs[0]), len(bs), len(gens)
    _check_dim(gens, bs[0], generators.dim if isinstance(generators, GambleAssessment) else None)

    def done(x) -> MixWitness:
        mu = tuple(x[:k])
        point = Gamble.zero(n)
        for c, b in zip(mu, bs):
            if c:
                point = point + c * b
        return MixWitness(mu, _witness(gens, x[k:k + m], point))

    norm = (_ONE,) * k
    if ordering is Ordering.NONNEG:
        # variables mu (k), lam (m), s (n): sum mu b - sum lam g - s = 0
        rows = [
            tuple(b[x] for b in bs) + tuple(-g[x] for g in gens)
            + tuple(-_ONE if y == x else _ZERO for y in range(n))
            for x in range(n)
        ]
        rows.append(norm + (_ZERO,) * (m + n))
        obj = (_ZERO,) * k + (_ONE,) * (m + n)
        lp = LinearProgram(obj, tuple(rows), (EQ,) * (n + 1), (_ZERO,) * n + (_ONE,))
        x = _maximise_with_fallback(lp, obj)
        return done(x) if x is not None else None

    # strict ordering, zero slack: sum mu b = sum lam g, maximise sum lam
    if m:
        rows = [tuple(b[x] for b in bs) + tuple(-g[x] for g in gens) for x in range(n)]
        rows.append(norm + (_ZERO,) * m)
        obj = (_ZERO,) * k + (_ONE,) * m
        lp = LinearProgram(obj, tuple(rows), (EQ,) * (n + 1), (_ZERO,) * n + (_ONE,))
        x = _maximise_with_fallback(lp, obj)
        if x is not None:
            return done(x)
    # strictly positive slack: sum mu b - sum lam g - t >= 0, 0 <= t <= 1
    rows = [tuple(b[x] for b in bs) + tuple(-g[x] for g in gens) + (-_ONE,) for x in range(n)]
    rows.append(norm + (_ZERO,) * (m + 1))
    rows.append((_ZERO,) * (k + m) + (_ONE,))
    lp = LinearProgram(
        (_ZERO,) * (k + m) + (_ONE,),
        tuple(rows),
        (GE,) * n + (EQ, LE),
        (_ZERO,) * n + (_ONE, _ONE),
    )
    out = lp_solve(lp)
    if out.status is Status.OPTIMAL and out.value > 0:
        return done(out.x)
    return None


@lru_cache(maxsize=1 << 16)
def _lower_prevision(gens: tuple[Gamble, ...], f: Gamble) -> Fraction:
    n, m = len(f), len(gens)
    # variables mu+, mu-, lam: mu+ - mu- + sum lam g <= f
    rows = tuple((_ONE, -_ONE) + tuple(g[x] for g in gens) for x in range(n))
    obj = (_ONE, -_ONE) + (_ZERO,) * m
    out = lp_solve(LinearProgram(obj, rows, (LE,) * n, f.coords))
    return out.value


def lower_prevision(
    generators: Union[GambleAssessment, Iterable[Gamble]],
    f: Gamble,
    ordering: Optional[Ordering] = None,
) -> Extended:
    """Natural-extension lower prevision ``sup{mu : f - mu in D_G}``.

    >>> G = GambleAssessment.of([(-1, 2)])
    >>> lower_prevision(G, Gamble.of(0, 1))
    Fraction(1, 3)
    """
    gens = _gens(generators)
    n = generators.dim if isinstance(generators, GambleAssessment) else None
    _check_dim(gens, f, n)
    if not cone_consistent(gens, len(f), ordering or getattr(generators, "ordering", None)):
        return UNBOUNDED
    return _lower_prevision(gens, f)


def credal_minimax(credal: CredalSet, option_set: OptionSet) -> Fraction:
    """``min`` over the convex hull of ``max_b P(b)``; attained by compactness."""
    if not len(option_set):
        raise EmptyOptionSetError("the empty option set is never desirable")
    if option_set.dim != credal.dim:
        raise SpaceMismatch("option set and credal set live on different spaces")
    verts = credal.vertices
    k = len(verts)
    # variables w (k), t+, t-: sum w_i P_i(b) - t <= 0; sum w = 1; maximise -t
    rows = [tuple(b.dot(v) for v in verts) + (-_ONE, _ONE) for b in option_set]
    rows.append((_ONE,) * k + (_ZERO, _ZERO))
    rels = (LE,) * len(option_set) + (EQ,)
    rhs = (_ZERO,) * len(option_set) + (_ONE,)
    out = lp_solve(LinearProgram((_ZERO,) * k + (-_ONE, _ONE), tuple(rows), rels, rhs))
    return -out.value


def credal_accepts(credal: CredalSet, option_set: OptionSet) -> bool:
    """Every prevision in the hull gives some member a positive expectation."""
    return credal_minimax(credal, option_set) > 0


def clear_caches() -> None:
    _member.cache_clear()
    _lower_prevision.cache_clear()
