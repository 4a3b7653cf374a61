"""Inference for sets of desirable option sets, with checkable certificates.

An option-set assessment ``A`` is decided through its selections: maps
``phi`` that pick one gamble from every assessed set.  The natural
extension of ``A`` is the intersection over all selections of the binary
models generated by ``phi(A)``, and a selection whose picks are inconsistent
generates no coherent model, so it constrains nothing.  Each query is
therefore a finite batch of cone-membership programs, one batch per
selection.  See ``docs/derivations.md`` for the reductions.

Verdicts carry a certificate:

* ``Entailed``: one branch per selection, each with either a membership
  witness for some member of the queried set or an inconsistency witness
  for the selection itself;
* ``NotEntailed``: a failing selection whose generated cone contains a
  member of every assessed set and no member of the queried set;
* ``Consistent`` / ``Inconsistent``: a consistent selection, or an
  inconsistency witness for every selection.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, TypeVar, Union

from .cones import (
    UNBOUNDED,
    ConeWitness,
    Extended,
    MixWitness,
    check_cone_witness,
    check_mix_witness,
    cone_consistent,
    cone_contains,
    credal_minimax,
    inconsistency_witness,
    lower_prevision,
    posi_meets_cone,
)
from .lp import LinearProgram, Relation, Status, lp_solve
from .model import (
    CredalSet,
    EmptyOptionSetError,
    Gamble,
    OptionSet,
    OptionSetAssessment,
    SpaceMismatch,
    to_rational,
)

DEFAULT_SELECTION_CAP = 10**6

Selection = tuple[int, ...]
T = TypeVar("T")
R = TypeVar("R")


class SelectionCapExceeded(RuntimeError):
    """The product of assessed set sizes exceeds the configured cap."""


class InconsistentAssessmentError(ValueError):
    """The query needs a consistent assessment."""


class NotEntailedError(ValueError):
    """The Archimedean margin is only defined for entailed option sets."""


# -- selections -------------------------------------------------------------


def selection_count(assessment: OptionSetAssessment) -> int:
    return math.prod(len(s) for s in assessment.sets)


def enumerate_selections(
    assessment: OptionSetAssessment, cap: int = DEFAULT_SELECTION_CAP
) -> Iterator[Selection]:
    """All selections, lexicographic in the canonical order of the sets.

    A selection is the tuple of indices picked in each assessed set.
    """
    for i, s in enumerate(assessment.sets):
        if not len(s):
            raise EmptyOptionSetError(f"assessed option set {i} is empty")
    count = selection_count(assessment)
    if count > cap:
        raise SelectionCapExceeded(f"{count} selections exceed the cap of {cap}")
    return itertools.product(*(range(len(s)) for s in assessment.sets))


def selected_gambles(assessment: OptionSetAssessment, selection: Selection) -> tuple[Gamble, ...]:
    """The set ``phi(A)`` of picked gambles, canonically ordered."""
    if len(selection) != len(assessment.sets):
        raise ValueError("selection length does not match the assessment")
    return tuple(sorted({s[i] for s, i in zip(assessment.sets, selection)}))


def _map(fn: Callable[[T], R], items: Iterable[T], executor: Optional[Executor]) -> Iterator[R]:
    # Executor.map yields in submission order, so aggregation stays deterministic
    if executor is None:
        return map(fn, items)
    return executor.map(fn, items)


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class Branch:
    """Evidence for one selection of an entailed query."""

    selection: Selection
    witness: Union[ConeWitness, MixWitness]
    witness_index: Optional[int] = None
    vacuous: bool = False

    def to_json(self) -> dict:
        doc = {
            "selection": list(self.selection),
            "vacuous": self.vacuous,
            "witness_index": self.witness_index,
        }
        doc.update(self.witness.to_json())
        return doc

    @classmethod
    def from_json(cls, doc: dict, mixing: bool) -> "Branch":
        vacuous = bool(doc["vacuous"])
        if mixing and not vacuous:
            witness: Union[ConeWitness, MixWitness] = MixWitness.from_json(doc)
        else:
            witness = ConeWitness.from_json(doc)
        return cls(tuple(doc["selection"]), witness, doc.get("witness_index"), vacuous)


@dataclass(frozen=True)
class Entailed:
    branches: tuple[Branch, ...]
    mixing: bool = False
    kind = "entailed"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mixing": self.mixing,
            "branches": [b.to_json() for b in self.branches],
        }


@dataclass(frozen=True)
class NotEntailed:
    selection: Selection
    generators: tuple[Gamble, ...]
    mixing: bool = False
    kind = "not_entailed"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mixing": self.mixing,
            "selection": list(self.selection),
            "generators": [g.to_json() for g in self.generators],
        }


@dataclass(frozen=True)
class Consistent:
    selection: Selection
    kind = "consistent"

    def to_json(self) -> dict:
        return {"kind": self.kind, "selection": list(self.selection)}


@dataclass(frozen=True)
class Inconsistent:
    branches: tuple[tuple[Selection, ConeWitness], ...] = ()
    empty_set_index: Optional[int] = None
    kind = "inconsistent"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "empty_set_index": self.empty_set_index,
            "branches": [
                dict({"selection": list(sel)}, **w.to_json()) for sel, w in self.branches
            ],
        }


Certificate = Union[Entailed, NotEntailed, Consistent, Inconsistent]


def certificate_from_json(doc: dict) -> Certificate:
    kind = doc.get("kind")
    if kind == "entailed":
        mixing = bool(doc.get("mixing", False))
        return Entailed(tuple(Branch.from_json(b, mixing) for b in doc["branches"]), mixing)
    if kind == "not_entailed":
        return NotEntailed(
            tuple(doc["selection"]),
            tuple(Gamble(tuple(g)) for g in doc["generators"]),
            bool(doc.get("mixing", False)),
        )
    if kind == "consistent":
        return Consistent(tuple(doc["selection"]))
    if kind == "inconsistent":
        return Inconsistent(
            tuple((tuple(b["selection"]), ConeWitness.from_json(b)) for b in doc["branches"]),
            doc.get("empty_set_index"),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass(frozen=True)
class Verdict:
    answer: bool
    certificate: Certificate

    def __bool__(self) -> bool:
        return self.answer


# -- consistency and entailment ----------------------------------------------


def k_consistent(
    assessment: OptionSetAssessment,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> Verdict:
    """Is the assessment extendable to a coherent set of desirable option sets?

    >>> a = OptionSetAssessment.of([[(1, -1)], [(-1, 1)]])
    >>> k_consistent(a).answer
    False
    """
    for i, s in enumerate(assessment.sets):
        if not len(s):
            return Verdict(False, Inconsistent(empty_set_index=i))
    n, order = assessment.dim, assessment.ordering

    def branch(sel: Selection):
        return sel, inconsistency_witness(selected_gambles(assessment, sel), n, order)

    failures = []
    for sel, bad in _map(branch, enumerate_selections(assessment, cap), executor):
        if bad is None:
            return Verdict(True, Consistent(sel))
        failures.append((sel, bad))
    return Verdict(False, Inconsistent(tuple(failures)))


def _check_query(assessment: OptionSetAssessment, option_set: OptionSet) -> None:
    if not len(option_set):
        raise EmptyOptionSetError("the empty option set is never entailed")
    if option_set.dim != assessment.dim:
        raise SpaceMismatch(
            f"option set on {option_set.dim} states, assessment on {assessment.dim}"
        )


def _require_consistent(assessment, cap, executor) -> None:
    if not k_consistent(assessment, cap, executor):
        raise InconsistentAssessmentError("assessment is inconsistent")


def k_entails(
    assessment: OptionSetAssessment,
    option_set: OptionSet,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
    mixing: bool = False,
) -> Verdict:
    """Is ``option_set`` in the natural extension of ``assessment``?

    With ``mixing=True`` the mixing natural extension is used instead: the
    set only needs ``posi(option_set)`` to meet every selection's cone.
    """
    _check_query(assessment, option_set)
    _require_consistent(assessment, cap, executor)
    n, order = assessment.dim, assessment.ordering

    def branch(sel: Selection):
        gens = selected_gambles(assessment, sel)
        bad = inconsistency_witness(gens, n, order)
        if bad is not None:
            return sel, Branch(sel, bad, vacuous=True)
        if mixing:
            w = posi_meets_cone(option_set, gens, order)
            return sel, (Branch(sel, w) if w is not None else None)
        for i, b in enumerate(option_set):
            w = cone_contains(gens, b, order)
            if w is not None:
                return sel, Branch(sel, w, witness_index=i)
        return sel, None

    branches = []
    for sel, br in _map(branch, enumerate_selections(assessment, cap), executor):
        if br is None:
            gens = selected_gambles(assessment, sel)
            return Verdict(False, NotEntailed(sel, gens, mixing))
        branches.append(br)
    return Verdict(True, Entailed(tuple(branches), mixing))


def k_entails_mixing(
    assessment: OptionSetAssessment,
    option_set: OptionSet,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> Verdict:
    """Membership in the mixing natural extension; see :func:`k_entails`."""
    return k_entails(assessment, option_set, cap, executor, mixing=True)


def verify_certificate(
    assessment: OptionSetAssessment,
    option_set: Optional[OptionSet],
    certificate: Certificate,
    cap: int = DEFAULT_SELECTION_CAP,
) -> bool:
    """Re-check a certificate using only cone-membership primitives.

    ``option_set`` is the queried set for entailment certificates and is
    ignored for consistency certificates.
    """
    n, order = assessment.dim, assessment.ordering
    if isinstance(certificate, Consistent):
        if len(certificate.selection) != len(assessment.sets):
            return False
        if any(not 0 <= i < len(s) for i, s in zip(certificate.selection, assessment.sets)):
            return False
        return cone_consistent(selected_gambles(assessment, certificate.selection), n, order)

    if isinstance(certificate, Inconsistent):
        if certificate.empty_set_index is not None:
            i = certificate.empty_set_index
            return 0 <= i < len(assessment.sets) and not len(assessment.sets[i])
        sels = list(enumerate_selections(assessment, cap))
        if [sel for sel, _ in certificate.branches] != sels:
            return False
        zero = Gamble.zero(n)
        return all(
            check_cone_witness(selected_gambles(assessment, sel), zero, w, order)
            for sel, w in certificate.branches
        )

    if option_set is None:
        raise ValueError("entailment certificates need the queried option set")

    if isinstance(certificate, Entailed):
        sels = list(enumerate_selections(assessment, cap))
        if [b.selection for b in certificate.branches] != sels:
            return False
        zero = Gamble.zero(n)
        for br in certificate.branches:
            gens = selected_gambles(assessment, br.selection)
            if br.vacuous:
                ok = isinstance(br.witness, ConeWitness) and check_cone_witness(gens, zero, br.witness, order)
            elif certificate.mixing:
                ok = isinstance(br.witness, MixWitness) and check_mix_witness(option_set, gens, br.witness, order)
            else:
                i = br.witness_index
                ok = (
                    i is not None
                    and 0 <= i < len(option_set)
                    and isinstance(br.witness, ConeWitness)
                    and check_cone_witness(gens, option_set[i], br.witness, order)
                )
            if not ok:
                return False
        return True

    if isinstance(certificate, NotEntailed):
        sel = certificate.selection
        if len(sel) != len(assessment.sets):
            return False
        if any(not 0 <= i < len(s) for i, s in zip(sel, assessment.sets)):
            return False
        gens = selected_gambles(assessment, sel)
        if tuple(sorted(set(certificate.generators))) != gens:
            return False
        if not cone_consistent(gens, n, order):
            return False
        # (i) the separating cone meets every assessed set
        for s in assessment.sets:
            if not any(cone_contains(gens, a, order) for a in s):
                return False
        # (ii) and misses the queried set (or its posi, for mixing)
        if certificate.mixing:
            return posi_meets_cone(option_set, gens, order) is None
        return not any(cone_contains(gens, b, order) for b in option_set)

    raise TypeError(f"not a certificate: {certificate!r}")


# -- choice and rejection ------------------------------------------------------


def reject_set(
    assessment: OptionSetAssessment,
    options: OptionSet,
    mixing: bool = False,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> OptionSet:
    """Options ``u`` with ``options - u`` (zero dropped) in the natural extension."""
    if not len(options):
        raise EmptyOptionSetError("rejection needs a non-empty option set")
    _check_query(assessment, options)
    _require_consistent(assessment, cap, executor)
    rejected = []
    for u in options:
        rest = (options - u).translate(u)
        if len(rest) and k_entails(assessment, rest, cap, executor, mixing):
            rejected.append(u)
    return OptionSet(tuple(rejected))


def choice_set(
    assessment: OptionSetAssessment,
    options: OptionSet,
    mixing: bool = False,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> OptionSet:
    return options - reject_set(assessment, options, mixing, cap, executor)


def e_admissible_choice(credal: CredalSet, options: OptionSet) -> OptionSet:
    """Options that maximise expectation for at least one prevision in the hull."""
    if not len(options):
        raise EmptyOptionSetError("E-admissibility needs a non-empty option set")
    if options.dim != credal.dim:
        raise SpaceMismatch("option set and credal set live on different spaces")
    verts = credal.vertices
    k = len(verts)
    one, zero = Fraction(1), Fraction(0)
    chosen = []
    for u in options:
        rows = [tuple((v - u).dot(p) for p in verts) for v in options if v != u]
        rows.append((one,) * k)
        rels = (Relation.LE,) * (len(rows) - 1) + (Relation.EQ,)
        rhs = (zero,) * (len(rows) - 1) + (one,)
        out = lp_solve(LinearProgram((zero,) * k, tuple(rows), rels, rhs))
        if out.status is not Status.INFEASIBLE:
            chosen.append(u)
    return OptionSet(tuple(chosen))


def credal_reject_set(credal: CredalSet, options: OptionSet) -> OptionSet:
    """Rejection under the credal model: ``options - u`` meets every ``D_P``."""
    out = []
    for u in options:
        rest = (options - u).translate(u)
        if len(rest) and credal_minimax(credal, rest) > 0:
            out.append(u)
    return OptionSet(tuple(out))


# -- Archimedean margin, totality, lower previsions ------------------------------


@dataclass(frozen=True)
class ArchMargin:
    """Supremum of ``eps`` with ``B - eps`` entailed, and whether it is attained."""

    value: Extended
    attained: bool

    @property
    def archimedean(self) -> bool:
        return self.value is UNBOUNDED or self.value > 0


def arch_margin(
    assessment: OptionSetAssessment,
    option_set: OptionSet,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> ArchMargin:
    """Largest uniform shift ``eps`` keeping ``option_set - eps`` entailed.

    Per consistent selection the best shift is the largest lower prevision
    over the members; the margin is the worst selection.
    """
    if not k_entails(assessment, option_set, cap, executor):
        raise NotEntailedError("margin is only defined for entailed option sets")
    n, order = assessment.dim, assessment.ordering

    def branch(sel: Selection):
        gens = selected_gambles(assessment, sel)
        if not cone_consistent(gens, n, order):
            return None
        return gens, [lower_prevision(gens, b, order) for b in option_set]

    live = [r for r in _map(branch, enumerate_selections(assessment, cap), executor) if r]
    if not live:
        return ArchMargin(UNBOUNDED, True)
    value = min(max(vals) for _, vals in live)
    attained = all(
        any(
            cone_contains(gens, b.shift(-value), order) is not None
            for b, v in zip(option_set, vals)
            if v >= value
        )
        for gens, vals in live
    )
    return ArchMargin(value, attained)


def totality_query(
    assessment: OptionSetAssessment,
    u: Gamble,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> Verdict:
    """Is ``{u, -u}`` entailed?"""
    if u.is_zero():
        raise ValueError("totality is only queried for non-zero gambles")
    return k_entails(assessment, OptionSet((u, -u)), cap, executor)


def k_lower_prevision(
    assessment: OptionSetAssessment,
    f: Gamble,
    cap: int = DEFAULT_SELECTION_CAP,
    executor: Optional[Executor] = None,
) -> Extended:
    """``sup{mu : {f - mu} entailed}``: the worst selection's lower prevision."""
    if len(f) != assessment.dim:
        raise SpaceMismatch("gamble and assessment live on different spaces")
    if not k_consistent(assessment, cap, executor):
        return UNBOUNDED
    n, order = assessment.dim, assessment.ordering

    def branch(sel: Selection):
        gens = selected_gambles(assessment, sel)
        return lower_prevision(gens, f, order) if cone_consistent(gens, n, order) else UNBOUNDED

    vals = [v for v in _map(branch, enumerate_selections(assessment, cap), executor) if v is not UNBOUNDED]
    return min(vals) if vals else UNBOUNDED


__all__ = [
    "DEFAULT_SELECTION_CAP",
    "ArchMargin",
    "Branch",
    "Certificate",
    "Consistent",
    "Entailed",
    "Inconsistent",
    "InconsistentAssessmentError",
    "NotEntailed",
    "NotEntailedError",
    "SelectionCapExceeded",
    "Verdict",
    "arch_margin",
    "certificate_from_json",
    "choice_set",
    "credal_reject_set",
    "e_admissible_choice",
    "enumerate_selections",
    "k_consistent",
    "k_entails",
    "k_entails_mixing",
    "k_lower_prevision",
    "reject_set",
    "selected_gambles",
    "selection_count",
    "to_rational",
    "totality_query",
    "verify_certificate",
]
