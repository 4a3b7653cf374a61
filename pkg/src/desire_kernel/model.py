"""Exact-rational domain types: gambles, option sets, assessments and credal sets.

Every coordinate is a :class:`fractions.Fraction`; nothing in this package
ever rounds.  All containers are immutable and canonically ordered, so two
models that describe the same thing compare (and serialise) identically.

>>> u = Gamble.of("1", "-1")
>>> v = Gamble.of(-1, 1)
>>> print(u + v)
(0, 0)
>>> print(2 * u)
(2, -2)
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class ModelError(ValueError):
    """A model document or value is malformed.

    ``path`` points into the offending JSON document (``$.credal[1]``).
    """

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class SpaceMismatch(ValueError):
    """Two gambles (or a gamble and a model) live on different spaces."""


class EmptyOptionSetError(ValueError):
    """A query needs a non-empty option set and got the empty one."""


def to_rational(value: RationalLike, path: str = "$") -> Fraction:
    """Parse an integer or a ``"p/q"`` string exactly.

    Floats are refused: a float literal has already lost precision.
    """
    if isinstance(value, bool):
        raise ModelError(f"expected a rational, got boolean {value!r}", path)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ModelError(f"not a rational literal: {value!r}", path)
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ModelError(f"zero denominator in {value!r}", path) from None
    raise ModelError(f"expected an integer or 'p/q' string, got {value!r}", path)


def format_rational(q: Fraction) -> str:
    """Lowest-terms ``p/q``; integers print without ``/1``."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Ordering(enum.Enum):
    """Background strict ordering used to define the positive gambles."""

    NONNEG = "nonneg"  # u >= 0 point-wise and u != 0
    STRICT = "strict"  # every coordinate > 0

    @classmethod
    def parse(cls, value: Any, path: str = "$.ordering") -> "Ordering":
        try:
            return cls(value)
        except ValueError:
            raise ModelError(f"unknown ordering variant {value!r}", path) from None


@dataclass(frozen=True)
class SpaceSpec:
    """Ordered, distinct labels of a finite possibility space."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise ModelError("possibility space must be non-empty", "$.space")
        if len(set(atoms)) != len(atoms):
            raise ModelError("possibility space labels must be unique", "$.space")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def of_size(cls, n: int) -> "SpaceSpec":
        return cls(tuple(f"x{i + 1}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True, order=True)
class Gamble:
    """A rational vector; coordinate ``i`` is the payoff in state ``i``."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_rational(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: RationalLike) -> "Gamble":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, n: int) -> "Gamble":
        return cls((Fraction(0),) * n)

    @classmethod
    def constant(cls, value: RationalLike, n: int) -> "Gamble":
        return cls((to_rational(value),) * n)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check(self, other: "Gamble") -> None:
        if len(other.coords) != len(self.coords):
            raise SpaceMismatch(
                f"gambles of length {len(self.coords)} and {len(other.coords)}"
            )

    def __add__(self, other: "Gamble") -> "Gamble":
        if not isinstance(other, Gamble):
            return NotImplemented
        self._check(other)
        return Gamble(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Gamble") -> "Gamble":
        if not isinstance(other, Gamble):
            return NotImplemented
        self._check(other)
        return Gamble(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Gamble":
        return Gamble(tuple(-a for a in self.coords))

    def __rmul__(self, scalar: RationalLike) -> "Gamble":
        lam = to_rational(scalar)
        return Gamble(tuple(lam * a for a in self.coords))

    def shift(self, value: RationalLike) -> "Gamble":
        """Add the constant gamble ``value`` to every coordinate."""
        mu = to_rational(value)
        return Gamble(tuple(a + mu for a in self.coords))

    def dot(self, other: Sequence[Fraction]) -> Fraction:
        if len(other) != len(self.coords):
            raise SpaceMismatch("dot product of vectors of different length")
        return sum((a * b for a, b in zip(self.coords, other)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(c) for c in self.coords) + ")"


def gamble_add(u: Gamble, v: Gamble) -> Gamble:
    return u + v


def gamble_sub(u: Gamble, v: Gamble) -> Gamble:
    return u - v


def gamble_scale(lam: RationalLike, u: Gamble) -> Gamble:
    return lam * u


def dominates_background(u: Gamble, ordering: Ordering = Ordering.NONNEG) -> bool:
    """Decide ``u`` strictly above the zero gamble in the background ordering."""
    if ordering is Ordering.STRICT:
        return all(c > 0 for c in u.coords)
    return all(c >= 0 for c in u.coords) and any(c != 0 for c in u.coords)


def nonpositive_background(u: Gamble, ordering: Ordering = Ordering.NONNEG) -> bool:
    """Decide ``u`` weakly below zero: ``u == 0`` or ``-u`` strictly positive."""
    return u.is_zero() or dominates_background(-u, ordering)


def _as_gamble(g: Union[Gamble, Iterable[RationalLike]]) -> Gamble:
    return g if isinstance(g, Gamble) else Gamble(tuple(g))


@dataclass(frozen=True)
class OptionSet:
    """A finite set of gambles, deduplicated and sorted lexicographically."""

    gambles: tuple[Gamble, ...] = ()

    def __post_init__(self):
        gs = tuple(sorted(set(_as_gamble(g) for g in self.gambles)))
        if gs and len({len(g) for g in gs}) != 1:
            raise SpaceMismatch("option set mixes gambles of different lengths")
        object.__setattr__(self, "gambles", gs)

    @classmethod
    def of(cls, *gambles: Union[Gamble, Iterable[RationalLike]]) -> "OptionSet":
        return cls(tuple(_as_gamble(g) for g in gambles))

    def __len__(self) -> int:
        return len(self.gambles)

    def __iter__(self) -> Iterator[Gamble]:
        return iter(self.gambles)

    def __contains__(self, g: object) -> bool:
        return g in self.gambles

    def __getitem__(self, i: int) -> Gamble:
        return self.gambles[i]

    def __lt__(self, other: "OptionSet") -> bool:
        return self.gambles < other.gambles

    def __or__(self, other: "OptionSet") -> "OptionSet":
        return OptionSet(self.gambles + other.gambles)

    def __sub__(self, other: Union["OptionSet", Gamble]) -> "OptionSet":
        drop = {other} if isinstance(other, Gamble) else set(other.gambles)
        return OptionSet(tuple(g for g in self.gambles if g not in drop))

    def issubset(self, other: "OptionSet") -> bool:
        return set(self.gambles) <= set(other.gambles)

    def with_(self, g: Gamble) -> "OptionSet":
        return OptionSet(self.gambles + (g,))

    def translate(self, u: Gamble) -> "OptionSet":
        return OptionSet(tuple(g - u for g in self.gambles))

    @property
    def dim(self) -> int | None:
        return len(self.gambles[0]) if self.gambles else None

    def to_json(self) -> list[list[str]]:
        return [g.to_json() for g in self.gambles]

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.gambles) + "}"


def _check_on_space(gambles: Iterable[Gamble], space: SpaceSpec, path: str) -> None:
    for i, g in enumerate(gambles):
        if len(g) != len(space):
            raise ModelError(
                f"gamble has {len(g)} coordinates, space has {len(space)}",
                f"{path}[{i}]",
            )


@dataclass(frozen=True)
class GambleAssessment:
    """Finitely many gambles, each asserted desirable."""

    gambles: tuple[Gamble, ...]
    space: SpaceSpec
    ordering: Ordering = Ordering.NONNEG

    def __post_init__(self):
        gs = tuple(sorted(set(_as_gamble(g) for g in self.gambles)))
        _check_on_space(gs, self.space, "$.desirable")
        object.__setattr__(self, "gambles", gs)

    @classmethod
    def of(cls, gambles: Iterable, n: int | None = None, ordering: Ordering = Ordering.NONNEG):
        gs = tuple(_as_gamble(g) for g in gambles)
        if n is None:
            if not gs:
                raise ValueError("cannot infer the space of an empty assessment")
            n = len(gs[0])
        return cls(gs, SpaceSpec.of_size(n), ordering)

    @property
    def dim(self) -> int:
        return len(self.space)

    def __len__(self) -> int:
        return len(self.gambles)

    def __iter__(self) -> Iterator[Gamble]:
        return iter(self.gambles)

    def with_gambles(self, gambles: Iterable[Gamble]) -> "GambleAssessment":
        return GambleAssessment(tuple(gambles), self.space, self.ordering)

    def lift(self) -> "OptionSetAssessment":
        """Singleton-lift: every desirable gamble becomes a one-element option set."""
        return OptionSetAssessment(
            tuple(OptionSet((g,)) for g in self.gambles), self.space, self.ordering
        )


@dataclass(frozen=True)
class OptionSetAssessment:
    """A finite family of option sets, each asserted to hold a desirable gamble."""

    sets: tuple[OptionSet, ...]
    space: SpaceSpec
    ordering: Ordering = Ordering.NONNEG

    def __post_init__(self):
        sets = tuple(sorted(set(self.sets)))
        for i, s in enumerate(sets):
            _check_on_space(s, self.space, f"$.assessment[{i}]")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def of(cls, sets: Iterable, n: int | None = None, ordering: Ordering = Ordering.NONNEG):
        ss = tuple(s if isinstance(s, OptionSet) else OptionSet.of(*s) for s in sets)
        if n is None:
            dims = [s.dim for s in ss if s.dim is not None]
            if not dims:
                raise ValueError("cannot infer the space of an assessment without gambles")
            n = dims[0]
        return cls(ss, SpaceSpec.of_size(n), ordering)

    @property
    def dim(self) -> int:
        return len(self.space)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[OptionSet]:
        return iter(self.sets)

    def with_sets(self, sets: Iterable[OptionSet]) -> "OptionSetAssessment":
        return OptionSetAssessment(tuple(sets), self.space, self.ordering)


@dataclass(frozen=True)
class CredalSet:
    """Probability mass functions whose convex hull is the credal set.

    Vertices are deduplicated and sorted; the order carries no meaning.
    """

    vertices: tuple[tuple[Fraction, ...], ...]
    space: SpaceSpec
    _path: str = field(default="$.credal", compare=False, repr=False)

    def __post_init__(self):
        if not self.vertices:
            raise ModelError("credal set needs at least one vertex", self._path)
        seen: dict[tuple[Fraction, ...], None] = {}
        for i, v in enumerate(self.vertices):
            p = f"{self._path}[{i}]"
            vec = tuple(to_rational(c, f"{p}[{j}]") for j, c in enumerate(v))
            if len(vec) != len(self.space):
                raise ModelError(
                    f"vertex has {len(vec)} coordinates, space has {len(self.space)}", p
                )
            if any(c < 0 for c in vec):
                raise ModelError("vertex has a negative mass", p)
            if sum(vec) != 1:
                raise ModelError("vertex not normalized", p)
            seen.setdefault(vec, None)
        object.__setattr__(self, "vertices", tuple(sorted(seen)))

    @classmethod
    def of(cls, vertices: Iterable[Iterable[RationalLike]]) -> "CredalSet":
        vs = tuple(tuple(to_rational(c) for c in v) for v in vertices)
        if not vs:
            raise ModelError("credal set needs at least one vertex", "$.credal")
        return cls(vs, SpaceSpec.of_size(len(vs[0])))

    @property
    def dim(self) -> int:
        return len(self.space)

    def expectations(self, f: Gamble) -> list[Fraction]:
        """Expectation of ``f`` under every vertex."""
        if len(f) != self.dim:
            raise SpaceMismatch("gamble and credal set live on different spaces")
        return [f.dot(v) for v in self.vertices]

    def lower(self, f: Gamble) -> Fraction:
        """Lower envelope; a linear function attains its minimum at a vertex."""
        return min(self.expectations(f))

    def upper(self, f: Gamble) -> Fraction:
        return max(self.expectations(f))


Model = Union[OptionSetAssessment, GambleAssessment, CredalSet]


def _parse_gamble(raw: Any, n: int, path: str) -> Gamble:
    if not isinstance(raw, list):
        raise ModelError("a gamble must be an array of rationals", path)
    if len(raw) != n:
        raise ModelError(f"gamble length mismatch: expected {n}, got {len(raw)}", path)
    return Gamble(tuple(to_rational(c, f"{path}[{j}]") for j, c in enumerate(raw)))


def parse_gamble(raw: Any, n: int, path: str = "$") -> Gamble:
    """Parse one gamble array (as found in query payloads)."""
    return _parse_gamble(raw, n, path)


def parse_option_set(raw: Any, n: int, path: str = "$") -> OptionSet:
    if not isinstance(raw, list):
        raise ModelError("an option set must be an array of gambles", path)
    return OptionSet(tuple(_parse_gamble(g, n, f"{path}[{i}]") for i, g in enumerate(raw)))


def model_from_dict(doc: Any) -> Model:
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    if "space" not in doc:
        raise ModelError("missing required key 'space'")
    raw_space = doc["space"]
    if not isinstance(raw_space, list) or not all(isinstance(a, str) for a in raw_space):
        raise ModelError("space must be an array of strings", "$.space")
    space = SpaceSpec(tuple(raw_space))
    n = len(space)
    ordering = Ordering.parse(doc.get("ordering", "nonneg"))
    kinds = [k for k in ("assessment", "desirable", "credal") if k in doc]
    if len(kinds) != 1:
        raise ModelError("need exactly one of 'assessment', 'desirable', 'credal'")
    unknown = set(doc) - {"space", "ordering", "assessment", "desirable", "credal"}
    if unknown:
        raise ModelError(f"unknown keys {sorted(unknown)}")
    kind = kinds[0]
    body = doc[kind]
    if not isinstance(body, list):
        raise ModelError(f"'{kind}' must be an array", f"$.{kind}")
    if kind == "assessment":
        sets = tuple(parse_option_set(s, n, f"$.assessment[{i}]") for i, s in enumerate(body))
        return OptionSetAssessment(sets, space, ordering)
    if kind == "desirable":
        gs = tuple(_parse_gamble(g, n, f"$.desirable[{i}]") for i, g in enumerate(body))
        return GambleAssessment(gs, space, ordering)
    verts = []
    for i, v in enumerate(body):
        if not isinstance(v, list):
            raise ModelError("a vertex must be an array of rationals", f"$.credal[{i}]")
        if len(v) != n:
            raise ModelError(
                f"vertex length mismatch: expected {n}, got {len(v)}", f"$.credal[{i}]"
            )
        verts.append(tuple(to_rational(c, f"$.credal[{i}][{j}]") for j, c in enumerate(v)))
    return CredalSet(tuple(verts), space)


def parse_model(text: str) -> Model:
    """Parse and canonicalise a JSON model document.

    >>> m = parse_model('{"space": ["x1"], "assessment": [[["1/2"]]]}')
    >>> print(m.sets[0])
    {(1/2)}
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"malformed JSON: {exc.msg} (line {exc.lineno})") from None
    return model_from_dict(doc)


def model_to_dict(model: Model) -> dict:
    doc: dict[str, Any] = {"space": list(model.space.atoms)}
    if isinstance(model, CredalSet):
        doc["credal"] = [[format_rational(c) for c in v] for v in model.vertices]
        return doc
    doc["ordering"] = model.ordering.value
    if isinstance(model, OptionSetAssessment):
        doc["assessment"] = [s.to_json() for s in model.sets]
    else:
        doc["desirable"] = [g.to_json() for g in model.gambles]
    return doc


def dump_model(model: Model) -> str:
    """Canonical JSON text; ``parse_model(dump_model(m)) == m``."""
    return json.dumps(model_to_dict(model), separators=(",", ":"))
