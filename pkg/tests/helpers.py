"""Random instance generators and independent oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

import numpy as np
from hypothesis import strategies as st
from scipy.optimize import linprog

from desire_kernel.model import (
    CredalSet,
    Gamble,
    GambleAssessment,
    OptionSet,
    OptionSetAssessment,
    Ordering,
    SpaceSpec,
)

# criterion number -> summary line, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


# -- seeded generators (acceptance corpus) ---------------------------------------


def rand_rational(rng: random.Random, lo: int = -3, hi: int = 3, maxden: int = 4) -> Fraction:
    den = rng.randint(1, maxden)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_gamble(rng: random.Random, n: int, **kw) -> Gamble:
    return Gamble(tuple(rand_rational(rng, **kw) for _ in range(n)))


def rand_option_set(rng: random.Random, n: int, max_size: int = 3) -> OptionSet:
    return OptionSet(tuple(rand_gamble(rng, n) for _ in range(rng.randint(1, max_size))))


def rand_assessment(
    rng: random.Random, n: int, max_sets: int = 3, max_size: int = 3,
    ordering: Ordering = Ordering.NONNEG,
) -> OptionSetAssessment:
    sets = tuple(rand_option_set(rng, n, max_size) for _ in range(rng.randint(0, max_sets)))
    return OptionSetAssessment(sets, SpaceSpec.of_size(n), ordering)


def rand_gamble_assessment(rng: random.Random, n: int, max_gens: int = 5) -> GambleAssessment:
    gs = tuple(rand_gamble(rng, n) for _ in range(rng.randint(0, max_gens)))
    return GambleAssessment(gs, SpaceSpec.of_size(n))


def rand_pmf(rng: random.Random, n: int, maxden: int = 6) -> tuple[Fraction, ...]:
    den = rng.randint(1, maxden)
    cuts = sorted(rng.randint(0, den) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return tuple(Fraction(p, den) for p in parts)


def rand_credal(rng: random.Random, n: int, max_vertices: int = 4) -> CredalSet:
    return CredalSet(tuple(rand_pmf(rng, n) for _ in range(rng.randint(1, max_vertices))),
                     SpaceSpec.of_size(n))


def rand_positive(rng: random.Random, n: int, ordering: Ordering = Ordering.NONNEG) -> Gamble:
    while True:
        lo = 1 if ordering is Ordering.STRICT else 0
        g = Gamble(tuple(Fraction(rng.randint(lo * 4, 12), rng.randint(1, 4)) for _ in range(n)))
        if not g.is_zero():
            return g


# -- hypothesis strategies --------------------------------------------------------

rationals = st.builds(
    lambda p, q: Fraction(p, q), st.integers(-12, 12), st.integers(1, 4)
)


def gambles(n: int):
    return st.tuples(*([rationals] * n)).map(Gamble)


def option_sets(n: int, min_size: int = 1, max_size: int = 3):
    return st.lists(gambles(n), min_size=min_size, max_size=max_size).map(
        lambda gs: OptionSet(tuple(gs))
    )


def assessments(n: int, max_sets: int = 3, max_size: int = 3):
    return st.lists(option_sets(n, 1, max_size), max_size=max_sets).map(
        lambda ss: OptionSetAssessment(tuple(ss), SpaceSpec.of_size(n))
    )


def generator_sets(n: int, max_size: int = 4):
    return st.lists(gambles(n), max_size=max_size).map(lambda gs: tuple(sorted(set(gs))))


def pmfs(n: int):
    return st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any).map(
        lambda ws: tuple(Fraction(w, sum(ws)) for w in ws)
    )


def credal_sets(n: int, max_vertices: int = 3):
    return st.lists(pmfs(n), min_size=1, max_size=max_vertices).map(CredalSet.of)


# -- float oracles (scipy), independent of the exact simplex -----------------------


def _f(xs) -> np.ndarray:
    return np.array([float(x) for x in xs], dtype=float)


def scipy_cone_contains(gens, f: Gamble) -> bool:
    """Non-negative-ordering membership via HiGHS, with a scaled normalisation."""
    n, m = len(f), len(gens)
    G = np.array([_f(g) for g in gens]).reshape(m, n).T if m else np.zeros((n, 0))
    A_eq = np.hstack([G, np.eye(n)])
    b_eq = _f(f)
    if f.is_zero():
        A_eq = np.vstack([A_eq, np.ones(m + n)])
        b_eq = np.append(b_eq, 1.0)
    res = linprog(np.zeros(m + n), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def scipy_lower_prevision(gens, f: Gamble) -> Optional[float]:
    """``max mu`` with ``mu + sum lam g <= f``; None when unbounded."""
    n, m = len(f), len(gens)
    G = np.array([_f(g) for g in gens]).reshape(m, n).T if m else np.zeros((n, 0))
    A_ub = np.hstack([np.ones((n, 1)), G])
    c = np.zeros(m + 1)
    c[0] = -1.0
    bounds = [(None, None)] + [(0, None)] * m
    res = linprog(c, A_ub=A_ub, b_ub=_f(f), bounds=bounds, method="highs")
    if res.status == 3:
        return None
    return -res.fun


def close_rational(x: float, q: Fraction, max_den: int = 10_000) -> bool:
    return Fraction(x).limit_denominator(max_den) == q
