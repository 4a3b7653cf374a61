"""Exact two-phase simplex over the rationals.

Programs are stated as::

    maximize    c . x
    subject to  A_i . x  (<= | >= | ==)  b_i     for every row i
                x >= 0

Pivoting follows Bland's rule throughout, so the method terminates on
degenerate problems and, given identical input, always walks the same
sequence of bases.  When phase one proves infeasibility the outcome carries
a Farkas vector ``y`` that :func:`check_farkas` re-verifies independently.

>>> lp = LinearProgram.build([1], [[1]], ["<="], [3])
>>> lp_solve(lp).value
Fraction(3, 1)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .model import RationalLike, to_rational

__all__ = [
    "Relation",
    "Status",
    "LinearProgram",
    "LpOutcome",
    "lp_solve",
    "check_farkas",
    "check_solution",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Relation(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    relations: tuple[Relation, ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.objective)
        if len(self.rows) != len(self.relations) or len(self.rows) != len(self.rhs):
            raise ValueError(
                f"{len(self.rows)} rows, {len(self.relations)} relations, "
                f"{len(self.rhs)} right-hand sides"
            )
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")

    @classmethod
    def build(
        cls,
        objective: Iterable[RationalLike],
        rows: Iterable[Iterable[RationalLike]],
        relations: Iterable,
        rhs: Iterable[RationalLike],
    ) -> "LinearProgram":
        return cls(
            tuple(to_rational(c) for c in objective),
            tuple(tuple(to_rational(a) for a in row) for row in rows),
            tuple(r if isinstance(r, Relation) else Relation(r) for r in relations),
            tuple(to_rational(b) for b in rhs),
        )

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None
    farkas: Optional[tuple[Fraction, ...]] = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


class _Tableau:
    """Dense tableau ``[B^-1 A | B^-1 b]`` with an explicit basis list."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        pv = prow[c]
        if pv != _ONE:
            prow = [a / pv for a in prow]
            self.rows[r] = prow
        nz = [j for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], allowed: int) -> list[Fraction]:
        cb = [cost[b] for b in self.basis]
        out = []
        for j in range(allowed):
            z = _ZERO
            for i, row in enumerate(self.rows):
                if cb[i] and row[j]:
                    z += cb[i] * row[j]
            out.append(cost[j] - z)
        return out

    def run(self, cost: Sequence[Fraction], allowed: int) -> bool:
        """Maximise ``cost`` over columns ``< allowed``; False when unbounded."""
        while True:
            rc = self.reduced_costs(cost, allowed)
            basic = set(self.basis)
            entering = next(
                (j for j in range(allowed) if j not in basic and rc[j] > 0), None
            )
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * row[-1] for b, row in zip(self.basis, self.rows)), _ZERO)


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly; Infeasible and Unbounded are outcomes, not errors."""
    n = lp.n_vars
    m = len(lp.rows)

    # normalise rows so every right-hand side is non-negative
    signs: list[int] = []
    rels: list[Relation] = []
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rel, rhs in zip(lp.rows, lp.relations, lp.rhs):
        if rhs < 0:
            signs.append(-1)
            A.append([-a for a in row])
            b.append(-rhs)
            rels.append({Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(rel, rel))
        else:
            signs.append(1)
            A.append(list(row))
            b.append(rhs)
            rels.append(rel)

    # column layout: structural | slack/surplus | artificial
    n_slack = sum(1 for r in rels if r is not Relation.EQ)
    art_rows = [i for i, r in enumerate(rels) if r is not Relation.LE]
    n_art = len(art_rows)
    first_slack = n
    first_art = n + n_slack
    total = n + n_slack + n_art

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    init_col: list[int] = []  # column holding B^-1 e_i in the final tableau
    s = 0
    a = 0
    for i in range(m):
        row = A[i] + [_ZERO] * (n_slack + n_art) + [b[i]]
        if rels[i] is Relation.LE:
            row[first_slack + s] = _ONE
            basis.append(first_slack + s)
            init_col.append(first_slack + s)
            s += 1
        else:
            if rels[i] is Relation.GE:
                row[first_slack + s] = -_ONE
                s += 1
            row[first_art + a] = _ONE
            basis.append(first_art + a)
            init_col.append(first_art + a)
            a += 1
        rows.append(row)

    tab = _Tableau(rows, basis)

    if n_art:
        phase1 = [_ZERO] * first_art + [-_ONE] * n_art
        tab.run(phase1, total)
        if tab.value(phase1) < 0:
            # pi = c_B B^-1 for the equivalent minimisation of the artificial sum
            cmin = [-c for c in phase1]
            pi = [
                sum((cmin[bi] * tab.rows[k][init_col[i]] for k, bi in enumerate(tab.basis)), _ZERO)
                for i in range(m)
            ]
            y = tuple(-pi[i] * signs[i] for i in range(m))
            return LpOutcome(Status.INFEASIBLE, farkas=y, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= first_art:
                j = next((j for j in range(first_art) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        for k, row in enumerate(tab.rows):
            tab.rows[k] = row[:first_art] + [row[-1]]

    cost = list(lp.objective) + [_ZERO] * n_slack
    if not tab.run(cost, first_art):
        return LpOutcome(Status.UNBOUNDED, pivots=tab.pivots)
    x = [_ZERO] * n
    for bi, row in zip(tab.basis, tab.rows):
        if bi < n:
            x[bi] = row[-1]
    return LpOutcome(Status.OPTIMAL, value=tab.value(cost), x=tuple(x), pivots=tab.pivots)


def _row_dot(row: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((a * v for a, v in zip(row, x)), _ZERO)


def check_solution(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """Exact feasibility of ``x`` for ``lp``."""
    if len(x) != lp.n_vars or any(v < 0 for v in x):
        return False
    for row, rel, rhs in zip(lp.rows, lp.relations, lp.rhs):
        lhs = _row_dot(row, x)
        if rel is Relation.LE and lhs > rhs:
            return False
        if rel is Relation.GE and lhs < rhs:
            return False
        if rel is Relation.EQ and lhs != rhs:
            return False
    return True


def check_farkas(lp: LinearProgram, y: Sequence[Fraction]) -> bool:
    """Verify a certificate of infeasibility.

    ``y`` proves infeasibility when ``y_i >= 0`` on ``<=`` rows, ``y_i <= 0`` on
    ``>=`` rows, ``y^T A >= 0`` column-wise and ``y . b < 0``: any feasible
    ``x >= 0`` would give ``0 <= y^T A x <= y . b < 0``.
    """
    if len(y) != len(lp.rows):
        return False
    for yi, rel in zip(y, lp.relations):
        if rel is Relation.LE and yi < 0:
            return False
        if rel is Relation.GE and yi > 0:
            return False
    for j in range(lp.n_vars):
        if sum((yi * row[j] for yi, row in zip(y, lp.rows)), _ZERO) < 0:
            return False
    return _row_dot(y, lp.rhs) < 0
