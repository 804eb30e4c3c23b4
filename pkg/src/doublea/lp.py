"""Exact feasibility for {x >= 0 : A x = b} by phase-one revised simplex.

All arithmetic is in ``Fraction``.  Entering and leaving variables follow
Bland's rule, so the method terminates.  A list of hint columns (for example
the support of a floating-point solution) may seed the starting basis; the
hint only changes where pivoting starts, never the verdict.

Infeasibility is reported with a Farkas vector y: y.a_j >= 0 for every
column and y.b < 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

log = logging.getLogger(__name__)

Column = dict[int, Fraction]


@dataclass
class Feasibility:
    feasible: bool
    x: dict[int, Fraction] | None
    farkas: list[Fraction] | None
    pivots: int
    warm_start: bool


class _Tableau:
    def __init__(self, columns: Sequence[Column], b: Sequence[Fraction], nrows: int):
        self.n = len(columns)
        self.nrows = nrows
        self.sign = [1 if Fraction(v) >= 0 else -1 for v in b]
        self.cols = [
            {i: Fraction(v) * self.sign[i] for i, v in col.items() if v} for col in columns
        ]
        self.cols += [{i: Fraction(1)} for i in range(nrows)]  # artificials
        self.b = [abs(Fraction(v)) for v in b]
        self.basis = [self.n + i for i in range(nrows)]
        self.binv = [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
        self.xb = list(self.b)
        self.pivots = 0

    def cost(self, j: int) -> int:
        return 1 if j >= self.n else 0

    def direction(self, j: int) -> list[Fraction]:
        col = self.cols[j]
        return [sum((row[i] * v for i, v in col.items()), Fraction(0)) for row in self.binv]

    def pivot(self, r: int, j: int, w: list[Fraction]) -> None:
        piv = w[r]
        row_r = [v / piv for v in self.binv[r]]
        xr = self.xb[r] / piv
        for i in range(self.nrows):
            if i == r or w[i] == 0:
                continue
            f = w[i]
            row = self.binv[i]
            self.binv[i] = [a - f * c for a, c in zip(row, row_r)]
            self.xb[i] -= f * xr
        self.binv[r] = row_r
        self.xb[r] = xr
        self.basis[r] = j
        self.pivots += 1

    def duals(self) -> list[Fraction]:
        pi = [Fraction(0)] * self.nrows
        for r, j in enumerate(self.basis):
            c = self.cost(j)
            if c:
                row = self.binv[r]
                pi = [p + c * v for p, v in zip(pi, row)]
        return pi

    def crash(self, hint: Sequence[int]) -> bool:
        """Pivot hint columns into artificial slots; keep the result only if primal feasible."""
        saved = ([row[:] for row in self.binv], self.xb[:], self.basis[:], self.pivots)
        in_basis = set(self.basis)
        for j in hint:
            if j in in_basis:
                continue
            w = self.direction(j)
            r = next((i for i in range(self.nrows) if self.basis[i] >= self.n and w[i] != 0), None)
            if r is None:
                continue
            in_basis.discard(self.basis[r])
            self.pivot(r, j, w)
            in_basis.add(j)
        if all(v >= 0 for v in self.xb):
            return True
        self.binv, self.xb, self.basis, self.pivots = saved
        return False

    def run(self) -> None:
        while True:
            pi = self.duals()
            basic = set(self.basis)
            entering = None
            for j in range(self.n):
                if j in basic:
                    continue
                d = -sum((pi[i] * v for i, v in self.cols[j].items()), Fraction(0))
                if d < 0:
                    entering = j
                    break
            if entering is None:
                return
            w = self.direction(entering)
            best = None
            for i in range(self.nrows):
                if w[i] > 0:
                    ratio = self.xb[i] / w[i]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ArithmeticError("phase-one objective is unbounded, which cannot happen")
            self.pivot(best[1], entering, w)


def feasible_point(
    columns: Sequence[Column],
    b: Sequence[Fraction | int],
    nrows: int,
    hint: Sequence[int] | None = None,
) -> Feasibility:
    """Decide whether some x >= 0 has sum_j x_j columns[j] == b."""
    tab = _Tableau(columns, [Fraction(v) for v in b], nrows)
    warm = bool(hint) and tab.crash(hint)
    if hint and not warm:
        log.info("hint basis was not primal feasible; starting from the artificial basis")
    tab.run()
    infeas = sum((tab.xb[r] for r, j in enumerate(tab.basis) if j >= tab.n), Fraction(0))
    if infeas == 0:
        x = {j: tab.xb[r] for r, j in enumerate(tab.basis) if j < tab.n and tab.xb[r] != 0}
        return Feasibility(True, x, None, tab.pivots, warm)
    pi = tab.duals()
    farkas = [-p * s for p, s in zip(pi, tab.sign)]
    return Feasibility(False, None, farkas, tab.pivots, warm)
