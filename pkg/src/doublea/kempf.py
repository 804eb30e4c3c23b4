"""Monomial bases for the rational normal curve factor.

Restricted to C_0, the x-variables become 1, s_0, ..., s_0^(k-1), so a
pure-x degree-m monomial lands in the class of s_0^j with j = sum (i-1) a_i.
A basis picks one monomial per j in 0..m(k-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fan import RayScan, scan_rays
from .monomials import Monomial, enumerate_monomials


@dataclass(frozen=True)
class RncClassSystem:
    k: int
    m: int
    classes: dict[int, tuple[Monomial, ...]]

    @property
    def class_count(self) -> int:
        return len(self.classes)


def rnc_classes(k: int, m: int) -> RncClassSystem:
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    classes: dict[int, list[Monomial]] = {j: [] for j in range(m * (k - 1) + 1)}
    for mon in enumerate_monomials(k, m, "pure-x"):
        classes[sum(i * e for i, e in enumerate(mon.a))].append(mon)
    return RncClassSystem(k, m, {j: tuple(v) for j, v in classes.items()})


def _x_weight(mon: Monomial, lam: Sequence[int | Fraction]) -> int | Fraction:
    return sum(e * w for e, w in zip(mon.a, lam))


def min_weight_rnc_basis(sys: RncClassSystem, lam: Sequence[int | Fraction]) -> tuple[list[Monomial], int | Fraction]:
    """Per-class minimum of sum a_i lam_i; ties go to the graded-lex first member."""
    if len(lam) != sys.k:
        raise ValueError(f"need {sys.k} weights, got {len(lam)}")
    picks = [min(members, key=lambda mon: _x_weight(mon, lam)) for members in sys.classes.values()]
    return picks, sum(_x_weight(mon, lam) for mon in picks)


def kempf_bound(k: int, m: int, lam: Sequence[int | Fraction]) -> Fraction:
    return m * (m * (k - 1) + 1) * Fraction(sum(lam), k)


def kempf_bound_check(k: int, m: int, lam: Sequence[int | Fraction]) -> dict:
    _, w = min_weight_rnc_basis(rnc_classes(k, m), lam)
    bound = kempf_bound(k, m, lam)
    return {
        "k": k,
        "m": m,
        "lambda": [str(v) for v in lam],
        "min_weight": str(w),
        "bound": str(bound),
        "pass": w <= bound,
    }


def centered_maximum(k: int, m: int) -> RayScan:
    """Exact supremum sign of the minimum basis weight over centered lambda."""
    sys = rnc_classes(k, m)
    classes = [[mon.a for mon in members] for members in sys.classes.values()]
    return scan_rays(classes, k)
