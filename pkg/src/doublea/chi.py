"""Chi-bases: validity, exact minimum weight, and the non-positive construction.

A chi-basis for (k, m) is a set of 2k(m-1)-1 mixed degree-m monomials whose
weighted degrees hit every integer in [-(k(m-1)-1), k(m-1)-1] exactly once.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

from .families import ChiBasis, family_B, family_S, family_T, s_route, t_route, t1_generators
from .monomials import (
    Monomial,
    OccurrenceVector,
    RhoWeights,
    enumerate_monomials,
    involution,
    multiset_weight,
    occurrences,
    rho_weight,
    weighted_degree,
)

log = logging.getLogger(__name__)


class TheoremViolation(AssertionError):
    """An exact computation contradicted a statement the construction relies on."""


def chi_size(k: int, m: int) -> int:
    return 2 * k * (m - 1) - 1


def chi_degrees(k: int, m: int) -> range:
    top = k * (m - 1) - 1
    return range(top, -top - 1, -1)


@dataclass
class ChiValidity:
    k: int
    m: int
    cardinality: int
    expected_cardinality: int
    not_mixed: list[str] = field(default_factory=list)
    wrong_degree: list[str] = field(default_factory=list)
    duplicate_monomials: list[str] = field(default_factory=list)
    missing_degrees: list[int] = field(default_factory=list)
    repeated_degrees: list[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            self.cardinality == self.expected_cardinality
            and not self.not_mixed
            and not self.wrong_degree
            and not self.duplicate_monomials
            and not self.missing_degrees
            and not self.repeated_degrees
        )

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "cardinality": self.cardinality,
            "expected_cardinality": self.expected_cardinality,
            "not_mixed": self.not_mixed,
            "wrong_degree": self.wrong_degree,
            "duplicate_monomials": self.duplicate_monomials,
            "missing_degrees": self.missing_degrees,
            "repeated_degrees": self.repeated_degrees,
        }


def is_chi_basis(candidate: Iterable[Monomial], k: int, m: int) -> ChiValidity:
    """Diagnose a candidate list; duplicates count toward the cardinality."""
    mons = list(candidate)
    report = ChiValidity(k, m, len(mons), chi_size(k, m))
    dup = Counter(mons)
    report.duplicate_monomials = sorted(str(mon) for mon, n in dup.items() if n > 1)
    for mon in mons:
        if mon.k != k:
            raise ValueError(f"{mon} has k={mon.k}, expected {k}")
        if mon.degree != m:
            report.wrong_degree.append(str(mon))
        if not mon.is_mixed:
            report.not_mixed.append(str(mon))
    degs = Counter(weighted_degree(mon) for mon in set(mons))
    target = set(chi_degrees(k, m))
    report.missing_degrees = sorted(target - set(degs))
    report.repeated_degrees = sorted(d for d, n in degs.items() if n > 1 or d not in target)
    return report


@dataclass
class FamilyReport:
    family: str
    k: int
    m: int
    s: int | None
    monomials: list[str]
    valid: bool
    occurrence: OccurrenceVector
    weight_decomposition: dict | None
    repairs: list[dict]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "m": self.m,
            "s": self.s,
            "valid": self.valid,
            "monomials": self.monomials,
            "occurrence": self.occurrence.to_json(),
            "weight_decomposition": self.weight_decomposition,
            "repairs": self.repairs,
        }


def weight_decomposition(occ: OccurrenceVector) -> dict | None:
    """Write the weight as c_k (lam_k + nu_k) + c_rest sum_{i<k} (lam_i + nu_i), if possible.

    Needs count(x_i) = count(y_i) for all i and a common count below k.
    ``multiple`` is c_k - c_rest, the coefficient of lam_k + nu_k once the
    trace-zero relation is used.
    """
    if not occ.is_symmetric:
        return None
    rest = set(occ.count_x[:-1])
    if len(rest) > 1:
        return None
    c_rest = rest.pop() if rest else 0
    c_k = occ.count_x[-1]
    return {"c_k": c_k, "c_rest": c_rest, "multiple": c_k - c_rest}


def family_report(basis: ChiBasis) -> FamilyReport:
    occ = occurrences(basis.mons, basis.k)
    return FamilyReport(
        family=basis.family,
        k=basis.k,
        m=basis.m,
        s=basis.s,
        monomials=[str(mon) for mon in basis.mons],
        valid=is_chi_basis(basis.mons, basis.k, basis.m).valid,
        occurrence=occ,
        weight_decomposition=weight_decomposition(occ),
        repairs=list(basis.repairs),
    )


def union_report(name: str, bases: list[ChiBasis]) -> FamilyReport:
    k, m = bases[0].k, bases[0].m
    occ = occurrences([mon for b in bases for mon in b.mons], k)
    repairs = [dict(r) for r in bases[0].repairs]
    return FamilyReport(
        family=name,
        k=k,
        m=m,
        s=None,
        monomials=[],
        valid=all(is_chi_basis(b.mons, k, m).valid for b in bases),
        occurrence=occ,
        weight_decomposition=weight_decomposition(occ),
        repairs=repairs,
    )


@lru_cache(maxsize=None)
def _mixed_by_degree(k: int, m: int) -> dict[int, tuple[Monomial, ...]]:
    groups: dict[int, list[Monomial]] = {d: [] for d in chi_degrees(k, m)}
    for mon in enumerate_monomials(k, m, "mixed"):
        groups[weighted_degree(mon)].append(mon)
    return {d: tuple(v) for d, v in groups.items()}


def min_weight_chi_basis(k: int, m: int, r: RhoWeights) -> tuple[ChiBasis, int]:
    """Exact minimum-weight chi-basis; each degree is chosen independently, ties to graded-lex first."""
    if r.k != k:
        raise ValueError(f"weights have k={r.k}, expected {k}")
    picks = []
    total = 0
    for d, members in _mixed_by_degree(k, m).items():
        best = min(members, key=lambda mon: rho_weight(mon, r))  # min keeps the first of equals
        picks.append(best)
        total += rho_weight(best, r)
    return ChiBasis(k, m, tuple(picks), family="min-weight"), total


@dataclass
class ChiChoice:
    basis: ChiBasis
    weight: int
    route: str


def nonpositive_chi_basis(k: int, m: int, r: RhoWeights) -> ChiChoice:
    """A chi-basis of weight <= 0 built from the explicit families.

    m = 2 dispatches on the sign of lam_k + nu_k.  For m >= 3 the route whose
    summed weight is a non-positive multiple of lam_k + nu_k is tried first,
    then the other one, then the exact minimum.
    """
    if r.k != k:
        raise ValueError(f"weights have k={r.k}, expected {k}")
    if m < 2:
        raise ValueError("need m >= 2")
    top = r.top_sum
    if m == 2:
        basis = family_B(k, 1 if top >= 0 else 2)
        choice = ChiChoice(basis, multiset_weight(basis.mons, r), f"m=2 dispatch {basis.family}")
    else:
        routes = [("T", t_route(k, m)), ("S", s_route(k, m))]
        if top > 0:
            routes.reverse()
        choice = None
        for name, bases in routes:
            weights = [multiset_weight(b.mons, r) for b in bases]
            w = min(weights)
            if w <= 0:
                choice = ChiChoice(bases[weights.index(w)], w, f"{name}-route")
                break
        if choice is None:
            basis, w = min_weight_chi_basis(k, m, r)
            log.warning("families gave no non-positive basis at %s; using exact minimum", r)
            choice = ChiChoice(basis, w, "exact-minimum")
    if choice.weight > 0:
        raise TheoremViolation(f"no chi-basis of non-positive weight for k={k}, m={m}, rho={r}")
    return choice


def family_sign_identity(k: int, m: int) -> tuple[FamilyReport, FamilyReport]:
    """Combined occurrence vectors of the T-route and S-route unions."""
    if m < 3:
        raise ValueError("the route unions need m >= 3")
    return union_report("T-route", t_route(k, m)), union_report("S-route", s_route(k, m))


def t1_missing_degrees(k: int, m: int) -> list[int]:
    present = {weighted_degree(mon) for mon in t1_generators(k, m)}
    return [d for d in chi_degrees(k, m) if d not in present]


def reference_counts(k: int, m: int) -> dict:
    """Quoted occurrence totals for the route unions next to the computed ones."""
    t, s = family_sign_identity(k, m)
    t1 = occurrences(t1_generators(k, m), k)
    c2 = comb(m, 2)
    if k % 2 == 0:
        quoted_xk = 2 * (k - 1) * (m * m - m) - (k - 1) * (m * m - 2 * m + 2)
    else:
        quoted_xk = 2 * (k - 1) * c2 + 2 * (k - 1) * (m - 2)
    quoted_other = 2 * (k - 1) * (m * m - m) + (m - 2) * (m - 1)
    rows = [
        {
            "claim": "T1 count of x_k",
            "quoted": k * (m - 1) + (2 * k - 1) * comb(m - 1, 2),
            "computed": t1.count_x[-1],
        },
        {"claim": "T1 count of x_i, i<k", "quoted": m - 1, "computed": sorted(set(t1.count_x[:-1]))},
        {"claim": "S-route union count of x_k", "quoted": quoted_xk, "computed": s.occurrence.count_x[-1]},
        {
            "claim": "S-route union count of other variables",
            "quoted": quoted_other,
            "computed": sorted(set(s.occurrence.count_x[:-1] + s.occurrence.count_y[:-1])),
        },
    ]
    for row in rows:
        comp = row["computed"]
        row["match"] = comp == row["quoted"] or comp == [row["quoted"]]
    return {"k": k, "m": m, "parity": "even" if k % 2 == 0 else "odd", "rows": rows}


def mirror(basis: ChiBasis) -> ChiBasis:
    return ChiBasis(basis.k, basis.m, tuple(involution(mon) for mon in basis.mons), family=f"i({basis.family})", s=basis.s)


__all__ = [
    "ChiBasis",
    "ChiChoice",
    "ChiValidity",
    "FamilyReport",
    "TheoremViolation",
    "chi_degrees",
    "chi_size",
    "family_B",
    "family_S",
    "family_T",
    "family_report",
    "family_sign_identity",
    "is_chi_basis",
    "min_weight_chi_basis",
    "mirror",
    "nonpositive_chi_basis",
    "reference_counts",
    "t1_missing_degrees",
    "union_report",
    "weight_decomposition",
]
