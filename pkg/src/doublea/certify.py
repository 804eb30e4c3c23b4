"""Kempf-Morrison semistability of the m-th Hilbert point, decided exactly.

The Hilbert point is semistable for diagonal one-parameter subgroups iff
every trace-zero rho admits a monomial basis (one monomial per pluricanonical
label) of non-positive weight.  Since the minimum basis weight is a sum of
per-class minima, LP duality turns this into a barycenter condition: there
are convex weights u on each class whose exponent vectors add up to the
constant vector t(1, ..., 1), with t = mC/(2k) forced by summing
coordinates.  A feasible u is a finite certificate of semistability; an
infeasibility certificate is a destabilizing rho.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .chi import ChiChoice, TheoremViolation, nonpositive_chi_basis
from .exact import primitive
from .kempf import min_weight_rnc_basis, rnc_classes
from .laurent import PluriLabel, label_of, label_range
from .lp import feasible_point
from .monomials import Monomial, RhoWeights, enumerate_monomials, involution, rho_weight
from .sampling import class_fuzz, default_bound

log = logging.getLogger(__name__)

SEMISTABLE = "SEMISTABLE"
NONSEMISTABLE = "NONSEMISTABLE"


@dataclass(frozen=True)
class ClassSystem:
    k: int
    m: int
    classes: tuple[tuple[PluriLabel, tuple[Monomial, ...]], ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def barycenter_target(self) -> Fraction:
        return Fraction(self.m * self.class_count, 2 * self.k)

    def members(self, label: PluriLabel) -> tuple[Monomial, ...]:
        for lab, members in self.classes:
            if lab == label:
                return members
        raise KeyError(label)


def build_class_system(k: int, m: int) -> ClassSystem:
    """Degree-m monomials grouped by pluricanonical label, members in graded-lex order."""
    if k < 2 or m < 2:
        raise ValueError("need k >= 2 and m >= 2")
    groups: dict[PluriLabel, list[Monomial]] = {lab: [] for lab in label_range(k, m)}
    for mon in enumerate_monomials(k, m):
        groups[label_of(mon)].append(mon)
    empty = [str(lab) for lab, v in groups.items() if not v]
    if empty:
        raise ArithmeticError(f"labels with no monomial: {empty}")
    return ClassSystem(k, m, tuple((lab, tuple(v)) for lab, v in groups.items()))


def toy_class_system(k: int, m: int) -> ClassSystem:
    """A single class {x_1^m}; its barycenter condition fails, so it is destabilized."""
    return ClassSystem(k, m, ((PluriLabel("omega", 0), (Monomial.x(1, k, m),)),))


def min_weight_basis(sys: ClassSystem, r: RhoWeights | Sequence[int]) -> tuple[list[Monomial], int]:
    """Cheapest member of every class (graded-lex first among ties) and the total weight."""
    picks = [min(members, key=lambda mon: rho_weight(mon, r)) for _, members in sys.classes]
    return picks, sum(rho_weight(mon, r) for mon in picks)


@dataclass
class StabilityCertificate:
    k: int
    m: int
    verdict: str
    t: Fraction
    witness: dict[PluriLabel, dict[Monomial, Fraction]] | None = None
    destabilizer: RhoWeights | None = None
    min_weight: int | None = None
    stats: dict | None = None

    def to_json(self) -> dict:
        out: dict = {"k": self.k, "g": 2 * self.k, "m": self.m, "verdict": self.verdict, "t": _q(self.t)}
        if self.witness is not None:
            out["witness"] = {
                str(lab): {str(mon): _q(c) for mon, c in coeffs.items()}
                for lab, coeffs in self.witness.items()
            }
        if self.destabilizer is not None:
            out["destabilizer"] = {
                "lambda": list(self.destabilizer.lam),
                "nu": list(self.destabilizer.nu),
                "min_weight": self.min_weight,
            }
        return out


def _q(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _lp_data(sys: ClassSystem):
    """Columns (one per class member) over rows: class sums, then coordinates 0..2k-2."""
    ncls, dim = sys.class_count, 2 * sys.k
    columns, owners = [], []
    for c, (_, members) in enumerate(sys.classes):
        for mon in members:
            col = {c: Fraction(1)}
            for v, e in enumerate(mon.exponents[: dim - 1]):
                if e:
                    col[ncls + v] = Fraction(e)
            columns.append(col)
            owners.append((c, mon))
    b = [Fraction(1)] * ncls + [sys.barycenter_target] * (dim - 1)
    return columns, b, owners


def _float_hint(columns, b, nrows) -> list[int]:
    """Support of a floating-point solution; only ever used to seed the exact solver."""
    try:
        from scipy.optimize import linprog
        from scipy.sparse import csc_matrix
    except ImportError:  # pragma: no cover
        return []
    data, ri, ci = [], [], []
    for j, col in enumerate(columns):
        for i, v in col.items():
            data.append(float(v))
            ri.append(i)
            ci.append(j)
    a_eq = csc_matrix((data, (ri, ci)), shape=(nrows, len(columns)))
    res = linprog(np.zeros(len(columns)), A_eq=a_eq, b_eq=[float(v) for v in b], bounds=(0, None), method="highs")
    if res.status != 0:
        return []
    return [int(j) for j in np.flatnonzero(res.x > 1e-9)]


def certify(sys: ClassSystem, presolve: bool = True) -> StabilityCertificate:
    """Solve the barycenter LP exactly and return a re-verified certificate."""
    start = time.perf_counter()
    columns, b, owners = _lp_data(sys)
    nrows = len(b)
    hint = _float_hint(columns, b, nrows) if presolve else []
    res = feasible_point(columns, b, nrows, hint)
    stats = {"pivots": res.pivots, "warm_start": res.warm_start, "variables": len(columns), "rows": nrows}
    if res.feasible:
        witness: dict[PluriLabel, dict[Monomial, Fraction]] = {lab: {} for lab, _ in sys.classes}
        for j, val in sorted(res.x.items()):
            c, mon = owners[j]
            witness[sys.classes[c][0]][mon] = val
        cert = StabilityCertificate(sys.k, sys.m, SEMISTABLE, sys.barycenter_target, witness=witness)
    else:
        rho = _destabilizer_from_farkas(sys, res.farkas)
        _, w = min_weight_basis(sys, rho)
        cert = StabilityCertificate(sys.k, sys.m, NONSEMISTABLE, sys.barycenter_target, destabilizer=rho, min_weight=w)
    stats["seconds"] = round(time.perf_counter() - start, 3)
    cert.stats = stats
    if not verify_certificate(cert, sys):
        raise ArithmeticError(f"certificate for k={sys.k}, m={sys.m} failed re-verification")
    return cert


def _destabilizer_from_farkas(sys: ClassSystem, farkas: Sequence[Fraction]) -> RhoWeights:
    """Turn y = (alpha, rho) with alpha_c + <rho, e> >= 0 and sum alpha + t <rho, 1> < 0 into trace-zero integers."""
    ncls, dim = sys.class_count, 2 * sys.k
    rho = list(farkas[ncls:]) + [Fraction(0)]  # the dropped coordinate row carries no multiplier
    mean = sum(rho, Fraction(0)) / dim
    centered = [v - mean for v in rho]
    den = lcm(*(v.denominator for v in centered))
    ints = primitive([v * den for v in centered])
    return RhoWeights.from_vector(ints)


def verify_certificate(cert: StabilityCertificate, sys: ClassSystem) -> bool:
    """Re-check a certificate from the class system alone."""
    if (cert.k, cert.m) != (sys.k, sys.m) or cert.t != sys.barycenter_target:
        return False
    if cert.verdict == SEMISTABLE:
        if cert.witness is None:
            return False
        total = [Fraction(0)] * (2 * sys.k)
        labels = {lab for lab, _ in sys.classes}
        if set(cert.witness) != labels:
            return False
        for lab, members in sys.classes:
            coeffs = cert.witness[lab]
            if any(mon not in members for mon in coeffs):
                return False
            if any(c < 0 for c in coeffs.values()) or sum(coeffs.values(), Fraction(0)) != 1:
                return False
            for mon, c in coeffs.items():
                for v, e in enumerate(mon.exponents):
                    total[v] += c * e
        return all(v == cert.t for v in total)
    if cert.verdict == NONSEMISTABLE:
        rho = cert.destabilizer
        if rho is None or rho.k != sys.k or sum(rho.vector) != 0:
            return False
        _, w = min_weight_basis(sys, rho)
        return w > 0 and w == cert.min_weight
    return False


@dataclass
class ConstructiveBasis:
    omega: list[Monomial]
    eta: list[Monomial]
    chi: ChiChoice
    weight: int

    @property
    def monomials(self) -> list[Monomial]:
        return self.omega + self.eta + list(self.chi.basis.mons)


def constructive_basis(k: int, m: int, r: RhoWeights) -> ConstructiveBasis:
    """Rational-normal-curve minima on the pure parts plus a non-positive chi-basis."""
    if r.k != k:
        raise ValueError(f"weights have k={r.k}, expected {k}")
    rnc = rnc_classes(k, m)
    omega, w_omega = min_weight_rnc_basis(rnc, r.lam)
    eta_x, w_eta = min_weight_rnc_basis(rnc, r.nu)
    eta = [involution(mon) for mon in eta_x]
    chi = nonpositive_chi_basis(k, m, r)
    weight = w_omega + w_eta + chi.weight
    if weight > 0:
        raise TheoremViolation(f"constructive basis has positive weight {weight} at {r}")
    return ConstructiveBasis(omega, eta, chi, weight)


def fuzz(
    sys: ClassSystem,
    trials: int,
    seed: int,
    bound: int | None = None,
    inject: Sequence[RhoWeights] = (),
    jobs: int = 1,
) -> dict:
    """Largest minimum-basis weight over seeded random trace-zero rho (plus any injected ones)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    bound = default_bound(sys.k, sys.m) if bound is None else bound
    classes = [[mon.exponents for mon in members] for _, members in sys.classes]
    found = class_fuzz(classes, sys.k, trials, seed, bound, inject=inject, jobs=jobs)
    return {
        "k": sys.k,
        "m": sys.m,
        "trials": trials,
        "seed": seed,
        "bound": bound,
        "injected": len(inject),
        **found,
        "all_nonpositive": found["max_min_weight"] <= 0,
    }
