"""Closed-form calculators: bielliptic destabilization and GIT polarization slopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

NONSEMISTABLE = "NONSEMISTABLE"
UNDETERMINED = "UNDETERMINED-BY-THIS-BOUND"


def _check(g: int, m: int, gmin: int = 3, mmin: int = 2) -> None:
    if g < gmin:
        raise ValueError(f"need g >= {gmin}, got {g}")
    if m < mmin:
        raise ValueError(f"need m >= {mmin}, got {m}")


def hypersurface_count(g: int, m: int) -> int:
    """Degree-m hypersurfaces of P^(g-2) containing an elliptic normal curve of degree g-1."""
    _check(g, m, mmin=1)
    return comb(g - 2 + m, m) - m * (g - 1)


def bielliptic_weight_bound(g: int, m: int) -> int:
    """Lower bound on the weight of any monomial basis under weights (-1, ..., -1, g-1)."""
    _check(g, m)
    return (g - 1) * ((g + 1) * m - 2 * m * m - g)


def bielliptic_weight_bound_expanded(g: int, m: int) -> int:
    """The same bound before simplification: (m-1)(g-1) sections of weight >= g-m, m(g-1) of weight -m."""
    _check(g, m)
    return (m - 1) * (g - 1) * (g - m) - m * (m * (g - 1))


@dataclass(frozen=True)
class BiellipticVerdict:
    g: int
    m: int
    s_m: int
    weight_bound: int
    verdict: str
    destabilizer: tuple[int, ...]
    in_threshold_range: bool
    note: str

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "m": self.m,
            "s_m": self.s_m,
            "weight_bound": self.weight_bound,
            "verdict": self.verdict,
            "destabilizer": list(self.destabilizer),
            "m_le_(g-3)/2": self.in_threshold_range,
            "note": self.note,
        }


def bielliptic_classify(g: int, m: int) -> BiellipticVerdict:
    """NONSEMISTABLE exactly when the weight bound is positive; otherwise the bound says nothing."""
    bound = bielliptic_weight_bound(g, m)
    in_range = 2 * m <= g - 3
    if bound > 0:
        verdict, note = NONSEMISTABLE, "positive lower bound on every monomial basis"
    else:
        verdict = UNDETERMINED
        if g % 2 == 1 and 2 * m >= g - 1:
            note = f"m >= (g-1)/2 = {(g - 1) // 2}: generic bielliptic curve expected semistable (not certified here)"
        else:
            note = "bound is non-positive"
    return BiellipticVerdict(
        g, m, hypersurface_count(g, m), bound, verdict, (-1,) * (g - 1) + (g - 1,), in_range, note
    )


def polarization_pair(g: int, m: int) -> tuple[int, Fraction]:
    """Coefficients (of lambda, of -delta) before normalizing delta to 1."""
    _check(g, m, gmin=2)
    return m * (m - 1) * (4 * g + 2) - (m - 1) * (g - 1) + 1, Fraction(g * m * (m - 1), 2)


def polarization_slope(g: int, m: int) -> Fraction:
    _check(g, m, gmin=2)
    slope = 8 + Fraction(4, g) - Fraction(2 * (g - 1), g * m) + Fraction(2, g * m * (m - 1))
    lam, delta = polarization_pair(g, m)
    assert lam / delta == slope
    return slope


def trigonal_max_slope(g: int) -> Fraction:
    return Fraction(36 * (g + 1), 5 * g + 1)


def trigonal_comparison(g: int) -> dict:
    """Max trigonal family slope against the m = 3 polarization slope."""
    if g < 3:
        raise ValueError(f"need g >= 3, got {g}")
    tri, pol = trigonal_max_slope(g), polarization_slope(g, 3)
    holds = tri <= pol
    factor = (g - 3) * (2 * g - 5)
    assert holds == (factor >= 0)
    return {
        "g": g,
        "trigonal_max_slope": f"{tri.numerator}/{tri.denominator}",
        "slope_m3": f"{pol.numerator}/{pol.denominator}",
        "trigonal_le_slope": holds,
        "(g-3)(2g-5)": factor,
        "boundary": tri == pol,
    }


def table(gs, ms) -> list[dict]:
    rows = []
    for g in gs:
        for m in ms:
            v = bielliptic_classify(g, m)
            slope = polarization_slope(g, m)
            row = v.to_json()
            row["slope"] = f"{slope.numerator}/{slope.denominator}"
            rows.append(row)
    return rows
