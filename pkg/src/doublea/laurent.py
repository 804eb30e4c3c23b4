"""Pluricanonical sections of the balanced double A_{2k+1}-curve.

A section of the m-th power of the dualizing sheaf is stored on the
normalization, i.e. as three Laurent polynomials ``(f0, f1, f2)`` standing for
``(f0 (ds_0)^m, f1 (ds_1)^m, f2 (ds_2)^m)`` on the three copies of P^1.  The
curve is glued at (infinity on C_0) ~ (0 on C_1) and at (infinity on C_1) ~
(0 on C_2); the local coordinate at infinity on C_0 is ``t0 = 1/s0`` with
``dt0 = -ds0/s0^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .monomials import Monomial, enumerate_monomials, weighted_degree


class Laurent:
    """Finitely supported Laurent polynomial in one variable with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self._terms = tuple(sorted(clean.items()))

    @classmethod
    def monomial(cls, e: int, c: Fraction | int = 1) -> Laurent:
        return cls({e: c})

    @classmethod
    def zero(cls) -> Laurent:
        return cls()

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self._terms)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: Laurent) -> Laurent:
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self) -> Laurent:
        return Laurent({e: -c for e, c in self._terms})

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def __mul__(self, other: Laurent | Fraction | int) -> Laurent:
        if not isinstance(other, Laurent):
            return Laurent({e: c * other for e, c in self._terms})
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Laurent:
        out = Laurent.monomial(0)
        for _ in range(n):
            out = out * self
        return out

    def ratio_to(self, other: Laurent) -> Fraction | None:
        """The scalar c with ``self == c * other``, or None if not proportional."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        if self.support != other.support:
            return None if not self.is_zero() else Fraction(0)
        e0, c0 = other._terms[0]
        c = self.terms[e0] / c0
        return c if self == other * c else None

    def invert_variable(self) -> Laurent:
        """Substitute s -> 1/s."""
        return Laurent({-e: c for e, c in self._terms})

    def format(self, var: str = "s") -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{var}^{e}" for e, c in self._terms)

    def __repr__(self):
        return f"Laurent({self.format()})"


@dataclass(frozen=True)
class SectionTriple:
    k: int
    m: int
    f0: Laurent
    f1: Laurent
    f2: Laurent

    @property
    def components(self) -> tuple[Laurent, Laurent, Laurent]:
        return (self.f0, self.f1, self.f2)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def __sub__(self, other: SectionTriple) -> SectionTriple:
        _check_compatible(self, other)
        return SectionTriple(self.k, self.m, self.f0 - other.f0, self.f1 - other.f1, self.f2 - other.f2)

    def __mul__(self, other: SectionTriple) -> SectionTriple:
        if other.k != self.k:
            raise ValueError(f"cannot multiply sections with k={self.k} and k={other.k}")
        return SectionTriple(
            self.k, self.m + other.m, self.f0 * other.f0, self.f1 * other.f1, self.f2 * other.f2
        )

    def ratio_to(self, other: SectionTriple) -> Fraction | None:
        """Common scalar c with ``self == c * other`` componentwise, else None."""
        _check_compatible(self, other)
        c = None
        for mine, theirs in zip(self.components, other.components):
            if theirs.is_zero():
                if not mine.is_zero():
                    return None
                continue
            r = mine.ratio_to(theirs)
            if r is None or (c is not None and r != c):
                return None
            c = r
        return c

    def dump(self) -> str:
        return "; ".join(
            f"C{i}: {f.format(f's{i}')}" for i, f in enumerate(self.components)
        )

    def to_json(self) -> dict:
        return {
            f"f{i}": {str(e): f"{c.numerator}/{c.denominator}" for e, c in f.terms.items()}
            for i, f in enumerate(self.components)
        }


def _check_compatible(p: SectionTriple, q: SectionTriple) -> None:
    if (p.k, p.m) != (q.k, q.m):
        raise ValueError(f"incompatible sections (k, m) = {(p.k, p.m)} vs {(q.k, q.m)}")


def _triple(k: int, m: int, f0=None, f1=None, f2=None) -> SectionTriple:
    z = Laurent.zero()
    return SectionTriple(k, m, f0 or z, f1 or z, f2 or z)


@lru_cache(maxsize=None)
def canonical_basis(k: int) -> tuple[SectionTriple, ...]:
    """x_1..x_k then y_1..y_k as sections at twist 1."""
    if k < 2:
        raise ValueError(f"the double A_(2k+1)-curve needs k >= 2, got {k}")
    xs = [_triple(k, 1, Laurent.monomial(i - 1), Laurent.monomial(-(i + 1))) for i in range(1, k + 1)]
    ys = [_triple(k, 1, None, Laurent.monomial(i - 1), Laurent.monomial(-(i + 1))) for i in range(1, k + 1)]
    return tuple(xs + ys)


def basis_names(k: int) -> list[str]:
    return [f"x{i}" for i in range(1, k + 1)] + [f"y{i}" for i in range(1, k + 1)]


def product(sections: Iterable[SectionTriple]) -> SectionTriple:
    sections = list(sections)
    if not sections:
        raise ValueError("empty product of sections")
    out = sections[0]
    for sec in sections[1:]:
        out = out * sec
    return out


def section_of(mon: Monomial) -> SectionTriple:
    """The product of canonical sections named by a monomial."""
    basis = canonical_basis(mon.k)
    factors = [basis[v] for v, e in enumerate(mon.exponents) for _ in range(e)]
    return product(factors)


@dataclass(frozen=True, order=True)
class PluriLabel:
    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}_{self.index}"


def label_range(k: int, m: int) -> list[PluriLabel]:
    top = m * (k - 1)
    chi = k * (m - 1) - 1
    return (
        [PluriLabel("omega", i) for i in range(top + 1)]
        + [PluriLabel("eta", i) for i in range(top + 1)]
        + [PluriLabel("chi", d) for d in range(chi, -chi - 1, -1)]
    )


def representative(label: PluriLabel, k: int, m: int) -> SectionTriple:
    """Fixed normalization of omega_i, eta_i and chi_d at twist m."""
    i = label.index
    if label.kind == "omega":
        if not 0 <= i <= m * (k - 1):
            raise ValueError(f"omega index {i} out of range")
        return _triple(k, m, Laurent.monomial(i), Laurent.monomial(-(2 * m + i)))
    if label.kind == "eta":
        if not 0 <= i <= m * (k - 1):
            raise ValueError(f"eta index {i} out of range")
        return _triple(k, m, None, Laurent.monomial(i), Laurent.monomial(-(2 * m + i)))
    if label.kind == "chi":
        if abs(i) > k * (m - 1) - 1:
            raise ValueError(f"chi index {i} out of range")
        return _triple(k, m, None, Laurent.monomial(-i - m))
    raise ValueError(f"unknown label kind {label.kind!r}")


def label_of(mon: Monomial) -> PluriLabel:
    if mon.degree < 2:
        raise ValueError(f"need a monomial of degree >= 2, got {mon}")
    if sum(mon.b) == 0:
        return PluriLabel("omega", sum(i * e for i, e in enumerate(mon.a)))
    if sum(mon.a) == 0:
        return PluriLabel("eta", sum(i * e for i, e in enumerate(mon.b)))
    return PluriLabel("chi", weighted_degree(mon))


def classify_monomial(mon: Monomial, m: int) -> tuple[PluriLabel, Fraction]:
    """Label of a degree-m monomial and the scalar relating its product to that label's representative."""
    if mon.degree != m:
        raise ValueError(f"{mon} has degree {mon.degree}, expected {m}")
    label = label_of(mon)
    scalar = section_of(mon).ratio_to(representative(label, mon.k, m))
    if not scalar:
        raise ArithmeticError(f"product of {mon} is not a multiple of {label}")
    return label, scalar


@dataclass(frozen=True)
class LabeledSection:
    label: PluriLabel
    section: SectionTriple
    witness: Monomial

    def to_json(self) -> dict:
        return {
            "kind": self.label.kind,
            "index": self.label.index,
            "witness": str(self.witness),
            "components": self.section.to_json(),
        }


def pluricanonical_basis(k: int, m: int) -> list[LabeledSection]:
    """One section per label, each paired with the graded-lex first monomial producing it."""
    if k < 2 or m < 2:
        raise ValueError("need k >= 2 and m >= 2")
    witnesses: dict[PluriLabel, Monomial] = {}
    for mon in enumerate_monomials(k, m):
        witnesses.setdefault(label_of(mon), mon)
    out = []
    for label in label_range(k, m):
        if label not in witnesses:
            raise ArithmeticError(f"no degree-{m} monomial produces {label}")
        out.append(LabeledSection(label, representative(label, k, m), witnesses[label]))
    return out


def extremal_exponent(sec: SectionTriple) -> tuple[int, int]:
    """(component, exponent) of the first nonzero term; distinct across a basis."""
    for i, f in enumerate(sec.components):
        if not f.is_zero():
            return i, f.support[0]
    raise ValueError("zero section has no extremal exponent")


def basis_report(k: int, m: int) -> dict:
    """Dimension, witness and independence checks for the degree-m basis."""
    basis = pluricanonical_basis(k, m)
    witness_ok = all(section_of(ls.witness) == ls.section for ls in basis)
    # eta_i shares its C1 term with some chi_d, so eta is keyed on its C2 term
    keys = [
        (2, ls.section.f2.support[0]) if ls.label.kind == "eta" else extremal_exponent(ls.section)
        for ls in basis
    ]
    lo, hi = -m * (k + 1), m * (k - 1)
    f1_in_range = all(
        not ls.section.f1.support or (lo <= min(ls.section.f1.support) and max(ls.section.f1.support) <= hi)
        for ls in basis
    )
    return {
        "k": k,
        "m": m,
        "dimension": len(basis),
        "expected_dimension": (2 * m - 1) * (2 * k - 1),
        "dimension_ok": len(basis) == (2 * m - 1) * (2 * k - 1),
        "witnesses_ok": witness_ok,
        "independent": len(set(keys)) == len(keys),
        "f1_exponents_in_range": f1_in_range,
    }


def reference_listing_check(k: int, m: int) -> list[dict]:
    """Compare the commonly quoted closed forms of omega_0, omega_1, ... with actual products.

    The quoted omega_1 carries s1^-(2m-1); the product x1^(m-1) x2 gives
    s1^-(2m+1).  Each row records both so the disagreement stays visible.
    """
    quoted = {
        "omega_0": ((0, -2 * m), "omega", 0),
        "omega_1": ((1, -(2 * m - 1)), "omega", 1),
        f"omega_{m * (k - 1)}": ((m * (k - 1), -m * (k + 1)), "omega", m * (k - 1)),
        "eta_0": ((0, -2 * m), "eta", 0),
        "eta_1": ((1, -(2 * m + 1)), "eta", 1),
        f"eta_{m * (k - 1)}": ((m * (k - 1), -m * (k + 1)), "eta", m * (k - 1)),
        f"chi_{-k * (m - 1) + 1}": ((k * (m - 1) - m - 1,), "chi", -k * (m - 1) + 1),
        f"chi_{k * (m - 1) - 1}": ((-(m - 1) * (k + 1),), "chi", k * (m - 1) - 1),
    }
    witnesses = {ls.label: ls.witness for ls in pluricanonical_basis(k, m)}
    rows = []
    for name, (exps, kind, index) in quoted.items():
        if kind == "omega":
            claimed = _triple(k, m, Laurent.monomial(exps[0]), Laurent.monomial(exps[1]))
        elif kind == "eta":
            claimed = _triple(k, m, None, Laurent.monomial(exps[0]), Laurent.monomial(exps[1]))
        else:
            claimed = _triple(k, m, None, Laurent.monomial(exps[0]))
        label = PluriLabel(kind, index)
        actual = section_of(witnesses[label])
        rows.append(
            {
                "label": name,
                "witness": str(witnesses[label]),
                "quoted": claimed.dump(),
                "product": actual.dump(),
                "consistent": claimed == actual,
            }
        )
    return rows


def scroll_matrix(k: int) -> tuple[list[str], list[str]]:
    """Top and bottom rows of the 2 x (2k-2) matrix whose 2x2 minors cut out the scroll."""
    top = [f"x{i}" for i in range(1, k)] + [f"y{i}" for i in range(k, 1, -1)]
    bottom = [f"x{i}" for i in range(2, k + 1)] + [f"y{i}" for i in range(k - 1, 0, -1)]
    return top, bottom


def scroll_minor_check(k: int) -> dict:
    """Every 2x2 minor of the scroll matrix evaluated on the canonical sections.

    For k = 2 the matrix is 2 x 2 and its single minor is still checked.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    names = basis_names(k)
    sec = dict(zip(names, canonical_basis(k)))
    top, bottom = scroll_matrix(k)
    minors = []
    for i, j in combinations(range(len(top)), 2):
        expr = f"{top[i]}*{bottom[j]} - {top[j]}*{bottom[i]}"
        diff = sec[top[i]] * sec[bottom[j]] - sec[top[j]] * sec[bottom[i]]
        minors.append({"columns": [i, j], "minor": expr, "pass": diff.is_zero()})
    return {
        "k": k,
        "minor_count": len(minors),
        "expected_count": (2 * k - 2) * (2 * k - 3) // 2,
        "minors": minors,
        "pass": all(row["pass"] for row in minors),
    }


def to_infinity_chart(f: Laurent, m: int) -> Laurent:
    """Rewrite f(s) (ds)^m in the coordinate t = 1/s; returns g with f (ds)^m = g (dt)^m."""
    return f.invert_variable() * Laurent.monomial(-2 * m, (-1) ** m)


def _chart(sec: SectionTriple) -> tuple[Laurent, Laurent]:
    """Restriction to the chart (C_0 minus 0) u (C_1 minus infinity), C_0 in the t0 coordinate."""
    return to_infinity_chart(sec.f0, sec.m), sec.f1


def cotangent_span_check(k: int) -> dict:
    """Local identities at the singularity joining t0 = 0 and s1 = 0.

    Functions on the chart are pairs (g(t0), h(s1)); sections are compared
    only on the components meeting the chart.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    basis = dict(zip(basis_names(k), canonical_basis(k)))
    xk = _chart(basis[f"x{k}"])
    xk1 = _chart(basis[f"x{k - 1}"])
    y1 = _chart(basis["y1"])
    fn_x = (Laurent.monomial(1), Laurent.monomial(1))  # (t0, s1)
    fn_y = (Laurent.monomial(k + 1), Laurent.monomial(k + 1, -1))  # (t0^(k+1), -s1^(k+1))
    fn_e = (Laurent.zero(), Laurent.monomial(k + 1))  # (0, s1^(k+1))

    def times(fn, sec):
        return (fn[0] * sec[0], fn[1] * sec[1])

    half = Fraction(1, 2)
    combo = ((fn_x[0] ** (k + 1) - fn_y[0]) * half, (fn_x[1] ** (k + 1) - fn_y[1]) * half)
    identities = [
        {"identity": f"y1 = (0, s1^{k + 1}) * x{k}", "pass": times(fn_e, xk) == y1},
        {"identity": f"x{k - 1} = (t0, s1) * x{k}", "pass": times(fn_x, xk) == xk1},
        {"identity": f"(0, s1^{k + 1}) = (x^{k + 1} - y)/2", "pass": combo == fn_e},
        {"identity": f"x{k} = (-dt0/t0^{k + 1}, ds1/s1^{k + 1})",
         "pass": xk == (Laurent.monomial(-(k + 1), -1), Laurent.monomial(-(k + 1)))},
    ]
    return {"k": k, "identities": identities, "pass": all(row["pass"] for row in identities)}


def torus_weights(k: int) -> tuple[tuple[int, ...], bool]:
    """Torus characters on x_1..x_k, y_1..y_k and whether they are pairwise distinct."""
    if k < 2:
        raise ValueError("need k >= 2")
    weights = tuple(range(1, k + 1)) + tuple(-i for i in range(1, k + 1))
    distinct = len(set(weights)) == len(weights)
    assert distinct
    return weights, distinct
