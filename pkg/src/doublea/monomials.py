"""Monomials in x_1..x_k, y_1..y_k and the integer statistics attached to them.

Everything here is exact integer arithmetic. A monomial is an immutable pair
of exponent tuples; the graded-lexicographic order used throughout the package
treats x_1 > x_2 > ... > x_k > y_1 > ... > y_k, so ``x1^m`` is the first
monomial of every degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Literal, Sequence

Purity = Literal["pure-x", "pure-y", "mixed", "all"]

_TOKEN = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Monomial:
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        a, b = tuple(int(e) for e in self.a), tuple(int(e) for e in self.b)
        if len(a) != len(b) or not a:
            raise ValueError("need k >= 1 x-exponents and as many y-exponents")
        if min(a + b) < 0:
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def degree(self) -> int:
        return sum(self.a) + sum(self.b)

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.a + self.b

    @classmethod
    def one(cls, k: int) -> Monomial:
        return cls((0,) * k, (0,) * k)

    @classmethod
    def x(cls, i: int, k: int, e: int = 1) -> Monomial:
        _check_index(i, k)
        a = [0] * k
        a[i - 1] = e
        return cls(tuple(a), (0,) * k)

    @classmethod
    def y(cls, i: int, k: int, e: int = 1) -> Monomial:
        _check_index(i, k)
        b = [0] * k
        b[i - 1] = e
        return cls((0,) * k, tuple(b))

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> Monomial:
        if len(exps) % 2:
            raise ValueError("exponent vector must have even length 2k")
        k = len(exps) // 2
        return cls(tuple(exps[:k]), tuple(exps[k:]))

    @classmethod
    def parse(cls, text: str, k: int) -> Monomial:
        """Parse ``x1^2*y3`` style text; ``1`` is the empty product."""
        text = text.strip().replace(" ", "")
        a, b = [0] * k, [0] * k
        if text == "1":
            return cls(tuple(a), tuple(b))
        for tok in text.split("*"):
            hit = _TOKEN.match(tok)
            if hit is None:
                raise ValueError(f"bad monomial factor {tok!r} in {text!r}")
            var, idx, exp = hit.group(1), int(hit.group(2)), hit.group(3)
            _check_index(idx, k)
            target = a if var == "x" else b
            target[idx - 1] += 1 if exp is None else int(exp)
        return cls(tuple(a), tuple(b))

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.k != self.k:
            raise ValueError(f"cannot multiply monomials with k={self.k} and k={other.k}")
        return Monomial(
            tuple(p + q for p, q in zip(self.a, other.a)),
            tuple(p + q for p, q in zip(self.b, other.b)),
        )

    def __pow__(self, e: int) -> Monomial:
        if e < 0:
            raise ValueError("negative power of a monomial")
        return Monomial(tuple(p * e for p in self.a), tuple(p * e for p in self.b))

    def __str__(self) -> str:
        parts = []
        for name, exps in (("x", self.a), ("y", self.b)):
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    parts.append(f"{name}{i}")
                elif e > 1:
                    parts.append(f"{name}{i}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"

    @property
    def purity(self) -> str:
        """``pure-x``, ``pure-y`` or ``mixed``; the empty monomial counts as pure-x."""
        if sum(self.b) == 0:
            return "pure-x"
        if sum(self.a) == 0:
            return "pure-y"
        return "mixed"

    @property
    def is_mixed(self) -> bool:
        return sum(self.a) >= 1 and sum(self.b) >= 1


def _check_index(i: int, k: int) -> None:
    if not 1 <= i <= k:
        raise ValueError(f"variable index {i} outside 1..{k}")


def grlex_key(mon: Monomial) -> tuple:
    return (mon.degree, tuple(-e for e in mon.exponents))


@dataclass(frozen=True)
class RhoWeights:
    """Diagonal one-parameter subgroup: weight ``lam[i]`` on x_{i+1}, ``nu[i]`` on y_{i+1}."""

    lam: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self):
        lam, nu = tuple(int(v) for v in self.lam), tuple(int(v) for v in self.nu)
        if len(lam) != len(nu) or not lam:
            raise ValueError("lambda and nu must both have length k >= 1")
        if sum(lam) + sum(nu) != 0:
            raise ValueError(f"weights must have trace zero, got trace {sum(lam) + sum(nu)}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "nu", nu)

    @property
    def k(self) -> int:
        return len(self.lam)

    @property
    def vector(self) -> tuple[int, ...]:
        return self.lam + self.nu

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> RhoWeights:
        if len(vec) % 2:
            raise ValueError(f"weight vector must have length 2k, got {len(vec)}")
        k = len(vec) // 2
        return cls(tuple(vec[:k]), tuple(vec[k:]))

    @classmethod
    def zero(cls, k: int) -> RhoWeights:
        return cls((0,) * k, (0,) * k)

    def swap(self) -> RhoWeights:
        return RhoWeights(self.nu, self.lam)

    @property
    def top_sum(self) -> int:
        """lambda_k + nu_k, the quantity the family dispatch keys on."""
        return self.lam[-1] + self.nu[-1]


def weighted_degree(mon: Monomial) -> int:
    """Grading with deg x_i = i and deg y_i = -i."""
    return sum(i * (p - q) for i, (p, q) in enumerate(zip(mon.a, mon.b), start=1))


def rho_weight(mon: Monomial, r: RhoWeights | Sequence[int]) -> int:
    vec = r.vector if isinstance(r, RhoWeights) else tuple(r)
    if len(vec) != 2 * mon.k:
        raise ValueError(f"weights of length {len(vec)} do not match k={mon.k}")
    return sum(e * w for e, w in zip(mon.exponents, vec))


def multiset_weight(mons: Iterable[Monomial], r: RhoWeights | Sequence[int]) -> int:
    return sum(rho_weight(mon, r) for mon in mons)


def involution(mon: Monomial) -> Monomial:
    """Exchange x_i and y_i."""
    return Monomial(mon.b, mon.a)


def enumerate_monomials(k: int, m: int, purity: Purity = "all") -> list[Monomial]:
    """All degree-m monomials of the requested purity, in graded-lex order."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    if purity not in ("pure-x", "pure-y", "mixed", "all"):
        raise ValueError(f"unknown purity {purity!r}")
    if purity == "pure-x":
        variables = range(k)
    elif purity == "pure-y":
        variables = range(k, 2 * k)
    else:
        variables = range(2 * k)
    out = []
    for combo in combinations_with_replacement(variables, m):
        exps = [0] * (2 * k)
        for v in combo:
            exps[v] += 1
        mon = Monomial.from_exponents(exps)
        if purity == "mixed" and not mon.is_mixed:
            continue
        out.append(mon)
    return out


def count_monomials(k: int, m: int) -> int:
    return comb(2 * k + m - 1, m)


@dataclass(frozen=True)
class OccurrenceVector:
    count_x: tuple[int, ...]
    count_y: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.count_x)

    @property
    def total(self) -> int:
        return sum(self.count_x) + sum(self.count_y)

    def dot(self, r: RhoWeights | Sequence[int]) -> int:
        vec = r.vector if isinstance(r, RhoWeights) else tuple(r)
        return sum(c * w for c, w in zip(self.count_x + self.count_y, vec))

    def __add__(self, other: OccurrenceVector) -> OccurrenceVector:
        return OccurrenceVector(
            tuple(p + q for p, q in zip(self.count_x, other.count_x)),
            tuple(p + q for p, q in zip(self.count_y, other.count_y)),
        )

    @property
    def is_symmetric(self) -> bool:
        return self.count_x == self.count_y

    def to_json(self) -> dict:
        return {"x": list(self.count_x), "y": list(self.count_y)}


def occurrences(mons: Iterable[Monomial], k: int | None = None) -> OccurrenceVector:
    """Per-variable occurrence totals of a multiset of monomials."""
    cx: list[int] | None = None
    cy: list[int] | None = None
    if k is not None:
        cx, cy = [0] * k, [0] * k
    for mon in mons:
        if cx is None:
            cx, cy = [0] * mon.k, [0] * mon.k
        if mon.k != len(cx):
            raise ValueError("monomials in a multiset must share k")
        for i in range(mon.k):
            cx[i] += mon.a[i]
            cy[i] += mon.b[i]
    if cx is None:
        raise ValueError("k is required for an empty multiset")
    return OccurrenceVector(tuple(cx), tuple(cy))
