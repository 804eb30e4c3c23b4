"""Explicit chi-basis families.

``B1``/``B2`` cover m = 2.  For m >= 3 there are two routes: the T-route
(T_1 together with T_2(s) or its mirror) maximizes occurrences of x_k, y_k,
and the S-route (S_1, its mirror, and S_2(s) or its mirror) minimizes them.
S_1 has an even-k and an odd-k shape.

The odd-k S_1 listing as usually quoted has a garbled second row of its
lower block; ``literal=True`` reproduces that text so the repair stays
testable, while the default returns the corrected row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monomials import Monomial, involution


def _x(i: int, k: int, e: int = 1) -> Monomial:
    return Monomial.x(i, k, e)


def _y(i: int, k: int, e: int = 1) -> Monomial:
    return Monomial.y(i, k, e)


def _prod(k: int, *factors: Monomial) -> Monomial:
    out = Monomial.one(k)
    for f in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class ChiBasis:
    k: int
    m: int
    mons: tuple[Monomial, ...]
    family: str = "custom"
    s: int | None = None
    repairs: tuple[dict, ...] = field(default=(), compare=False)

    def __iter__(self):
        return iter(self.mons)

    def __len__(self):
        return len(self.mons)


def _check_km(k: int, m: int | None = None, s: int | None = None) -> None:
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if m is not None and m < 3:
        raise ValueError(f"this family needs m >= 3, got {m}")
    if s is not None and not 1 <= s <= k - 1:
        raise ValueError(f"s must lie in 1..{k - 1}, got {s}")


def family_B(k: int, variant: int) -> ChiBasis:
    """The two m = 2 bases: a zig-zag (variant 1) and an x_k/y_k hook (variant 2)."""
    _check_km(k)
    if variant == 1:
        mons = []
        for i in range(k, 0, -1):
            mons.append(_prod(k, _x(i, k), _y(k + 1 - i, k)))
            if i > 1:
                mons.append(_prod(k, _x(i - 1, k), _y(k + 1 - i, k)))
    elif variant == 2:
        mons = [_prod(k, _x(k, k), _y(j, k)) for j in range(1, k + 1)]
        mons += [_prod(k, _x(i, k), _y(k, k)) for i in range(k - 1, 0, -1)]
    else:
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    return ChiBasis(k, 2, tuple(mons), family=f"B{variant}")


def t1_generators(k: int, m: int) -> list[Monomial]:
    """Degree-m monomials of x_k^(m-1)(y) + sum_j x_k^(m-1-j) y_k^j (y, x_<k) + y_k^(m-1)(x_<k)."""
    _check_km(k, m)
    ys = [_y(j, k) for j in range(1, k + 1)]
    xs_low = [_x(i, k) for i in range(1, k)]
    gens: list[Monomial] = []
    gens += [_prod(k, _x(k, k, m - 1), v) for v in ys]
    for j in range(1, m - 1):
        head = _prod(k, _x(k, k, m - 1 - j), _y(k, k, j))
        gens += [head * v for v in ys + xs_low]
    gens += [_prod(k, _y(k, k, m - 1), v) for v in xs_low]
    out: list[Monomial] = []
    for g in gens:
        if g.degree == m and g not in out:
            out.append(g)
    return out


def t2(k: int, m: int, s: int) -> list[Monomial]:
    _check_km(k, m, s)
    pair = _prod(k, _x(k - s, k), _x(s, k))
    return [_prod(k, _x(k, k, m - 2 - j), _y(k, k, j), pair) for j in range(1, m - 1)]


def family_T(k: int, m: int, s: int, variant: str = "T2") -> ChiBasis:
    """T_1 together with T_2(s) (``"T2"``) or its mirror (``"T2'"``)."""
    if variant not in ("T2", "T2'"):
        raise ValueError(f"variant must be 'T2' or \"T2'\", got {variant!r}")
    extra = t2(k, m, s)
    if variant == "T2'":
        extra = [involution(mon) for mon in extra]
    return ChiBasis(k, m, tuple(t1_generators(k, m) + extra), family=f"T1+{variant}", s=s)


def s1(k: int, m: int, literal: bool = False) -> list[Monomial]:
    """Upper half of the S-route basis: weighted degrees k(m-1)-1 down to m (even k) or m-1 (odd k)."""
    _check_km(k, m)
    ell = k // 2
    out: list[Monomial] = []
    # rows of m terms: x_{k-r+1}^(m-1-j) x_{k-r}^j y_r
    for r in range(1, ell):
        hi, lo = k - r + 1, k - r
        out += [_prod(k, _x(hi, k, m - 1 - j), _x(lo, k, j), _y(r, k)) for j in range(m)]
    if k % 2 == 0:
        # rows of m-2 terms: x_p^(m-1-j) x_{p-1}^j y_{p-1}, p = ell+1 .. 2
        for p in range(ell + 1, 1, -1):
            out += [_prod(k, _x(p, k, m - 1 - j), _x(p - 1, k, j), _y(p - 1, k)) for j in range(m - 2)]
        return out
    # odd k: rows of m-2 terms x_p^(m-1-j) x_{p-1}^j y_{p-2}, p = ell+2 .. 3
    for p in range(ell + 2, 2, -1):
        row = [_prod(k, _x(p, k, m - 1 - j), _x(p - 1, k, j), _y(p - 2, k)) for j in range(m - 2)]
        if literal and ell >= 2 and p == ell + 1:
            row[0] = _prod(k, _x(ell + 1, k, m - 2), _y(ell - 1, k))
            if len(row) > 1:
                row[1] = _prod(k, _x(ell + 1, k, m - 1), _x(ell, k), _y(ell, k))
        out += row
    out.append(_prod(k, _x(ell + 2, k), _y(ell, k), _x(2, k, m - 2)))
    out += [
        _prod(k, _x(ell + 1, k), _y(ell, k), _x(2, k, m - 2 - j), _x(1, k, j)) for j in range(m - 1)
    ]
    return out


def s2(k: int, m: int, s: int) -> list[Monomial]:
    """Middle block: weighted degrees m-1 .. 1-m (even k) or m-2 .. 2-m (odd k)."""
    _check_km(k, m, s)
    ell = k // 2
    xs, ys = _x(s, k), _y(s, k)
    cross = _prod(k, _x(k, k), ys, _y(k - s, k))
    if k % 2 == 0:
        core = _prod(k, _x(ell, k), _y(ell, k))
    else:
        core = _prod(k, _x(ell + 1, k), _y(ell + 1, k))
    out: list[Monomial] = []
    if k % 2 == 0:
        out.append(_prod(k, _x(ell + 1, k), _y(ell, k), _x(1, k, m - 2)))
    for i in range(0, (m - 2) // 2 + 1):
        out.append(_prod(k, core, (xs * ys) ** i, _x(1, k, m - 2 * i - 2)))
    for i in range(0, m):
        if 2 * i < m - 2:
            out.append(_prod(k, core, (xs * ys) ** i, _y(1, k, m - 2 * i - 2)))
    for i in range(0, m):
        if 2 * i <= m - 3:
            out.append(_prod(k, cross, (xs * ys) ** i, _x(1, k, m - 2 * i - 3)))
    for i in range(0, m):
        if 2 * i < m - 3:
            out.append(_prod(k, cross, (xs * ys) ** i, _y(1, k, m - 2 * i - 3)))
    if k % 2 == 0:
        out.append(_prod(k, _y(ell + 1, k), _x(ell, k), _y(1, k, m - 2)))
    return out


def s1_repairs(k: int, m: int) -> list[dict]:
    """Positions where the quoted S_1 listing differs from the shipped one."""
    literal, shipped = s1(k, m, literal=True), s1(k, m)
    return [
        {"block": "S1", "position": i, "literal": str(a), "shipped": str(b)}
        for i, (a, b) in enumerate(zip(literal, shipped))
        if a != b
    ]


def family_S(k: int, m: int, s: int, mirrored: bool = False, literal: bool = False) -> ChiBasis:
    """S_1 with its mirror image, plus S_2(s) or (``mirrored``) the mirror of S_2(s)."""
    upper = s1(k, m, literal=literal)
    middle = s2(k, m, s)
    if mirrored:
        middle = [involution(mon) for mon in middle]
    mons = upper + [involution(mon) for mon in upper] + middle
    name = "S1+iS1+" + ("iS2" if mirrored else "S2") + ("(literal)" if literal else "")
    repairs = () if literal else tuple(s1_repairs(k, m))
    return ChiBasis(k, m, tuple(mons), family=name, s=s, repairs=repairs)


def t_route(k: int, m: int) -> list[ChiBasis]:
    return [family_T(k, m, s, v) for s in range(1, k) for v in ("T2", "T2'")]


def s_route(k: int, m: int) -> list[ChiBasis]:
    return [family_S(k, m, s, mir) for s in range(1, k) for mir in (False, True)]
