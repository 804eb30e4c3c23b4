"""Exact sign of a concave piecewise-linear "sum of class minima" on the trace-zero space.

For classes of exponent vectors, F(v) = sum_c min_{e in c} <e, v> is concave
and positively homogeneous, so sup F over trace-zero v is either 0 or +inf.
F is linear on each cone cut out by the hyperplanes <e - e', v> = 0 (e, e' in
the same class); adding the hyperplanes v_i = v_j makes every cone pointed.
A pointed cone's linear function is <= 0 iff it is <= 0 on the extreme rays,
and those rays are 1-dimensional intersections of the hyperplanes.  So the
supremum is 0 exactly when F <= 0 on all such rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import nullspace, primitive


@dataclass
class RayScan:
    dimension: int
    hyperplanes: int
    rays_checked: int
    worst_value: Fraction
    worst_ray: list[int]

    @property
    def maximum_is_zero(self) -> bool:
        return self.worst_value <= 0

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "hyperplanes": self.hyperplanes,
            "rays_checked": self.rays_checked,
            "worst_value": str(self.worst_value),
            "worst_ray": self.worst_ray,
            "maximum": "0" if self.maximum_is_zero else "unbounded",
        }


def class_min_sum(classes: Sequence[Sequence[Sequence[int]]], v: Sequence[Fraction | int]) -> Fraction:
    return sum(
        (min(sum(Fraction(a) * b for a, b in zip(e, v)) for e in members) for members in classes),
        Fraction(0),
    )


def _normalize(vec: Sequence[int]) -> tuple[int, ...] | None:
    ints = primitive([Fraction(v) for v in vec])
    if not any(ints):
        return None
    first = next(v for v in ints if v)
    return tuple(ints) if first > 0 else tuple(-v for v in ints)


def scan_rays(classes: Sequence[Sequence[Sequence[int]]], n: int) -> RayScan:
    """Evaluate F on every extreme ray of the trace-zero fan in R^n."""
    normals: set[tuple[int, ...]] = set()
    for members in classes:
        for e, f in combinations(members, 2):
            key = _normalize([p - q for p, q in zip(e, f)])
            if key is not None:
                normals.add(key)
    for i, j in combinations(range(n), 2):
        vec = [0] * n
        vec[i], vec[j] = 1, -1
        normals.add(tuple(vec))
    ordered = sorted(normals)
    ones = [1] * n
    seen: set[tuple[int, ...]] = set()
    worst: tuple[Fraction, list[int]] | None = None
    for combo in combinations(ordered, n - 2):
        ns = nullspace([ones, *combo], n)
        if len(ns) != 1:
            continue
        ray = primitive(ns[0])
        for sign in (1, -1):
            r = tuple(sign * v for v in ray)
            if r in seen:
                continue
            seen.add(r)
            val = class_min_sum(classes, r)
            if worst is None or val > worst[0]:
                worst = (val, list(r))
    if worst is None:
        raise ValueError("trace-zero space has no rays; need n >= 2")
    return RayScan(n - 1, len(ordered), len(seen), worst[0], worst[1])
