"""Seeded trace-zero weight sampling and vectorized minimum-weight evaluation.

Trials are drawn in fixed chunks of ``CHUNK`` rows, chunk c from the stream
``default_rng([seed, c])``, so results do not depend on how many workers
evaluate the chunks.  Weights are integers far below 2**50, which keeps the
float64 matrix products exact; this is asserted.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .families import family_B, s_route, t_route
from .kempf import rnc_classes
from .monomials import RhoWeights, occurrences

CHUNK = 1000
_EXACT_LIMIT = 2.0**50


def default_bound(k: int, m: int) -> int:
    return 10 * k * m


def sample_chunk(k: int, seed: int, chunk: int, n: int, bound: int) -> np.ndarray:
    rng = np.random.default_rng([seed, chunk])
    free = rng.integers(-bound, bound + 1, size=(n, 2 * k - 1), dtype=np.int64)
    return np.hstack([free, -free.sum(axis=1, keepdims=True)])


def sample_weights(k: int, trials: int, seed: int, bound: int) -> np.ndarray:
    """(trials, 2k) trace-zero integer weights, lambda block then nu block."""
    if trials < 1:
        raise ValueError("need at least one trial")
    parts = []
    for c, start in enumerate(range(0, trials, CHUNK)):
        parts.append(sample_chunk(k, seed, c, min(CHUNK, trials - start), bound))
    return np.vstack(parts)


class GroupedExponents:
    """Classes of exponent vectors, evaluated against many weight vectors at once."""

    def __init__(self, classes: Sequence[Sequence[Sequence[int]]]):
        rows = [e for members in classes for e in members]
        self.matrix = np.asarray(rows, dtype=np.float64)
        sizes = [len(members) for members in classes]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.intp)

    def class_minima(self, weights: np.ndarray) -> np.ndarray:
        w = np.asarray(weights, dtype=np.float64)
        prod = self.matrix @ w.T
        if prod.size and np.abs(prod).max() >= _EXACT_LIMIT:
            raise OverflowError("weights too large for exact float64 evaluation")
        return np.minimum.reduceat(prod, self.offsets, axis=0)

    def min_weights(self, weights: np.ndarray) -> np.ndarray:
        return np.rint(self.class_minima(weights).sum(axis=0)).astype(np.int64)


def _occ_matrix(bases) -> np.ndarray:
    rows = []
    for b in bases:
        occ = occurrences(b.mons, b.k)
        rows.append(occ.count_x + occ.count_y)
    return np.asarray(rows, dtype=np.float64)


@dataclass
class BasisBatch:
    chi_min: np.ndarray
    constructive: np.ndarray
    fallbacks: int


class BasisEvaluator:
    """Batch versions of min_weight_chi_basis and constructive_basis weights for one (k, m)."""

    def __init__(self, k: int, m: int):
        from .chi import _mixed_by_degree

        self.k, self.m = k, m
        self.chi = GroupedExponents([[mon.exponents for mon in v] for v in _mixed_by_degree(k, m).values()])
        self.rnc = GroupedExponents([[mon.a for mon in v] for v in rnc_classes(k, m).classes.values()])
        if m == 2:
            self.routes = None
            self.b_occ = _occ_matrix([family_B(k, 1), family_B(k, 2)])
        else:
            self.routes = (_occ_matrix(t_route(k, m)), _occ_matrix(s_route(k, m)))

    def evaluate(self, weights: np.ndarray) -> BasisBatch:
        k = self.k
        w = np.asarray(weights, dtype=np.float64)
        chi_min = self.chi.min_weights(w)
        rnc = self.rnc.min_weights(w[:, :k]) + self.rnc.min_weights(w[:, k:])
        top = weights[:, k - 1] + weights[:, 2 * k - 1]
        if self.routes is None:
            both = np.rint(self.b_occ @ w.T).astype(np.int64)
            chosen = np.where(top >= 0, both[0], both[1])
            fallbacks = 0
        else:
            t_min = np.rint((self.routes[0] @ w.T).min(axis=0)).astype(np.int64)
            s_min = np.rint((self.routes[1] @ w.T).min(axis=0)).astype(np.int64)
            first = np.where(top > 0, s_min, t_min)
            second = np.where(top > 0, t_min, s_min)
            chosen = np.where(first <= 0, first, np.where(second <= 0, second, chi_min))
            fallbacks = int(np.count_nonzero((first > 0) & (second > 0)))
        return BasisBatch(chi_min, rnc + chosen, fallbacks)


def _basis_chunk(args) -> tuple[int, int, int, int, list[int], list[int]]:
    k, m, seed, chunk, n, bound = args
    w = sample_chunk(k, seed, chunk, n, bound)
    out = BasisEvaluator(k, m).evaluate(w)
    i, j = int(np.argmax(out.chi_min)), int(np.argmax(out.constructive))
    return (
        int(out.chi_min[i]),
        int(out.constructive[j]),
        int(np.count_nonzero(out.chi_min > 0) + np.count_nonzero(out.constructive > 0)),
        out.fallbacks,
        w[i].tolist(),
        w[j].tolist(),
    )


def basis_fuzz(k: int, m: int, trials: int, seed: int, bound: int | None = None, jobs: int = 1) -> dict:
    """Max chi-basis minimum and max constructive-basis weight over seeded trace-zero weights."""
    bound = default_bound(k, m) if bound is None else bound
    tasks = [
        (k, m, seed, c, min(CHUNK, trials - start), bound)
        for c, start in enumerate(range(0, trials, CHUNK))
    ]
    results = _map(_basis_chunk, tasks, jobs)
    best_chi = max(range(len(results)), key=lambda i: (results[i][0], -i))
    best_con = max(range(len(results)), key=lambda i: (results[i][1], -i))
    return {
        "k": k,
        "m": m,
        "trials": trials,
        "seed": seed,
        "bound": bound,
        "max_chi_min_weight": results[best_chi][0],
        "max_chi_argmax": results[best_chi][4],
        "max_constructive_weight": results[best_con][1],
        "max_constructive_argmax": results[best_con][5],
        "violations": sum(r[2] for r in results),
        "family_fallbacks": sum(r[3] for r in results),
    }


def _class_chunk(args) -> tuple[int, int, list[int]]:
    classes, k, seed, chunk, n, bound = args
    w = sample_chunk(k, seed, chunk, n, bound)
    mins = GroupedExponents(classes).min_weights(w)
    i = int(np.argmax(mins))
    return int(mins[i]), int(np.count_nonzero(mins > 0)), w[i].tolist()


def class_fuzz(
    classes: Sequence[Sequence[Sequence[int]]],
    k: int,
    trials: int,
    seed: int,
    bound: int,
    inject: Sequence[RhoWeights] = (),
    jobs: int = 1,
) -> dict:
    """Largest minimum-basis weight seen; injected weights are evaluated first, as trials 0, 1, ..."""
    grouped = GroupedExponents(classes)
    best_w, best_rho, positives = None, None, 0
    if inject:
        w = np.asarray([r.vector for r in inject], dtype=np.int64)
        mins = grouped.min_weights(w)
        i = int(np.argmax(mins))
        best_w, best_rho = int(mins[i]), w[i].tolist()
        positives += int(np.count_nonzero(mins > 0))
    n_random = trials - len(inject)
    if n_random > 0:
        tasks = [
            (classes, k, seed, c, min(CHUNK, n_random - start), bound)
            for c, start in enumerate(range(0, n_random, CHUNK))
        ]
        for val, pos, rho in _map(_class_chunk, tasks, jobs):
            positives += pos
            if best_w is None or val > best_w:
                best_w, best_rho = val, rho
    return {"max_min_weight": best_w, "argmax": best_rho, "positive_trials": positives}


def _map(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))
