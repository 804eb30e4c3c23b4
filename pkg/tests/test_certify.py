import copy
import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from doublea.certify import (
    NONSEMISTABLE,
    SEMISTABLE,
    ClassSystem,
    build_class_system,
    certify,
    constructive_basis,
    fuzz,
    min_weight_basis,
    toy_class_system,
    verify_certificate,
)
from doublea.exact import nullspace, primitive, rank, solve
from doublea.laurent import PluriLabel
from doublea.lp import feasible_point
from doublea.monomials import Monomial, RhoWeights, involution, rho_weight
from doublea.sampling import CHUNK, BasisEvaluator, basis_fuzz, sample_weights
from oracles import basis_count, brute_min_basis, classes, float_barycenter_feasible, random_trace_zero

R = RhoWeights((1, -1), (1, -1))


def test_exact_linear_algebra():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve([[1, 1], [1, 1]], [0, 1]) is None
    assert primitive([Fraction(2, 3), Fraction(-4, 3), 0]) == [1, -2, 0]


def test_lp_feasible_and_farkas():
    cols = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
    res = feasible_point(cols, [2, 0], 2)
    assert res.feasible and res.x == {0: 1, 1: 1}
    res = feasible_point([{0: Fraction(1)}, {0: Fraction(2)}], [-1], 1)
    assert not res.feasible
    y = res.farkas
    assert all(sum(y[i] * v for i, v in c.items()) >= 0 for c in [{0: 1}, {0: 2}])
    assert y[0] * -1 < 0


def test_lp_hint_does_not_change_verdict():
    sys = build_class_system(3, 3)
    a = certify(sys, presolve=True)
    b = certify(sys, presolve=False)
    assert a.verdict == b.verdict == SEMISTABLE
    assert a.stats["warm_start"] and not b.stats["warm_start"]


def test_class_system_examples():
    sys = build_class_system(2, 2)
    assert sys.class_count == 9
    sizes = {str(lab): len(v) for lab, v in sys.classes}
    assert sum(sizes.values()) == 10
    assert [lab for lab, n in sizes.items() if n > 1] == ["chi_0"]
    for k in range(2, 5):
        for m in range(2, 5):
            sys = build_class_system(k, m)
            assert sys.class_count == (2 * m - 1) * (2 * k - 1)
            assert [str(x) for x in sys.members(PluriLabel("omega", 0))] == [f"x1^{m}"]
            top = sys.members(PluriLabel("chi", k * (m - 1) - 1))
            assert top == (Monomial.x(k, k, m - 1) * Monomial.y(1, k),)
            assert sys.barycenter_target == Fraction(m * sys.class_count, 2 * k)
    with pytest.raises(ValueError):
        build_class_system(2, 1)


def test_min_weight_basis_examples():
    sys = build_class_system(2, 2)
    assert min_weight_basis(sys, RhoWeights.zero(2))[1] == 0
    assert min_weight_basis(sys, R)[1] == -2


@pytest.mark.parametrize("k,m", [(2, 2), (2, 3), (3, 2)])
def test_min_weight_basis_is_exhaustive_minimum(k, m):
    cls = list(classes(k, m).values())
    assert basis_count(cls) <= 10**5
    sys = build_class_system(k, m)
    rng = np.random.default_rng(11)
    for _ in range(20):
        v = random_trace_zero(rng, k)
        assert min_weight_basis(sys, v)[1] == brute_min_basis(cls, v)


def test_homogeneity_and_symmetry():
    sys = build_class_system(3, 3)
    rng = np.random.default_rng(2)
    for _ in range(30):
        v = random_trace_zero(rng, 3)
        r = RhoWeights.from_vector(v)
        basis, w = min_weight_basis(sys, r)
        basis3, w3 = min_weight_basis(sys, [3 * x for x in v])
        assert w3 == 3 * w and basis3 == basis
        assert min_weight_basis(sys, r.swap())[1] == w


@pytest.mark.parametrize("k,m", [(2, 2), (3, 3)])
def test_certify_examples(k, m):
    sys = build_class_system(k, m)
    cert = certify(sys)
    assert cert.verdict == SEMISTABLE and verify_certificate(cert, sys)
    assert float_barycenter_feasible(k, m)


def test_certificate_json_is_deterministic():
    sys = build_class_system(2, 3)
    a = json.dumps(certify(sys).to_json())
    b = json.dumps(certify(sys).to_json())
    assert a == b
    js = json.loads(a)
    assert js["verdict"] == SEMISTABLE and js["t"] == "45/4" and js["g"] == 4
    for coeffs in js["witness"].values():
        assert sum(Fraction(c) for c in coeffs.values()) == 1


def test_witness_is_symmetric_under_involution():
    sys = build_class_system(2, 2)
    cert = certify(sys)
    total = [Fraction(0)] * 4
    mirrored = [Fraction(0)] * 4
    for coeffs in cert.witness.values():
        for mon, c in coeffs.items():
            for i, e in enumerate(mon.exponents):
                total[i] += c * e
            for i, e in enumerate(involution(mon).exponents):
                mirrored[i] += c * e
    assert total == mirrored == [cert.t] * 4


def test_toy_system():
    sys = toy_class_system(2, 2)
    cert = certify(sys)
    assert cert.verdict == NONSEMISTABLE
    rho = cert.destabilizer
    assert sum(rho.vector) == 0 and rho.lam[0] > 0 and rho.lam[0] == max(rho.vector)
    assert min_weight_basis(sys, rho)[1] == cert.min_weight > 0
    assert verify_certificate(cert, sys)


def test_tampering_is_detected():
    sys = build_class_system(2, 2)
    cert = certify(sys)
    bad = copy.deepcopy(cert)
    lab = next(iter(bad.witness))
    mon = next(iter(bad.witness[lab]))
    bad.witness[lab][mon] += Fraction(1, 7)
    assert not verify_certificate(bad, sys)
    flipped = copy.deepcopy(cert)
    flipped.verdict = NONSEMISTABLE
    assert not verify_certificate(flipped, sys)

    toy = toy_class_system(2, 2)
    tc = certify(toy)
    wrong_w = copy.deepcopy(tc)
    wrong_w.min_weight += 1
    assert not verify_certificate(wrong_w, toy)
    zero = copy.deepcopy(tc)
    zero.destabilizer = RhoWeights.zero(2)
    zero.min_weight = 0
    assert not verify_certificate(zero, toy)
    assert not verify_certificate(tc, sys)


def test_constructive_examples():
    assert constructive_basis(2, 2, RhoWeights.zero(2)).weight == 0
    built = constructive_basis(2, 2, R)
    assert built.weight == -2 == min_weight_basis(build_class_system(2, 2), R)[1]
    assert len(built.monomials) == 9


def test_constructive_basis_is_a_basis():
    rng = np.random.default_rng(9)
    for k, m in [(2, 3), (3, 4), (4, 3)]:
        sys = build_class_system(k, m)
        for _ in range(20):
            r = RhoWeights.from_vector(random_trace_zero(rng, k, 10 * k * m))
            built = constructive_basis(k, m, r)
            picked = {}
            for mon in built.monomials:
                lab = next(lab for lab, members in sys.classes if mon in members)
                picked.setdefault(lab, []).append(mon)
            assert len(picked) == sys.class_count and all(len(v) == 1 for v in picked.values())
            assert built.weight == sum(rho_weight(mon, r) for mon in built.monomials) <= 0


def test_constructive_fuzz_k4_m3():
    rep = basis_fuzz(4, 3, 10_000, seed=1)
    assert rep["max_constructive_weight"] <= 0 and rep["violations"] == 0


def test_fuzz_examples():
    sys = build_class_system(2, 2)
    rep = fuzz(sys, 10_000, seed=0)
    assert rep["all_nonpositive"] and rep["max_min_weight"] <= 0
    once = [json.dumps(fuzz(sys, 1, seed=5)) for _ in range(2)]
    assert once[0] == once[1]
    toy = toy_class_system(2, 2)
    far = certify(toy).destabilizer
    rep = fuzz(toy, 1, seed=0, inject=[far])
    assert rep["max_min_weight"] > 0 and rep["argmax"] == list(far.vector)
    with pytest.raises(ValueError):
        fuzz(sys, 0, seed=0)


def test_sampling_is_chunk_stable_and_parallel_safe():
    a = sample_weights(3, 2 * CHUNK + 17, seed=4, bound=30)
    b = sample_weights(3, CHUNK + 5, seed=4, bound=30)
    assert (a[:CHUNK] == b[:CHUNK]).all()
    assert (a.sum(axis=1) == 0).all() and np.abs(a[:, :-1]).max() <= 30
    sys = build_class_system(2, 3)
    assert fuzz(sys, 3000, seed=2, jobs=1) == fuzz(sys, 3000, seed=2, jobs=2)
    assert basis_fuzz(3, 3, 2500, 6, jobs=1) == basis_fuzz(3, 3, 2500, 6, jobs=3)


def test_vectorized_matches_scalar():
    from doublea.chi import min_weight_chi_basis

    for k, m in [(2, 2), (3, 3), (4, 4)]:
        w = sample_weights(k, 40, seed=k, bound=10 * k * m)
        batch = BasisEvaluator(k, m).evaluate(w)
        for row, cmin, cons in zip(w, batch.chi_min, batch.constructive):
            r = RhoWeights.from_vector([int(v) for v in row])
            assert cmin == min_weight_chi_basis(k, m, r)[1]
            assert cons == constructive_basis(k, m, r).weight


def test_duality_exact_on_small_systems():
    # the class-minimum sum is piecewise linear; its sign is decided on the rays of its fan
    from doublea.fan import scan_rays

    for k, m in [(2, 2), (2, 3)]:
        sys = build_class_system(k, m)
        cls = [[mon.exponents for mon in v] for _, v in sys.classes]
        assert scan_rays(cls, 2 * k).maximum_is_zero
        assert certify(sys).verdict == SEMISTABLE
    toy = toy_class_system(2, 2)
    assert not scan_rays([[mon.exponents for mon in v] for _, v in toy.classes], 4).maximum_is_zero


def test_custom_class_system_is_usable():
    k, m = 2, 2
    members = (Monomial.x(1, k, 2), Monomial.y(1, k, 2))
    sys = ClassSystem(k, m, ((PluriLabel("omega", 0), members),))
    cert = certify(sys)
    assert verify_certificate(cert, sys)
