import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doublea.chi import (
    TheoremViolation,
    chi_size,
    family_report,
    family_sign_identity,
    is_chi_basis,
    min_weight_chi_basis,
    mirror,
    nonpositive_chi_basis,
    reference_counts,
    t1_missing_degrees,
    weight_decomposition,
)
from doublea.families import (
    ChiBasis,
    family_B,
    family_S,
    family_T,
    s1_repairs,
    s_route,
    t1_generators,
    t2,
    t_route,
)
from doublea.monomials import Monomial, RhoWeights, involution, multiset_weight, occurrences
from oracles import brute_chi_min, random_trace_zero

GRID = [(k, m) for k in range(2, 7) for m in range(3, 7)]


def P(text, k):
    return Monomial.parse(text, k)


def strs(mons):
    return {str(m) for m in mons}


def test_is_chi_basis_examples():
    b1 = family_B(2, 1)
    rep = is_chi_basis(b1.mons, 2, 2)
    assert rep.valid and rep.cardinality == 3
    dup = is_chi_basis([P("x1*y1", 2), P("x1*y1", 2), P("x2*y1", 2)], 2, 2)
    assert not dup.valid and dup.duplicate_monomials == ["x1*y1"]
    impure = is_chi_basis([P("x1^2", 2), P("x1*y2", 2), P("x2*y1", 2)], 2, 2)
    assert not impure.valid and impure.not_mixed == ["x1^2"]
    short = is_chi_basis([P("x1*y1", 2)], 2, 2)
    assert not short.valid and short.missing_degrees == [-1, 1]


def test_family_b_listings():
    assert strs(family_B(2, 1).mons) == {"x2*y1", "x1*y1", "x1*y2"}
    assert strs(family_B(2, 2).mons) == {"x2*y1", "x2*y2", "x1*y2"}
    for k in range(2, 11):
        for v in (1, 2):
            b = family_B(k, v)
            assert len(b) == 2 * k - 1 == chi_size(k, 2)
            assert is_chi_basis(b.mons, k, 2).valid
    with pytest.raises(ValueError):
        family_B(1, 1)


@pytest.mark.parametrize("k", range(2, 11))
def test_family_b_weight_identities(k):
    d1 = weight_decomposition(occurrences(family_B(k, 1).mons))
    d2 = weight_decomposition(occurrences(family_B(k, 2).mons))
    assert d1["multiple"] == -1 and d2["multiple"] == k - 1
    rng = np.random.default_rng(k)
    for _ in range(100):
        r = RhoWeights.from_vector(random_trace_zero(rng, k))
        assert multiset_weight(family_B(k, 1).mons, r) == -r.top_sum
        assert multiset_weight(family_B(k, 2).mons, r) == (k - 1) * r.top_sum


def test_t_family_example():
    assert strs(t2(2, 3, 1)) == {"x1^2*y2"}
    fam = family_T(2, 3, 1)
    assert len(fam) == 7 and is_chi_basis(fam.mons, 2, 3).valid


def test_t1_missing_degree_example():
    assert t1_missing_degrees(3, 5) == [6, 0, -6]


@pytest.mark.parametrize("k,m", GRID)
def test_t1_misses_expected_degrees(k, m):
    assert t1_missing_degrees(k, m) == list(range(k * (m - 3), -k * (m - 3) - 1, -2 * k))
    occ = occurrences(t1_generators(k, m), k)
    assert weight_decomposition(occ)["c_rest"] == m - 1


def test_s_family_example():
    fam = family_S(2, 3, 1)
    assert len(fam) == 7 and is_chi_basis(fam.mons, 2, 3).valid


@pytest.mark.parametrize("k,m", GRID)
def test_every_family_is_a_chi_basis(k, m):
    for s in range(1, k):
        for fam in (family_T(k, m, s, "T2"), family_T(k, m, s, "T2'"), family_S(k, m, s), family_S(k, m, s, True)):
            rep = is_chi_basis(fam.mons, k, m)
            assert rep.valid, (fam.family, s, rep.to_json())


def test_parameter_ranges():
    with pytest.raises(ValueError):
        family_T(3, 3, 3)
    with pytest.raises(ValueError):
        family_S(3, 3, 0)
    with pytest.raises(ValueError):
        family_T(3, 2, 1)


@pytest.mark.parametrize("k,m", GRID)
def test_route_unions(k, m):
    t, s = family_sign_identity(k, m)
    assert len(t_route(k, m)) == len(s_route(k, m)) == 2 * (k - 1)
    for rep in (t, s):
        assert rep.occurrence.is_symmetric
        assert len(set(rep.occurrence.count_x[:-1])) == 1
    assert t.occurrence.count_x[-1] > t.occurrence.count_x[0]
    assert s.occurrence.count_x[-1] < s.occurrence.count_x[0]
    assert t.weight_decomposition["multiple"] > 0 > s.weight_decomposition["multiple"]


def test_sign_identity_examples():
    t, s = family_sign_identity(2, 3)
    assert t.weight_decomposition["multiple"] > 0
    assert s.weight_decomposition["multiple"] < 0
    t, s = family_sign_identity(3, 4)
    assert t.occurrence.count_x == t.occurrence.count_y
    with pytest.raises(ValueError):
        family_sign_identity(3, 2)


@pytest.mark.parametrize("k,m", [(3, 3), (4, 4), (5, 3), (6, 5)])
def test_decomposition_reproduces_weights(k, m):
    rng = np.random.default_rng(k * 10 + m)
    t, s = family_sign_identity(k, m)
    routes = ((t, t_route(k, m)), (s, s_route(k, m)))
    for _ in range(100):
        r = RhoWeights.from_vector(random_trace_zero(rng, k))
        for rep, fams in routes:
            total = sum(multiset_weight(b.mons, r) for b in fams)
            assert total == rep.weight_decomposition["multiple"] * r.top_sum


def test_even_k_quoted_counts_match():
    for k in (2, 4, 6):
        for m in range(3, 7):
            rows = reference_counts(k, m)["rows"]
            assert all(r["match"] for r in rows), rows


def test_odd_k_discrepancy_is_reported():
    for k in (3, 5):
        for m in range(3, 7):
            rows = {r["claim"]: r for r in reference_counts(k, m)["rows"]}
            assert rows["S-route union count of other variables"]["match"]
            xk = rows["S-route union count of x_k"]
            assert xk["match"] == (m == 2)
            assert xk["computed"] < xk["quoted"]


@pytest.mark.parametrize("m", range(3, 7))
def test_literal_odd_listing_and_repairs(m):
    k = 5
    literal = family_S(k, m, 1, literal=True)
    assert not is_chi_basis(literal.mons, k, m).valid
    repaired = family_S(k, m, 1)
    assert is_chi_basis(repaired.mons, k, m).valid
    diffs = s1_repairs(k, m)
    assert diffs and list(repaired.repairs) == diffs
    lit_set, rep_set = strs(literal.mons), strs(repaired.mons)
    for d in diffs:
        assert d["literal"] in lit_set and d["shipped"] in rep_set
    report = family_report(repaired).to_json()
    assert report["repairs"] == diffs


def test_literal_listing_valid_elsewhere():
    for k in (2, 3, 4, 6):
        for m in range(3, 7):
            for s in range(1, k):
                assert is_chi_basis(family_S(k, m, s, literal=True).mons, k, m).valid
                assert s1_repairs(k, m) == []


def test_min_weight_examples():
    r = RhoWeights((1, -1), (1, -1))
    basis, w = min_weight_chi_basis(2, 2, r)
    assert w == -2 and P("x2*y2", 2) in basis.mons
    assert min_weight_chi_basis(2, 2, RhoWeights.zero(2))[1] == 0
    assert min_weight_chi_basis(2, 2, RhoWeights((0, 1), (0, -1)))[1] <= 0


@pytest.mark.parametrize("k,m", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)])
def test_min_weight_matches_brute_force(k, m):
    rng = np.random.default_rng(7)
    for _ in range(4 if (k, m) == (3, 3) else 25):
        v = random_trace_zero(rng, k)
        basis, w = min_weight_chi_basis(k, m, RhoWeights.from_vector(v))
        assert w == brute_chi_min(k, m, v) == multiset_weight(basis.mons, v)
        assert is_chi_basis(basis.mons, k, m).valid


def test_m2_dispatch():
    up = RhoWeights((1, 0, 2), (-2, -1, 0))
    down = RhoWeights((1, 2, -5), (0, 1, 1))
    assert nonpositive_chi_basis(3, 2, up).basis.family == "B1"
    choice = nonpositive_chi_basis(3, 2, down)
    assert choice.basis.family == "B2" and "B2" in choice.route and choice.weight <= 0


def test_nonpositive_at_k4_m4():
    rng = np.random.default_rng(44)
    for _ in range(1000):
        r = RhoWeights.from_vector(random_trace_zero(rng, 4, 160))
        choice = nonpositive_chi_basis(4, 4, r)
        assert choice.weight <= 0
        assert choice.weight == multiset_weight(choice.basis.mons, r)
        assert min_weight_chi_basis(4, 4, r)[1] <= choice.weight
        assert is_chi_basis(choice.basis.mons, 4, 4).valid


def test_theorem_violation_is_an_assertion():
    assert issubclass(TheoremViolation, AssertionError)


@given(st.integers(2, 5), st.integers(2, 5), st.data())
def test_dominance_and_mirror(k, m, data):
    free = data.draw(st.lists(st.integers(-50, 50), min_size=2 * k - 1, max_size=2 * k - 1))
    r = RhoWeights.from_vector(free + [-sum(free)])
    best = min_weight_chi_basis(k, m, r)[1]
    assert best <= 0
    fams = [family_B(k, 1), family_B(k, 2)] if m == 2 else t_route(k, m) + s_route(k, m)
    for fam in fams:
        assert best <= multiset_weight(fam.mons, r)
        assert multiset_weight(mirror(fam).mons, r.swap()) == multiset_weight(fam.mons, r)


def test_mirror_maps_variants():
    for k in range(2, 6):
        for m in range(3, 6):
            for s in range(1, k):
                assert set(mirror(family_T(k, m, s, "T2")).mons) == set(family_T(k, m, s, "T2'").mons)
                assert set(mirror(family_S(k, m, s)).mons) == set(family_S(k, m, s, True).mons)


def test_chibasis_mirror_is_involution():
    fam = family_T(3, 4, 2)
    twice = mirror(mirror(fam))
    assert isinstance(twice, ChiBasis) and twice.mons == fam.mons
    assert set(mirror(fam).mons) == {involution(x) for x in fam.mons}
