import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpolykit.algebraics import AlgebraicReal, compare, compare_rational, isolate_real_roots
from qpolykit.polynomials import RationalPoly
from qpolykit.tridiagonal import (
    TridiagonalSystem,
    charpoly_by_cofactor,
    compare_shifted_product,
    endpoint_product_bound,
    f_polynomials,
    interlacing_check,
    pair_bound,
    random_system,
    reduced_matrix,
    shifted_subset_product,
    spectrum,
    triple_bound,
    validate,
)

C5 = TridiagonalSystem.from_entries([F(0), F(0), F(1)], [F(2), F(1)], [F(1), F(1)], F(2))
HEAWOOD = TridiagonalSystem.from_intersection_numbers([3, 2, 2], [1, 1, 3])
CUBE = TridiagonalSystem.from_intersection_numbers([3, 2, 1], [1, 2, 3])
H42 = TridiagonalSystem.from_intersection_numbers([4, 3, 2, 1], [1, 2, 3, 4])
ICOSA = TridiagonalSystem.from_intersection_numbers([5, 2, 1], [1, 2, 5])
PETERSEN_Q = TridiagonalSystem.from_intersection_numbers([3, 2], [1, 1])


def test_validate_examples():
    assert validate(C5).ok
    bad = TridiagonalSystem.from_entries([F(0), F(0), F(1)], [F(2), F(1)], [F(2), F(1)], F(2))
    rep = validate(bad)
    assert not rep.ok
    assert any("gamma_1" in v for v in rep.violations)
    assert validate(HEAWOOD).ok
    assert HEAWOOD.alpha == (F(0), F(0), F(0), F(0))


def test_validate_reports_every_violation():
    bad = TridiagonalSystem.from_entries([F(1), F(-1), F(1)], [F(2), F(1)], [F(1), F(1)], F(0))
    rep = validate(bad)
    assert not rep.ok
    assert len(rep.violations) >= 3


def test_reduced_matrix_examples():
    assert reduced_matrix(C5) == ((F(-1), F(1)), (F(1), F(0)))
    rm = reduced_matrix(HEAWOOD)
    assert [rm[i][i] for i in range(3)] == [F(-1), F(0), F(-2)]
    assert [rm[0][1], rm[1][2]] == [F(2), F(2)]
    assert [rm[1][0], rm[2][1]] == [F(1), F(1)]
    generic = TridiagonalSystem.from_entries(
        [F(0), F(3), F(3)], [F(7), F(3)], [F(1), F(4)], F(7)
    )
    rm2 = reduced_matrix(generic)
    assert rm2[0][0] == F(-1) and rm2[1][1] == F(7) - F(3) - F(4)


def test_f_polynomials_examples():
    fs = f_polynomials(C5)
    assert fs[2] == RationalPoly((-1, 1, 1))
    fs = f_polynomials(HEAWOOD)
    f3 = fs[3]
    s2 = isolate_real_roots(RationalPoly((-2, 0, 1)))[-1]
    roots = isolate_real_roots(f3)
    assert roots[0].as_rational() == F(-3)
    assert compare(roots[2], s2) == 0


def test_f2_at_minus_one_is_minus_beta1():
    rng = random.Random(11)
    for _ in range(25):
        s = random_system(rng, rng.randint(2, 5))
        fs = f_polynomials(s)
        assert fs[2].evaluate(-1) == -s.beta[1]


def test_spectrum_examples():
    rep = spectrum(C5)
    assert rep.eigenvalues[0].as_rational() == F(2)
    golden_hi = isolate_real_roots(RationalPoly((-1, 1, 1)))[-1]
    assert compare(rep.eigenvalues[1], golden_hi) == 0
    rep = spectrum(HEAWOOD)
    assert [e.approx_float() for e in rep.eigenvalues] == pytest.approx([3.0, 2**0.5, -(2**0.5), -3.0])
    rep = spectrum(ICOSA)
    s5 = isolate_real_roots(RationalPoly((-5, 0, 1)))[-1]
    assert compare(rep.eigenvalues[1], s5) == 0
    assert rep.eigenvalues[2].as_rational() == F(-1)
    assert compare(rep.eigenvalues[3], -s5) == 0


def test_full_charpoly_factorization():
    # charpoly of the full (D+1)x(D+1) matrix equals (x - kappa) * F_D
    for system in (C5, HEAWOOD, CUBE):
        d = system.d
        kappa = system.kappa
        full = [[F(0)] * (d + 1) for _ in range(d + 1)]
        for i in range(d + 1):
            full[i][i] = system.alpha[i]
            if i < d:
                full[i][i + 1] = system.beta[i]
            if i >= 1:
                full[i][i - 1] = system.gamma[i - 1]
        cp = charpoly_by_cofactor(full)
        fd = f_polynomials(system)[d]
        assert cp == RationalPoly((-kappa, 1)) * fd


def test_interlacing_examples():
    rep = spectrum(C5)
    assert interlacing_check(rep).passed
    # alpha_{2,2} < -1 < alpha_{2,1}
    a22, a21 = rep.root_table[1][1], rep.root_table[1][0]
    assert compare_rational(a22, F(-1)) < 0 < compare_rational(a21, F(-1))
    assert interlacing_check(spectrum(HEAWOOD)).passed


def test_lemma_examples():
    r = endpoint_product_bound(F(0), F(0), F(1), F(1), F(1, 2))
    assert r.holds and r.equality
    assert r.f_t.as_rational() == F(-1, 4)
    r = endpoint_product_bound(F(-2), F(-1), F(1), F(2), F(0))
    assert r.holds and not r.equality
    assert r.f_t.as_rational() == F(-4) and r.g_t.as_rational() == F(-1)
    r = endpoint_product_bound(F(-2), F(-1), F(1), F(2), F(-1))
    assert r.holds and not r.equality
    assert r.f_t.as_rational() == F(-3) and r.g_t.as_rational() == F(0)


def test_lemma_preconditions():
    with pytest.raises(ValueError):
        endpoint_product_bound(F(0), F(1), F(1), F(2), F(1))  # b < c violated
    with pytest.raises(ValueError):
        endpoint_product_bound(F(0), F(0), F(1), F(1), F(2))  # t outside [b, c]


def test_pair_bound_examples():
    res = pair_bound(C5)
    assert res.lhs == F(-1) and res.rhs == F(-1) and res.equality
    res = pair_bound(HEAWOOD)
    assert res.rhs == F(-2) and res.holds and not res.equality
    # lhs = -2 - 2 sqrt2
    s2 = isolate_real_roots(RationalPoly((-2, 0, 1)))[-1]
    assert compare(res.lhs, s2.mul_rational(-2).add_rational(-2)) == 0
    res = pair_bound(PETERSEN_Q)
    assert res.lhs == F(-2) and res.rhs == F(-2) and res.equality


def test_triple_bound_examples():
    res = triple_bound(HEAWOOD)
    assert res.hypothesis_sign == 1
    (branch,) = res.branches
    assert branch.branch == "lower"
    assert branch.check.lhs == F(2) and branch.check.rhs == F(2) and branch.check.equality

    res = triple_bound(CUBE)
    assert res.hypothesis_sign == 0
    assert {b.branch for b in res.branches} == {"lower", "upper"}
    assert all(b.check.lhs == F(0) and b.check.rhs == F(0) and b.check.equality for b in res.branches)

    res = triple_bound(H42)
    assert res.hypothesis_sign == 0
    assert all(b.check.holds and not b.check.equality for b in res.branches)
    vals = {b.branch: b.check.lhs for b in res.branches}
    assert vals["lower"] == F(9) and vals["upper"] == F(-9)


def test_shifted_subset_product_paths():
    rep = spectrum(H42)
    fd = rep.f_polys[-1]
    asc = list(reversed(rep.root_table[-1]))  # -4, -2, 0, 2
    full = shifted_subset_product(fd, asc, range(len(asc)), 1)
    assert full == F(9)
    sub = shifted_subset_product(fd, asc, [0, 3], 1)
    assert sub == F(-9)
    # a factor equal to the negated shift makes the product exactly zero
    cube_rep = spectrum(CUBE)
    cube_asc = list(reversed(cube_rep.root_table[-1]))  # -3, -1, 1
    assert shifted_subset_product(cube_rep.f_polys[-1], cube_asc, [0, 1], 1) == F(0)


def test_root_table_first_entry_is_minus_one():
    for system in (C5, HEAWOOD, H42):
        rep = spectrum(system)
        assert rep.root_table[0][0].as_rational() == F(-1)


def test_json_roundtrip():
    js = HEAWOOD.to_json_dict()
    assert js == {
        "kappa": "3",
        "alpha": ["0", "0", "0", "0"],
        "beta": ["3", "2", "2"],
        "gamma": ["1", "1", "3"],
    }
    back = TridiagonalSystem.from_json_dict(js)
    assert back == HEAWOOD
    with pytest.raises(ValueError):
        TridiagonalSystem.from_json_dict({"kappa": "3", "alpha": ["0"], "beta": [], "gamma": ["1"]})
    with pytest.raises(ValueError):
        TridiagonalSystem.from_json_dict({"kappa": "x", "alpha": ["0", "0"], "beta": ["1"], "gamma": ["1"]})


def test_equality_cases_randomized_small():
    rng = random.Random(2024)
    for _ in range(30):
        d = rng.randint(2, 6)
        system = random_system(rng, d)
        rep = spectrum(system)
        assert interlacing_check(rep).passed
        pres = pair_bound(system, rep)
        assert pres.holds
        assert pres.equality == (d == 2)
        if d >= 3:
            tres = triple_bound(system, rep)
            assert tres.holds
            assert tres.equality == (d == 3)
        oracle = charpoly_by_cofactor(reduced_matrix(system)).monic()
        assert oracle == rep.f_polys[-1].monic()


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=2, max_value=5))
def test_random_systems_always_validate(seed, d):
    rng = random.Random(seed)
    system = random_system(rng, d)
    assert validate(system).ok
    assert system.beta[0] == system.kappa and system.gamma[0] == 1


def test_refinement_budget_never_changes_verdicts(monkeypatch):
    # a tiny budget forces the exact algebraic fallback; every verdict must
    # agree with the default-budget run
    rng = random.Random(99)
    cases = []
    for _ in range(6):
        d = rng.randint(4, 6)
        system = random_system(rng, d)
        rep = spectrum(system)
        cases.append((system, rep))
    baseline = []
    for system, rep in cases:
        p = pair_bound(system, rep)
        t = triple_bound(system, rep)
        baseline.append((p.holds, p.equality, t.holds, t.equality))
    monkeypatch.setenv("QPOLYKIT_REFINE_BUDGET", "4")
    for (system, rep), expect in zip(cases, baseline):
        p = pair_bound(system, rep)
        t = triple_bound(system, rep)
        assert (p.holds, p.equality, t.holds, t.equality) == expect


def test_exact_fallback_detects_product_equality(monkeypatch):
    # two irrational factors on each side and an exactly rational product:
    # intervals can never separate, so the resolvent phase must certify 0
    monkeypatch.setenv("QPOLYKIT_REFINE_BUDGET", "4")
    poly = RationalPoly((-2, 0, 1)) * RationalPoly((-8, 0, 1))
    roots = isolate_real_roots(poly)  # -2sqrt2, -sqrt2, sqrt2, 2sqrt2
    assert compare_shifted_product(poly, roots, [2, 3], 0, F(4)) == 0
    assert compare_shifted_product(poly, roots, [2, 3], 0, F(5)) == -1
    assert compare_shifted_product(poly, roots, [0, 1], 0, F(3)) == 1


def test_direct_resultant_product_matches_subset_comparison():
    # materialize (theta_1 + 1)(theta_D + 1) through resultant arithmetic and
    # check its sign against the cheap comparison route
    rng = random.Random(31)
    for _ in range(3):
        system = random_system(rng, 6)
        rep = spectrum(system)
        desc = rep.root_table[-1]
        direct = desc[0].add_rational(1) * desc[-1].add_rational(1)
        rhs = -system.beta[1]
        asc = list(reversed(desc))
        cmp_cheap = compare_shifted_product(rep.f_polys[-1], asc, [len(asc) - 1, 0], 1, rhs)
        assert compare_rational(direct, rhs) == cmp_cheap
