import math

import pytest

from fftower.errors import BudgetError, InputError, VerificationError
from fftower.fields import make_field
from fftower.poly import Poly, RatFunc, factor
from fftower.tower import KummerCurve, build_tower, genus_riemann_hurwitz
from fftower.zeta import (LPolynomial, PointCounts, class_number,
                          count_degree_one_places, indivisibility_verdict,
                          l_polynomial, naive_affine_count, verdict_for_tower,
                          weil_bound_ok)


@pytest.fixture(scope="module")
def elliptic():
    F5 = make_field(5)
    return KummerCurve(2, RatFunc(Poly.from_ints(F5, [0, 1, 0, 1]), Poly.one(F5)))


def test_rational_curve_counts():
    F5 = make_field(5)
    line = KummerCurve(2, RatFunc(Poly.x(F5), Poly.one(F5)))
    for i in (1, 2, 3):
        assert count_degree_one_places(line, i) == 5**i + 1


def test_headline_curve_n1(tower5321):
    # t in {0, 4, inf} are branch (one place each); t in {1,2,3} give the
    # non-square value 2, contributing nothing
    f = tower5321.curve.f
    F5 = f.spec
    for t in (1, 2, 3):
        assert f.evaluate(F5.el(t)) == F5.el(2)
    assert count_degree_one_places(tower5321.curve, 1) == 3


def test_elliptic_pipeline(elliptic):
    assert genus_riemann_hurwitz(elliptic) == 1
    n1 = count_degree_one_places(elliptic, 1)
    # brute affine count plus one point at infinity (oracle)
    F5 = make_field(5)
    brute = 1 + sum(1 for x in F5.elements() for y in F5.elements()
                    if y * y == x**3 + x)
    assert n1 == brute == 4
    L = l_polynomial(PointCounts(5, (n1,)), 1, 5)
    assert L.coeffs == (1, -2, 5)
    assert class_number(L) == brute          # h = #E(F_5)
    assert L.predicted_count(2) == count_degree_one_places(elliptic, 2)


def test_naive_oracle_agreement(tower5321, elliptic):
    for curve in (tower5321.curve, elliptic):
        for i in (1, 2, 3):
            assert naive_affine_count(curve, i) == count_degree_one_places(curve, i)


def test_genus_zero_l_polynomial():
    L = l_polynomial(PointCounts(5, ()), 0, 5)
    assert L.coeffs == (1,) and class_number(L) == 1


def test_l_polynomial_checks_extra_counts(elliptic):
    n1 = count_degree_one_places(elliptic, 1)
    n2 = count_degree_one_places(elliptic, 2)
    L = l_polynomial(PointCounts(5, (n1, n2)), 1, 5)
    assert L.coeffs == (1, -2, 5)
    with pytest.raises(VerificationError):
        l_polynomial(PointCounts(5, (n1, n2 + 1)), 1, 5)


def test_wrong_genus_is_caught_by_deep_counts(elliptic):
    # with only g counts a wrong genus can slip through the reconstruction,
    # but its predictions diverge from the true curve immediately
    n1 = count_degree_one_places(elliptic, 1)
    n2 = count_degree_one_places(elliptic, 2)
    wrong = l_polynomial(PointCounts(5, (n1, n2)), 2, 5)
    n3 = count_degree_one_places(elliptic, 3)
    assert wrong.predicted_count(3) != n3


def test_functional_equation_and_moduli(tower5321):
    rep = verdict_for_tower(tower5321)
    L = LPolynomial(rep.l_coeffs, rep.genus_rh, 5)
    assert L.functional_equation_ok()
    assert L.weil_moduli_ok()
    assert L.coeffs[-1] == 5**rep.genus_rh
    for i, n_i in enumerate(rep.counts, start=1):
        assert weil_bound_ok(n_i, 5, i, rep.genus_rh)


def test_headline_verdict_5321(tower5321):
    rep = verdict_for_tower(tower5321, deep_check=True)
    assert rep.genus_rh == rep.genus_l == 2
    assert rep.counts == (3, 33)
    assert rep.l_coeffs == (1, -3, 8, -15, 25)
    assert rep.h == 16
    assert not rep.ell_divides
    assert rep.deep_checked_through == 4


def test_kummer_splitting_against_factorization(tower5321):
    # at each branch point the counting rule must match the places read off
    # an actual factorization of y^d - u over the ambient field
    from fftower.zeta import _local_place_count
    curve = tower5321.curve
    for i in (1, 2):
        big = make_field(5, i)
        from fftower.fields import subfield_map
        emb = subfield_map(curve.spec, big)
        num = Poly.from_elements(big, [emb.embed(c) for c in curve.f.num.coeffs])
        den = Poly.from_elements(big, [emb.embed(c) for c in curve.f.den.coeffs])
        for t in big.elements():
            nv, dv = num.evaluate(t), den.evaluate(t)
            if nv.is_zero() or dv.is_zero():
                linear = Poly.from_elements(big, [-t, big.one])
                a = b = 0
                nn, dd = num, den
                while (nn % linear).is_zero():
                    nn, a = nn // linear, a + 1
                while (dd % linear).is_zero():
                    dd, b = dd // linear, b + 1
                v = a - b
                d = math.gcd(curve.m, v)
                u = nn.evaluate(t) / dd.evaluate(t)
                binom = Poly.from_elements(big, [-u] + [big.zero] * (d - 1) + [big.one])
                pieces = factor(binom)
                assert sum(g.degree * mult for g, mult in pieces) == d
                degree_one = sum(1 for g, mult in pieces if g.degree == 1)
                assert degree_one == _local_place_count(num, den, t, curve.m)


def test_indivisibility_verdict_depth(tower5321):
    reports = indivisibility_verdict(tower5321, depth=3)
    assert [r.status for r in reports] == ["ok", "ok", "budget"]
    assert [r.genus_rh for r in reports] == [2, 8, 26]
    assert all(not r.ell_divides for r in reports)
    assert reports[1].h == 283456
    assert reports[2].budget_note


def test_supersingular_type_curve_29_5_2():
    # L = (1 - 29 u^2)^4: multiplicity-4 reciprocal roots, exactly on the
    # Weil circle; exercises the squarefree deflation in the moduli check
    spec = build_tower(29, 5, 2, 1)
    rep = verdict_for_tower(spec)
    assert rep.counts == (30, 610, 24390, 700554)
    assert rep.l_coeffs == (1, 0, -116, 0, 5046, 0, -97556, 0, 707281)
    assert rep.h == 28**4 == 614656
    assert not rep.ell_divides
    L = LPolynomial(rep.l_coeffs, 4, 29)
    assert L.weil_moduli_ok()


def test_extension_base_field_9_5_2():
    # q = 9 routes every count through F_{3^(2i)} subfield embeddings
    spec = build_tower(9, 5, 2, 1)
    rep = verdict_for_tower(spec)
    assert rep.genus_rh == 4
    assert rep.h == 4496
    assert not rep.ell_divides


def test_budget_refusal():
    spec = build_tower(5, 3, 2, 3)
    with pytest.raises(BudgetError):
        verdict_for_tower(spec)


def test_count_input_validation(tower5321):
    with pytest.raises(InputError):
        count_degree_one_places(tower5321.curve, 0)
