import random

import pytest

from fftower.errors import InputError
from fftower.poly import Poly, RatFunc, compose_rat, discriminant, gcd, is_irreducible
from fftower.rikuna import (build_rikuna, discriminant_formula, iterate_r,
                            specialize_F, structural_checks, verify_discriminant)


def test_build_53_matches_shanks(sys53):
    F5 = sys53.base
    assert sys53.P == Poly.from_ints(F5, [-1, -3, 0, 1])
    assert sys53.Q == Poly.from_ints(F5, [0, 3, 3])
    assert sys53.omega == F5.el(4)
    assert sys53.disc_const == F5.el(1)


@pytest.mark.parametrize("q,p,e", [(5, 5, 1), (11, 11, 1), (17, 17, 1),
                                   (29, 29, 1), (125, 5, 3)])
def test_shanks_form_all_specializations(q, p, e):
    # F(X, u) = X^3 - 3uX^2 - (3u+3)X - 1 must hold coefficient-by-coefficient
    sys_ = build_rikuna(q, 3)
    base = sys_.base
    assert sys_.P == Poly.from_ints(base, [-1, -3, 0, 1])
    assert sys_.Q == Poly.from_ints(base, [0, 3, 3])
    rng = random.Random(q)
    for _ in range(10):
        u0 = base.from_index(rng.randrange(q))
        expected = Poly.from_elements(
            base, [-base.one, -(3 * u0 + 3), -3 * u0, base.one])
        assert specialize_F(sys_, u0) == expected


def test_build_rejects_bad_inputs():
    with pytest.raises(InputError):
        build_rikuna(7, 3)        # q = 1 mod 3
    with pytest.raises(InputError):
        build_rikuna(9, 3)        # characteristic equals ell
    with pytest.raises(InputError):
        build_rikuna(5, 2)        # ell must be odd
    with pytest.raises(InputError):
        build_rikuna(12, 5)       # not a prime power


def test_invariants_on_built_systems(sys53, sys195, sys137):
    for sys_ in (sys53, sys195, sys137):
        base = sys_.base
        assert sys_.P.degree == sys_.ell
        assert sys_.Q.degree == sys_.ell - 1
        assert gcd(sys_.P, sys_.Q).degree == 0
        quad = Poly.from_elements(base, [base.one, -sys_.omega, base.one])
        assert is_irreducible(quad)
        assert not sys_.disc_const.is_zero()
        # omega really is zeta + zeta^-1
        emb_omega = sys_.zeta + sys_.zeta.inv()
        from fftower.fields import subfield_map
        assert subfield_map(base, sys_.ext).embed(sys_.omega) == emb_omega


def test_specialize_examples(sys53):
    F5 = sys53.base
    assert specialize_F(sys53, F5.el(3)) == Poly.from_ints(F5, [4, 3, 1, 1])
    assert specialize_F(sys53, F5.zero) == sys53.P
    # at u0 = zeta the fiber degenerates: F(zeta, zeta) = 0 and disc vanishes
    Fz = specialize_F(sys53, sys53.zeta)
    assert Fz.evaluate(sys53.zeta).is_zero()
    assert discriminant(Fz).is_zero()


def test_verify_discriminant(sys53, sys195):
    F5 = sys53.base
    assert verify_discriminant(sys53, F5.el(3))
    both = discriminant(specialize_F(sys53, sys53.zeta))
    assert both.is_zero() and discriminant_formula(sys53, sys53.zeta).is_zero()
    rng = random.Random(20)
    for _ in range(20):
        u0 = sys195.base.from_index(rng.randrange(19))
        assert verify_discriminant(sys195, u0)


def test_disc_value_example(sys53):
    # disc F(X, 3) = disc_const * (3^2 - 4*3 + 1)^2 = 1 * 3^2 = 4 over F_5
    F5 = sys53.base
    assert discriminant(specialize_F(sys53, F5.el(3))) == F5.el(4)


@pytest.mark.parametrize("q,ell", [(5, 3), (11, 3), (17, 3), (23, 3), (29, 3),
                                   (41, 3), (47, 3), (19, 5), (29, 5), (13, 7), (41, 7)])
def test_disc_nonzero_for_all_base_points(q, ell):
    # u^2 - omega*u + 1 has no root in F_q, so disc F(X, u0) never vanishes
    sys_ = build_rikuna(q, ell)
    for u0 in sys_.base.elements():
        assert not discriminant(specialize_F(sys_, u0)).is_zero()
        assert verify_discriminant(sys_, u0)


def test_iterate_examples(sys53):
    F5 = sys53.base
    x0 = iterate_r(sys53, 0)
    assert x0 == RatFunc.identity(F5)
    x1 = iterate_r(sys53, 1)
    assert x1 == RatFunc(sys53.P, sys53.Q)
    assert iterate_r(sys53, 2).degree == 9
    with pytest.raises(InputError):
        iterate_r(sys53, 25)


@pytest.mark.parametrize("q,ell,jmax", [(5, 3, 4), (19, 5, 4), (13, 7, 4)])
def test_iterate_degrees(q, ell, jmax):
    sys_ = build_rikuna(q, ell)
    for j in range(jmax + 1):
        assert iterate_r(sys_, j).degree == ell**j


def test_iteration_satisfies_defining_equation(sys53):
    # F(X_{j-1}, X_j) = 0 as a rational-function identity
    for j in (1, 2, 3):
        prev = iterate_r(sys53, j - 1)
        cur = iterate_r(sys53, j)
        lhs = compose_rat(RatFunc.from_poly(sys53.P), prev)
        rhs = cur * compose_rat(RatFunc.from_poly(sys53.Q), prev)
        diff = lhs + rhs * sys53.base.el(-1)
        assert diff.num.is_zero()


def test_structural_checks(sys53, sys195, sys137):
    for sys_ in (sys53, sys195, sys137):
        rep = structural_checks(sys_, samples=5, seed=3)
        assert rep.all_ok, rep
        assert rep.sampled_u0 == 5


def test_r_fixes_zeta_directly(sys53):
    Pz = sys53.P.evaluate(sys53.zeta)
    Qz = sys53.Q.evaluate(sys53.zeta)
    assert Pz == sys53.zeta * Qz
