"""Cross-module property tests that exercise the deeper counting machinery."""

import random

from fftower.fields import make_field
from fftower.gammasearch import complete_square, find_gamma, power_sets
from fftower.intutil import prime_power_base, radical
from fftower.poly import Poly, factor_oracle, is_irreducible
from fftower.rikuna import build_rikuna
from fftower.zeta import count_degree_one_places


def test_three_prime_inclusion_exclusion():
    # m = 30 needs 2, 3, 5 all dividing q - 1 with q = -1 mod 7: q = 181
    sys_ = build_rikuna(181, 7)
    comp = complete_square(sys_)
    rep = power_sets(comp.d, 30)
    assert rep.squarefree_divisors == (2, 3, 5, 6, 10, 15, 30)
    assert rep.t_size == rep.t_size_inclusion_exclusion == 22
    assert rep.hasse_bounds_ok and rep.s_k_bounds_ok and rep.t_bound_ok
    cert = find_gamma(sys_, 30)
    assert cert.verified
    assert set(cert.witnesses) == {2, 3, 5}


def test_composite_m_scan_over_progression():
    # every ell = 3 progression member up to 199 whose q - 1 admits the primes
    checked = 0
    for q in range(5, 200):
        if q % 6 != 5 or prime_power_base(q) is None:
            continue
        sys_ = None
        for m in (10, 14, 26):
            if (q - 1) % radical(m):
                continue
            sys_ = sys_ or build_rikuna(q, 3)
            comp = complete_square(sys_)
            rep = power_sets(comp.d, m)          # internal bounds all asserted
            assert rep.t_size == rep.t_size_inclusion_exclusion
            checked += 1
    assert checked >= 10


def test_coprime_powers_combine():
    # being an n1-th and an n2-th power with gcd(n1, n2) = 1 is the same as
    # being an (n1*n2)-th power, in every multiplicative group tested
    from fftower.fields import is_kth_power
    from math import gcd
    for p, e in ((7, 1), (13, 1), (3, 2), (5, 2)):
        spec = make_field(p, e)
        for n1, n2 in ((2, 3), (3, 4), (2, 5), (3, 5)):
            assert gcd(n1, n2) == 1
            for a in spec.elements():
                both = is_kth_power(a, n1) and is_kth_power(a, n2)
                assert both == is_kth_power(a, n1 * n2)


def test_counting_independent_of_partitioning(tower5321):
    for i in (2, 3, 4):
        serial = count_degree_one_places(tower5321.curve, i, threads=1)
        chunked = count_degree_one_places(tower5321.curve, i, threads=3)
        assert serial == chunked


def test_irreducible_oracle_f25_degree2_exhaustive():
    spec = make_field(5, 2)
    for idx in range(spec.q**2):
        coeffs = [spec.from_index((idx // spec.q**j) % spec.q) for j in range(2)]
        f = Poly.from_elements(spec, coeffs + [spec.one])
        fac = factor_oracle(f)
        assert is_irreducible(f) == (len(fac) == 1 and fac[0][1] == 1)


def test_irreducible_oracle_f25_high_degree_sampled():
    spec = make_field(5, 2)
    rng = random.Random(25)
    for deg, samples in ((3, 700), (4, 400)):
        for _ in range(samples):
            coeffs = [spec.from_index(rng.randrange(625)) for _ in range(deg)]
            f = Poly.from_elements(spec, coeffs + [spec.one])
            fac = factor_oracle(f)
            assert is_irreducible(f) == (len(fac) == 1 and fac[0][1] == 1)
