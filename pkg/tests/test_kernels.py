"""The compiled and pure kernels must be indistinguishable."""

import random

import pytest

from fftower import _corepy as pure
from fftower import kernels
from fftower.fields import make_field
from fftower.intutil import prime_divisors

try:
    from fftower import _core as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled core not built")


def _random_poly(rng, p, max_len):
    out = [rng.randrange(p) for _ in range(rng.randrange(max_len))]
    while out and out[-1] == 0:
        out.pop()
    return out


@needs_compiled
@pytest.mark.parametrize("p", [3, 5, 13, 101, 65537])
def test_zp_ops_agree(p):
    rng = random.Random(p)
    for _ in range(250):
        a = _random_poly(rng, p, 40)
        b = _random_poly(rng, p, 40)
        assert compiled.zp_mul(a, b, p) == pure.zp_mul(a, b, p)
        if b:
            assert compiled.zp_divmod(a, b, p) == pure.zp_divmod(a, b, p)
            assert compiled.zp_gcd(a, b, p) == pure.zp_gcd(a, b, p)
            n = rng.randrange(500)
            assert compiled.zp_powmod(a or [1], n, b, p) == pure.zp_powmod(a or [1], n, b, p)


@needs_compiled
def test_zp_divmod_reconstructs():
    rng = random.Random(7)
    p = 13
    for _ in range(100):
        a = _random_poly(rng, p, 50)
        b = _random_poly(rng, p, 20)
        if not b:
            continue
        q, r = compiled.zp_divmod(a, b, p)
        back = pure.zp_mul(q, b, p)
        s = [0] * max(len(back), len(r))
        for i, c in enumerate(back):
            s[i] = c
        for i, c in enumerate(r):
            s[i] = (s[i] + c) % p
        while s and s[-1] == 0:
            s.pop()
        assert s == a


@needs_compiled
@pytest.mark.parametrize("p,k", [(5, 1), (5, 2), (3, 4), (13, 2), (5, 4), (3, 6)])
def test_tables_agree(p, k):
    spec = make_field(p, k)
    fac = tuple(prime_divisors(p**k - 1))
    tc = compiled.build_tables(p, k, spec.modulus, fac)
    tp = pure.build_tables(p, k, spec.modulus, fac)
    assert list(tc[0]) == list(tp[0])
    assert list(tc[1]) == list(tp[1])
    assert list(tc[2]) == list(tp[2])
    assert tc[3] == tp[3]


@needs_compiled
def test_count_ranges_agree_and_chunk():
    p, k = 5, 3
    spec = make_field(p, k)
    Q = p**k
    fac = tuple(prime_divisors(Q - 1))
    exp, log, zech, _ = compiled.build_tables(p, k, spec.modulus, fac)
    rng = random.Random(11)
    for m in (2, 3, 4, 6):
        nl = [log[rng.randrange(Q)] for _ in range(4)]
        dl = [log[rng.randrange(1, Q)], log[rng.randrange(Q)]]
        full_c = compiled.count_units_range(log, zech, Q, m, nl, dl, 0, Q)
        full_p = pure.count_units_range(log, zech, Q, m, nl, dl, 0, Q)
        assert full_c == full_p
        # chunked scan must recombine to the same totals
        mids = sorted(rng.randrange(Q) for _ in range(3))
        bounds = [0] + mids + [Q]
        units, zeros, poles = 0, [], []
        for lo, hi in zip(bounds, bounds[1:]):
            u, z, pl = compiled.count_units_range(log, zech, Q, m, nl, dl, lo, hi)
            units += u
            zeros += z
            poles += pl
        assert (units, sorted(zeros), sorted(poles)) == (
            full_c[0], sorted(full_c[1]), sorted(full_c[2]))


def test_exp_log_zech_structure():
    p, k = 5, 2
    spec = make_field(p, k)
    exp, log, zech, gen = kernels.build_tables(p, k, spec.modulus, (2, 3))
    Q = p**k
    assert len(exp) == Q - 1 and len(log) == Q
    assert log[0] == -1 and exp[0] == 1
    assert sorted(exp) == list(range(1, Q))     # bijection onto nonzero encodings
    for j in range(Q - 1):
        assert log[exp[j]] == j
    # zech: 1 + g^j in encoded form, digit trick
    for j in range(0, Q - 1, 7):
        e = exp[j]
        s = e - (p - 1) if e % p == p - 1 else e + 1
        assert zech[j] == (log[s] if s else -1)


def test_pure_gcd_monic_and_euclid():
    rng = random.Random(3)
    p = 7
    for _ in range(60):
        a = _random_poly(rng, p, 25)
        b = _random_poly(rng, p, 25)
        g = pure.zp_gcd(a, b, p)
        if g:
            assert g[-1] == 1
            if a:
                assert pure.zp_divmod(a, g, p)[1] == []
            if b:
                assert pure.zp_divmod(b, g, p)[1] == []
