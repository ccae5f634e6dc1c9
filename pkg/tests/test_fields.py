import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fftower.errors import InputError
from fftower.fields import (is_kth_power, make_field,
                            norm_to_subfield, primitive_root_of_unity,
                            subfield_map)
from fftower.intutil import is_prime


# -- construction ------------------------------------------------------------

def test_prime_field():
    F5 = make_field(5)
    assert F5.q == 5 and F5.modulus == (0, 1)


def test_canonical_modulus_f25():
    F25 = make_field(5, 2)
    assert F25.modulus == (2, 0, 1)          # x^2 + 2, first irreducible in order


def test_nonprime_p_rejected():
    with pytest.raises(InputError):
        make_field(4, 1)


def test_oversize_field_rejected():
    with pytest.raises(InputError):
        make_field(2, 64)


def test_same_inputs_same_modulus():
    a = make_field(7, 3)
    b = make_field(7, 3)
    assert a is b and a.modulus == b.modulus


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (7, 2), (11, 2)])
def test_canonical_modulus_is_first_irreducible(p, e):
    # oracle: scan candidates in canonical order, reject any with a root or
    # a low-degree divisor, by brute force
    spec = make_field(p, e)

    def brute_irreducible(coeffs):
        from fftower.poly import Poly, factor_oracle
        f = Poly.from_ints(make_field(p), coeffs)
        return len(factor_oracle(f)) == 1 and factor_oracle(f)[0][1] == 1

    for idx in range(p**e):
        cand = [(idx // p**j) % p for j in range(e)] + [1]
        if brute_irreducible(cand):
            assert spec.modulus == tuple(cand)
            break
        assert spec.modulus != tuple(cand)


# -- arithmetic --------------------------------------------------------------

def test_inverse_example(F5):
    assert F5.el(2).inv() == F5.el(3)


def test_zeta_cube_example(F25):
    z = primitive_root_of_unity(F25, 3)
    assert z.coeffs == (2, 1)                 # 2 + s, s^2 = -2
    assert z**3 == F25.one
    # mul(2+s, 2+4s) = zeta * zeta^-1 = 1
    assert z * z.inv() == F25.one
    assert z.inv().coeffs == (2, 4)


def test_division_and_errors(F5):
    assert F5.el(3) / F5.el(2) == F5.el(4)
    with pytest.raises(ZeroDivisionError):
        F5.zero.inv()
    with pytest.raises(ValueError):
        F5.el(1) + make_field(7).el(1)


_FIELDS = [(3, 1), (5, 1), (5, 2), (7, 1), (3, 3), (13, 1)]


@st.composite
def field_elements(draw, nonzero=False):
    p, e = draw(st.sampled_from(_FIELDS))
    spec = make_field(p, e)
    lo = 1 if nonzero else 0
    return spec.from_index(draw(st.integers(min_value=lo, max_value=spec.q - 1)))


@st.composite
def element_pairs(draw):
    p, e = draw(st.sampled_from(_FIELDS))
    spec = make_field(p, e)
    i = draw(st.integers(min_value=0, max_value=spec.q - 1))
    j = draw(st.integers(min_value=0, max_value=spec.q - 1))
    return spec.from_index(i), spec.from_index(j)


@given(field_elements(nonzero=True))
def test_inverse_axiom(a):
    assert a * a.inv() == a.spec.one
    assert a ** (a.spec.q - 1) == a.spec.one


@given(element_pairs())
def test_ring_axioms(pair):
    a, b = pair
    assert a + b == b + a
    assert a * b == b * a
    assert a - b == -(b - a)
    assert (a + b) * a == a * a + b * a


@given(element_pairs(), st.integers(min_value=0, max_value=40))
def test_pow_matches_repeated_product(pair, n):
    a, _ = pair
    acc = a.spec.one
    for _ in range(n):
        acc = acc * a
    assert a**n == acc


# -- norms -------------------------------------------------------------------

def test_norm_examples(F5, F25):
    z = primitive_root_of_unity(F25, 3)
    assert norm_to_subfield(z, 1) == F5.one
    a = F25.el(1) + 3 * z
    assert norm_to_subfield(a, 1) == F5.el(2)
    # identity on the prime field
    assert norm_to_subfield(F5.el(3), 1) == F5.el(3)


def test_norm_multiplicative(F25):
    rng = random.Random(9)
    for _ in range(60):
        a = F25.from_index(rng.randrange(25))
        b = F25.from_index(rng.randrange(25))
        assert norm_to_subfield(a * b, 1) == norm_to_subfield(a, 1) * norm_to_subfield(b, 1)


def test_norm_degree_must_divide(F25):
    big = make_field(5, 6)
    with pytest.raises(InputError):
        norm_to_subfield(big.one, 4)


# -- k-th powers -------------------------------------------------------------

def test_kth_power_examples(F5):
    assert not is_kth_power(F5.el(2), 2)
    assert is_kth_power(F5.zero, 7)           # zero counts as a power
    assert is_kth_power(F5.el(4), 2)
    with pytest.raises(InputError):
        is_kth_power(F5.one, 0)


def test_kth_power_matches_enumeration_everywhere():
    # every prime power q <= 49, every k <= 12
    qs = [q for q in range(2, 50)
          if any(is_prime(p) and p**e == q
                 for p in range(2, 50) for e in range(1, 6))]
    for q in qs:
        p = next(p for p in range(2, q + 1) if is_prime(p) and q % p == 0)
        e = 0
        t = q
        while t > 1:
            t //= p
            e += 1
        spec = make_field(p, e)
        for k in range(1, 13):
            powers = {spec.index(x**k) for x in spec.elements()}
            for a in spec.elements():
                assert is_kth_power(a, k) == (spec.index(a) in powers), (q, k)


# -- roots of unity ----------------------------------------------------------

def test_primitive_root_examples(F25):
    z = primitive_root_of_unity(F25, 3)
    assert z.coeffs == (2, 1)
    assert primitive_root_of_unity(make_field(7), 3) == make_field(7).el(2)
    with pytest.raises(InputError):
        primitive_root_of_unity(make_field(5), 3)


@pytest.mark.parametrize("q,p,e,ell", [(5, 5, 1, 3), (11, 11, 1, 3), (19, 19, 1, 5),
                                       (13, 13, 1, 7), (9, 3, 2, 5)])
def test_omega_descends_to_base(q, p, e, ell):
    # ell | q^2 - 1 but not q - 1: zeta lives upstairs, omega downstairs
    assert (q**2 - 1) % ell == 0 and (q - 1) % ell != 0
    ext = make_field(p, 2 * e)
    z = primitive_root_of_unity(ext, ell)
    omega = z + z.inv()
    assert omega.frobenius(e) == omega        # fixed by x -> x^q
    sub = make_field(p, e)
    emb = subfield_map(sub, ext)
    down = emb.section(omega)
    assert emb.embed(down) == omega


def test_subfield_map_is_homomorphism():
    sub = make_field(3, 2)
    amb = make_field(3, 6)
    emb = subfield_map(sub, amb)
    rng = random.Random(4)
    for _ in range(40):
        a = sub.from_index(rng.randrange(9))
        b = sub.from_index(rng.randrange(9))
        assert emb.embed(a * b) == emb.embed(a) * emb.embed(b)
        assert emb.embed(a + b) == emb.embed(a) + emb.embed(b)
        assert emb.section(emb.embed(a)) == a
    with pytest.raises(ValueError):
        # the residue class of x generates F_729 over F_3, so it is not in F_9
        emb.section(amb.from_index(3))
