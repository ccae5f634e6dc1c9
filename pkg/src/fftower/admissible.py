"""Admissibility of prime powers q for a given (ell, m).

Admissible means: q = -1 mod ell, q = 1 mod m0 (m0 the radical of the
prime-to-ell part of m), and q > (C + 4)^2 where C = 2^t * m0 / phi(m0).
The two congruences collapse to the single residue -1 + 2*ell*ell' mod
ell*m0 with ell' the inverse of ell mod m0. All verdicts are computed with
exact rationals; square roots never appear (compare squares instead).

The threshold is sufficient, not necessary: for ell = 3, m = 2 it demands
q > 64 while direct search succeeds for every congruent q >= 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .intutil import (euler_phi, factorize, is_prime, multiplicative_order,
                      prime_divisors, prime_power_base, radical)
from .poly import count_monic_irreducibles


@dataclass(frozen=True)
class MDecomposition:
    """m = ell^t_ell * m1 with ell coprime to m1; m0 = radical of m1."""

    m: int
    ell: int
    t_ell: int
    m1: int
    m0: int
    t_rad: int      # number of distinct primes dividing m1
    phi_m0: int


def decompose_m(m: int, ell: int) -> MDecomposition:
    if m <= 1:
        raise InputError(f"m must be > 1, got {m}")
    if ell == 2 or not is_prime(ell):
        raise InputError(f"ell = {ell} must be an odd prime")
    t_ell = 0
    m1 = m
    while m1 % ell == 0:
        t_ell += 1
        m1 //= ell
    m0 = radical(m1) if m1 > 1 else 1
    return MDecomposition(
        m=m, ell=ell, t_ell=t_ell, m1=m1, m0=m0,
        t_rad=len(factorize(m1)) if m1 > 1 else 0,
        phi_m0=euler_phi(m0),
    )


def threshold_constant(dec: MDecomposition) -> Fraction:
    """C = 2^t * m0 / phi(m0) as an exact rational."""
    return Fraction(2**dec.t_rad * dec.m0, dec.phi_m0)


def progression_residue(dec: MDecomposition) -> tuple[int, int]:
    """(residue, modulus) with q in the progression iff q = residue mod modulus."""
    ell, m0 = dec.ell, dec.m0
    if m0 == 1:
        return ell - 1, ell
    ell_inv = pow(ell, -1, m0)
    modulus = ell * m0
    residue = (-1 + 2 * ell * ell_inv) % modulus
    # cross-check the single residue against the congruence pair
    if residue % ell != ell - 1 or residue % m0 != 1:
        raise AssertionError("progression residue failed its CRT cross-check")
    return residue, modulus


@dataclass(frozen=True)
class AdmissibilityReport:
    q: int
    ell: int
    m: int
    decomposition: MDecomposition
    C: Fraction
    threshold: Fraction              # (C + 4)^2
    residue: int
    modulus: int
    q_is_prime_power: bool
    congruent_mod_ell: bool
    congruent_mod_m0: bool
    exceeds_threshold: bool
    admissible: bool
    notes: tuple = field(default=())


def is_admissible(q: int, ell: int, m: int) -> tuple[bool, AdmissibilityReport]:
    dec = decompose_m(m, ell)
    if prime_power_base(q) is None:
        raise InputError(f"q = {q} is not a prime power")
    C = threshold_constant(dec)
    threshold = (C + 4) ** 2
    residue, modulus = progression_residue(dec)
    cong_ell = q % ell == ell - 1
    cong_m0 = q % dec.m0 == 1 % dec.m0
    if (cong_ell and cong_m0) != (q % modulus == residue):
        raise AssertionError("congruence pair disagrees with the single residue")
    exceeds = Fraction(q) > threshold
    notes = []
    if ell == 3 and dec.m0 == 2:
        notes.append(
            "threshold 64 is conservative here: direct search succeeds for "
            "every congruent q >= 5")
    verdict = cong_ell and cong_m0 and exceeds
    report = AdmissibilityReport(
        q=q, ell=ell, m=m, decomposition=dec, C=C, threshold=threshold,
        residue=residue, modulus=modulus, q_is_prime_power=True,
        congruent_mod_ell=cong_ell, congruent_mod_m0=cong_m0,
        exceeds_threshold=exceeds, admissible=verdict, notes=tuple(notes))
    return verdict, report


@dataclass(frozen=True)
class CorollaryReport:
    """Exact evaluation of the small-prime admissibility shortcuts.

    For m0 = p prime:    RHS = p/(p-1)^2 + 4/(p-1) + 4/p, verdict RHS <= ell/4.
    For composite m0:    RHS = 2^(2t-4) m0/phi(m0)^2 + 2^(t-1)/phi(m0) + 1/m0,
                         verdict RHS <= ell/16.
    Either way the direct test ell*m0 >= (C+4)^2 is also evaluated.
    """

    ell: int
    m0: int
    case: str                 # "prime" | "composite" | "trivial"
    rhs: Fraction | None
    rhs_bound: Fraction | None
    rhs_ok: bool | None
    direct_ok: bool           # ell*m0 >= (C+4)^2


def corollary_checks(ell: int, m0: int) -> CorollaryReport:
    if m0 != radical(m0):
        raise InputError(f"m0 = {m0} is not squarefree")
    primes = prime_divisors(m0) if m0 > 1 else []
    t = len(primes)
    C = Fraction(2**t * m0, euler_phi(m0)) if m0 > 1 else Fraction(1)
    direct_ok = Fraction(ell * m0) >= (C + 4) ** 2
    if t == 1:
        p = m0
        rhs = Fraction(p, (p - 1) ** 2) + Fraction(4, p - 1) + Fraction(4, p)
        bound = Fraction(ell, 4)
        return CorollaryReport(ell, m0, "prime", rhs, bound, rhs <= bound, direct_ok)
    if t >= 2:
        phi = euler_phi(m0)
        rhs = (Fraction(2 ** (2 * t - 4) * m0, phi * phi)
               + Fraction(2 ** (t - 1), phi) + Fraction(1, m0))
        bound = Fraction(ell, 16)
        return CorollaryReport(ell, m0, "composite", rhs, bound, rhs <= bound, direct_ok)
    return CorollaryReport(ell, m0, "trivial", None, None, None, direct_ok)


@dataclass(frozen=True)
class Eq5Report:
    """Big-integer divisibility certificate for the cyclic-layer argument.

    With e the order of q mod ell, (q^(n*e) - 1)/(q - 1) factors as
    ((q^(n*e) - 1)/(q^e - 1)) * ((q^e - 1)/(q - 1)), both integers, and ell
    divides the second factor, hence the product.
    """

    q: int
    ell: int
    n: int
    e: int
    total: int                # (q^(ne) - 1) / (q - 1)
    factor_big: int           # (q^(ne) - 1) / (q^e - 1)
    factor_small: int         # (q^e - 1) / (q - 1)
    ell_divides_small: bool
    ell_divides_total: bool
    irreducible_count: int    # monic irreducibles of degree ne over F_q
    place_exists: bool

    @property
    def verified(self) -> bool:
        return self.ell_divides_small and self.ell_divides_total and self.place_exists


def eq5_certificate(q: int, ell: int, n: int) -> Eq5Report:
    if prime_power_base(q) is None:
        raise InputError(f"q = {q} is not a prime power")
    if not is_prime(ell):
        raise InputError(f"ell = {ell} must be prime")
    if q % ell == 0:
        raise InputError("ell divides q")
    if (q - 1) % ell == 0:
        raise InputError(f"ell = {ell} divides q - 1 = {q - 1}; hypothesis violated")
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    e = multiplicative_order(q, ell)
    if not 1 < e <= ell - 1:
        raise AssertionError(f"order e = {e} outside (1, ell-1] for q={q}, ell={ell}")
    ne = n * e
    num = q**ne - 1
    assert num % (q - 1) == 0 and num % (q**e - 1) == 0 and (q**e - 1) % (q - 1) == 0
    total = num // (q - 1)
    factor_big = num // (q**e - 1)
    factor_small = (q**e - 1) // (q - 1)
    count = count_monic_irreducibles(q, ne)
    return Eq5Report(
        q=q, ell=ell, n=n, e=e, total=total,
        factor_big=factor_big, factor_small=factor_small,
        ell_divides_small=factor_small % ell == 0,
        ell_divides_total=total % ell == 0,
        irreducible_count=count,
        place_exists=count > 0,
    )


@dataclass(frozen=True)
class CandidateRow:
    q: int
    congruent: bool
    admissible: bool


def enumerate_candidates(ell: int, m: int, q_max: int) -> list[CandidateRow]:
    """All prime powers q <= q_max in the progression, tagged by admissibility."""
    if q_max > 10**7:
        raise InputError(f"q_max = {q_max} beyond the sieve bound 10^7")
    dec = decompose_m(m, ell)
    residue, modulus = progression_residue(dec)
    C = threshold_constant(dec)
    threshold = (C + 4) ** 2
    out = []
    for q in range(max(residue, 2), q_max + 1, modulus):
        if prime_power_base(q) is None:
            continue
        out.append(CandidateRow(q=q, congruent=True, admissible=Fraction(q) > threshold))
    return out


def kummer_cyclic(q: int, m: int) -> bool:
    """Whether F_q contains the m-th roots of unity, making Z^m = f cyclic (Kummer)."""
    return (q - 1) % m == 0
