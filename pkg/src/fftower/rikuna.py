"""Rikuna's cyclic polynomial family over F_q and its iterated rational map.

For an odd prime ell and a primitive ell-th root of unity zeta (living in
F_{q^2} when q = -1 mod ell), the degree-ell polynomial

    P(X) = (zeta^-1 - zeta)^-1 (zeta^-1 (X - zeta)^ell - zeta (X - zeta^-1)^ell)

and its degree-(ell-1) companion Q(X) have coefficients in F_q, and
F(X, u) = P(X) - u Q(X) cuts out a cyclic degree-ell extension of F_q(u).
For ell = 3 this is Shanks' simplest cubic X^3 - 3uX^2 - (3u+3)X - 1.
Everything is expanded in F_{q^2}[X] and then verified to descend to F_q;
nothing is taken on faith from the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .errors import InputError, VerificationError
from .fields import (FieldElement, FieldSpec, make_field,
                     primitive_root_of_unity, subfield_map)
from .intutil import is_prime, prime_power_base
from .poly import (Poly, RatFunc, compose_rat, discriminant, gcd,
                   is_irreducible, powmod, roots_in_field)

#: iterate_r refuses to build maps beyond this projective degree
MAX_ITERATE_DEGREE = 10_000


@dataclass(frozen=True)
class RikunaSystem:
    ell: int
    base: FieldSpec          # F_q
    ext: FieldSpec           # F_{q^2}
    zeta: FieldElement       # in ext, order ell
    omega: FieldElement      # zeta + zeta^-1, in base
    P: Poly                  # degree ell, over base
    Q: Poly                  # degree ell - 1, over base
    disc_const: FieldElement  # ell^ell (4 - omega^2)^((ell-1)(ell-2)/2), in base

    @property
    def q(self) -> int:
        return self.base.q

    def r(self) -> RatFunc:
        return RatFunc(self.P, self.Q)


def _binomial_power(spec: FieldSpec, root: FieldElement, ell: int) -> Poly:
    """(X - root)^ell expanded over spec."""
    coeffs = []
    binom = 1
    for k in range(ell + 1):
        # coefficient of X^k is C(ell, k) * (-root)^(ell - k)
        coeffs.append(spec.el(binom) * (-root) ** (ell - k))
        binom = binom * (ell - k) // (k + 1)
    return Poly.from_elements(spec, coeffs)


def build_rikuna(q: int, ell: int) -> RikunaSystem:
    """Construct and fully check the system for (q, ell); q = -1 mod ell required."""
    pp = prime_power_base(q)
    if pp is None:
        raise InputError(f"q = {q} is not a prime power")
    p, e = pp
    if ell == 2 or not is_prime(ell):
        raise InputError(f"ell = {ell} must be an odd prime")
    if p == ell:
        raise InputError(f"characteristic {p} divides ell = {ell}")
    if q % ell != ell - 1:
        raise InputError(
            f"q = {q} is {q % ell} mod {ell}; the construction needs q = -1 mod ell")

    base = make_field(p, e)
    ext = make_field(p, 2 * e)
    zeta = primitive_root_of_unity(ext, ell)
    zinv = zeta.inv()
    unit = (zinv - zeta).inv()

    pow_z = _binomial_power(ext, zeta, ell)
    pow_zi = _binomial_power(ext, zinv, ell)
    P_ext = (pow_z * zinv - pow_zi * zeta) * unit
    Q_ext = (pow_z - pow_zi) * unit

    sect = subfield_map(base, ext)
    try:
        P = Poly.from_elements(base, [sect.section(c) for c in P_ext.coeffs])
        Q = Poly.from_elements(base, [sect.section(c) for c in Q_ext.coeffs])
    except ValueError as exc:
        raise VerificationError(f"coefficients failed to descend to F_{q}: {exc}") from None
    omega = sect.section(zeta + zinv)

    if P.degree != ell or Q.degree != ell - 1:
        raise VerificationError(f"degree check failed: deg P = {P.degree}, deg Q = {Q.degree}")
    quad = Poly.from_elements(base, [base.one, -omega, base.one])
    if not is_irreducible(quad):
        raise VerificationError("u^2 - omega*u + 1 is reducible over F_q")
    if gcd(P, Q).degree != 0:
        raise VerificationError("P and Q share a factor")

    four_minus = base.el(4) - omega * omega
    disc_const = base.el(ell) ** ell * four_minus ** ((ell - 1) * (ell - 2) // 2)
    if disc_const.is_zero():
        raise VerificationError("discriminant constant vanished")
    return RikunaSystem(ell, base, ext, zeta, omega, P, Q, disc_const)


def specialize_F(sys: RikunaSystem, u0: FieldElement) -> Poly:
    """F(X, u0) = P(X) - u0 Q(X) over the field of u0."""
    if u0.spec == sys.base:
        return sys.P - Poly.constant(u0) * sys.Q
    P = sys.P.embed(u0.spec)
    Q = sys.Q.embed(u0.spec)
    return P - Poly.constant(u0) * Q


def discriminant_formula(sys: RikunaSystem, u0: FieldElement) -> FieldElement:
    """Closed form disc F(X, u0) = disc_const * (u0^2 - omega u0 + 1)^(ell-1)."""
    if u0.spec == sys.base:
        dc, om = sys.disc_const, sys.omega
    else:
        emb = subfield_map(sys.base, u0.spec)
        dc, om = emb.embed(sys.disc_const), emb.embed(sys.omega)
    return dc * (u0 * u0 - om * u0 + u0.spec.one) ** (sys.ell - 1)


def verify_discriminant(sys: RikunaSystem, u0: FieldElement) -> bool:
    """Resultant-computed discriminant against the closed form; exact equality."""
    return discriminant(specialize_F(sys, u0)) == discriminant_formula(sys, u0)


def iterate_r(sys: RikunaSystem, j: int) -> RatFunc:
    """The j-fold self-composition of r = P/Q applied to T; degree ell^j."""
    if j < 0:
        raise InputError(f"iteration count must be >= 0, got {j}")
    if sys.ell**j > MAX_ITERATE_DEGREE:
        raise InputError(
            f"iterate degree {sys.ell}^{j} exceeds the bound {MAX_ITERATE_DEGREE}")
    x = RatFunc.identity(sys.base)
    r = sys.r()
    for _ in range(j):
        x = compose_rat(r, x)
    return x


@dataclass(frozen=True)
class RikunaChecksReport:
    q_separable: bool
    r_fixes_zeta: bool
    sampled_u0: int
    splitting_ok: bool
    split_failures: tuple

    @property
    def all_ok(self) -> bool:
        return self.q_separable and self.r_fixes_zeta and self.splitting_ok


def structural_checks(sys: RikunaSystem, samples: int = 8, seed: int = 0) -> RikunaChecksReport:
    """Separability of Q, the fixed point r(zeta) = zeta, and cyclic splitting.

    For sampled u0 in F_q with F(X, u0) irreducible, a degree-ell irreducible
    must have no root in F_q and exactly ell distinct roots in F_{q^ell};
    both are checked through gcds with x^(q^d) - x.
    """
    q_sep = gcd(sys.Q, sys.Q.derivative()).degree == 0

    Pz = sys.P.evaluate(sys.zeta)
    Qz = sys.Q.evaluate(sys.zeta)
    fixes = (Pz == sys.zeta * Qz) and not Qz.is_zero()

    rng = Random(seed)
    failures = []
    tried = 0
    attempts = 0
    while tried < samples and attempts < 40 * samples:
        attempts += 1
        u0 = sys.base.from_index(rng.randrange(sys.q))
        F = specialize_F(sys, u0)
        if not is_irreducible(F):
            continue
        tried += 1
        if roots_in_field(F) != 0:
            failures.append((u0, "unexpected root in F_q"))
            continue
        big = make_field(sys.base.p, sys.base.e * sys.ell)
        Fb = F.embed(big)
        x = Poly.x(big)
        nroots = gcd(powmod(x, big.q, Fb) - x, Fb).degree
        if nroots != sys.ell:
            failures.append((u0, f"{nroots} roots over F_q^ell, expected {sys.ell}"))
    return RikunaChecksReport(
        q_separable=q_sep,
        r_fixes_zeta=fixes,
        sampled_u0=tried,
        splitting_ok=not failures,
        split_failures=tuple(failures),
    )
