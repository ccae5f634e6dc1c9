"""Tower assembly: the Kummer curve Z^m = ell*X_n + gamma and its geometry.

A curve over F_q(T) is branch-analyzed through the squarefree multiplicity
decomposition of numerator and denominator: places sharing a multiplicity v
share the ramification index m/gcd(m, v), and Riemann-Hurwitz only needs the
total degree per multiplicity class. Individual places are materialized by
full factorization when the degrees are small enough to be worth listing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

from .errors import InputError, VerificationError
from .fields import FieldElement, subfield_map
from .gammasearch import GammaCertificate, find_gamma, lang_test
from .intutil import prime_power_base, radical
from .poly import (Poly, RatFunc, discriminant, factor, gcd, is_irreducible,
                   squarefree_decomposition)
from .rikuna import (RikunaSystem, build_rikuna, discriminant_formula,
                     iterate_r, specialize_F, verify_discriminant)

#: branch places are listed explicitly only below this curve degree
MATERIALIZE_LIMIT = 64


@dataclass(frozen=True)
class BranchClass:
    """All places where f has valuation v; deg_total = sum of their degrees."""

    v: int
    deg_total: int


@dataclass(frozen=True)
class BranchPlace:
    place: Poly | None        # None stands for the place at infinity
    v: int                    # valuation of f at the place
    d: int                    # gcd(m, v)
    e: int                    # ramification index m/d
    deg: int


class KummerCurve:
    """Z^m = f(T) over the coefficient field of f; tame by construction."""

    def __init__(self, m: int, f: RatFunc):
        if m < 2:
            raise InputError(f"m must be >= 2, got {m}")
        if m % f.spec.p == 0:
            raise InputError(f"wild case: characteristic {f.spec.p} divides m = {m}")
        if f.num.degree < 1 and f.den.degree < 1:
            raise InputError("f is constant; Z^m = f does not define a curve over F_q(T)")
        self.m = m
        self.f = f
        classes = []
        for g, mult in squarefree_decomposition(f.num):
            classes.append(BranchClass(v=mult, deg_total=g.degree))
        for g, mult in squarefree_decomposition(f.den):
            classes.append(BranchClass(v=-mult, deg_total=g.degree))
        v_inf = f.den.degree - f.num.degree
        if v_inf != 0:
            classes.append(BranchClass(v=v_inf, deg_total=1))
        self.branch_classes = tuple(classes)
        self.v_infinity = v_inf
        self._places: tuple | None = None

    @property
    def spec(self):
        return self.f.spec

    def branch_degree_sum(self) -> int:
        """Total degree of the ramified locus over the algebraic closure (m does not divide v)."""
        return sum(c.deg_total for c in self.branch_classes if c.v % self.m != 0)

    @property
    def branch_places(self) -> tuple:
        """Explicit list of (place, v, d, e, deg); factors lazily."""
        if self._places is None:
            if max(self.f.num.degree, self.f.den.degree) > MATERIALIZE_LIMIT:
                raise InputError(
                    f"curve degree beyond {MATERIALIZE_LIMIT}; branch classes "
                    "remain available without factorization")
            places = []
            for g, mult in squarefree_decomposition(self.f.num):
                for h, one in factor(g):
                    places.append(self._mk_place(h, mult))
            for g, mult in squarefree_decomposition(self.f.den):
                for h, one in factor(g):
                    places.append(self._mk_place(h, -mult))
            if self.v_infinity != 0:
                places.append(self._mk_place(None, self.v_infinity))
            self._places = tuple(places)
        return self._places

    def _mk_place(self, place: Poly | None, v: int) -> BranchPlace:
        d = math.gcd(self.m, v)
        return BranchPlace(place=place, v=v, d=d, e=self.m // d,
                           deg=1 if place is None else place.degree)


def genus_riemann_hurwitz(curve: KummerCurve) -> int:
    """Genus of Z^m = f from 2g - 2 = -2m + sum (e_P - 1) deg P, tame case."""
    m = curve.m
    total = -2 * m
    for cl in curve.branch_classes:
        e = m // math.gcd(m, cl.v)
        total += (e - 1) * cl.deg_total
    if total % 2 != 0:
        raise VerificationError(f"Riemann-Hurwitz sum 2g-2 = {total} is odd")
    g = (total + 2) // 2
    if g < 0:
        raise VerificationError(f"negative genus {g}")
    return g


@dataclass(frozen=True)
class TowerSpec:
    q: int
    ell: int
    m: int
    n: int
    sys: RikunaSystem
    gamma_cert: GammaCertificate
    x_n: RatFunc
    curve: KummerCurve


def build_tower(q: int, ell: int, m: int, n: int,
                sys: RikunaSystem | None = None,
                gamma_cert: GammaCertificate | None = None) -> TowerSpec:
    """Materialize Z^m = ell*X_n + gamma with everything verified underneath."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if m <= 1:
        raise InputError(f"m must be > 1, got {m}")
    if math.gcd(m, ell) != 1:
        raise InputError(f"gcd(m, ell) != 1 for m={m}, ell={ell}")
    pp = prime_power_base(q)
    if pp is None or q % 2 == 0:
        raise InputError(f"q = {q} must be an odd prime power")
    if (q - 1) % radical(m) != 0:
        raise InputError(f"q = {q} is not 1 mod the radical of m = {m}")
    if sys is None:
        sys = build_rikuna(q, ell)
    if gamma_cert is None:
        gamma_cert = find_gamma(sys, m)
    x_n = iterate_r(sys, n)
    f = x_n * sys.base.el(ell) + gamma_cert.gamma
    curve = KummerCurve(m, f)
    return TowerSpec(q=q, ell=ell, m=m, n=n, sys=sys,
                     gamma_cert=gamma_cert, x_n=x_n, curve=curve)


@dataclass(frozen=True)
class LevelReport:
    level: int
    p_poly: Poly                    # X^2 - omega X + 1
    p_irreducible: bool
    disc_samples: int
    disc_shape_ok: bool             # Eq-style identity at sampled specializations

    @property
    def all_ok(self) -> bool:
        return self.p_irreducible and self.disc_shape_ok


def level_checks(spec: TowerSpec, i: int, samples: int = 50, seed: int = 0) -> LevelReport:
    """Per-level structure: the inert quadratic and the discriminant shape.

    The discriminant of the level polynomial equals a nonzero constant times
    (u^2 - omega u + 1)^(ell-1); this is checked at random specializations,
    which is the desk-checkable shadow of the function-field identity.
    """
    if not 1 <= i <= spec.n:
        raise InputError(f"level {i} outside 1..{spec.n}")
    sys = spec.sys
    base = sys.base
    quad = Poly.from_elements(base, [base.one, -sys.omega, base.one])
    p_irr = is_irreducible(quad)
    rng = Random(seed + i)
    ok = True
    for _ in range(samples):
        u0 = base.from_index(rng.randrange(base.q))
        if not verify_discriminant(sys, u0):
            ok = False
            break
        quad_val = u0 * u0 - sys.omega * u0 + base.one
        if discriminant(specialize_F(sys, u0)).is_zero() != quad_val.is_zero():
            ok = False
            break
    return LevelReport(level=i, p_poly=quad, p_irreducible=p_irr,
                       disc_samples=samples, disc_shape_ok=ok)


def kummer_residue_irreducible(sys: RikunaSystem, m: int, gamma: FieldElement) -> bool:
    """Whether X^m - (ell*zeta + gamma) is irreducible over the residue field F_{q^2}.

    Checked for both conjugate roots of the inert quadratic; the verdicts are
    Frobenius-conjugate and must agree.
    """
    emb = subfield_map(sys.base, sys.ext)
    g = emb.embed(gamma)
    ell = sys.ext.el(sys.ell)
    a_plus = g + ell * sys.zeta
    a_minus = g + ell * sys.zeta.inv()
    if a_plus.is_zero() or a_minus.is_zero():
        return False
    v_plus = lang_test(a_plus, m)
    v_minus = lang_test(a_minus, m)
    if v_plus != v_minus:
        raise VerificationError("conjugate residue verdicts disagree")
    return v_plus


def inertness_check(spec: TowerSpec, i: int) -> bool:
    """Inertness of the level-i quadratic place in the degree-m layer.

    The residue computation is level-independent because r fixes zeta, so
    the verdict must be identical for every i; i only gates the range.
    """
    if not 1 <= i <= spec.n:
        raise InputError(f"level {i} outside 1..{spec.n}")
    return kummer_residue_irreducible(spec.sys, spec.m, spec.gamma_cert.gamma)


@dataclass(frozen=True)
class RamificationReport:
    """Branch structure of the first layer, fully itemized."""

    numerator: Poly                      # F(X, -gamma/ell)
    disc_numerator: FieldElement
    disc_matches_formula: bool           # against disc_const scaled to u0 = -gamma/ell
    numerator_squarefree: bool
    numerator_distinct_roots: int        # over the algebraic closure
    denominator_distinct_roots: int
    q_separable: bool
    coprime: bool                        # gcd(numerator, Q) = 1
    infinity_ramified: bool
    branch_degree_total: int             # over the closure; must be 2*ell
    qz_poly: Poly                        # (Z^m - gamma)^2 - ell*omega*(Z^m - gamma) + ell^2
    qz_degree: int
    qz_irreducible: bool
    ell_divides_qz_degree: bool

    @property
    def all_ok(self) -> bool:
        return (self.disc_matches_formula and self.numerator_squarefree
                and self.q_separable and self.coprime and self.infinity_ramified
                and self.qz_irreducible and not self.ell_divides_qz_degree)


def ramification_report_m1(spec: TowerSpec) -> RamificationReport:
    sys = spec.sys
    base = sys.base
    ell, m = spec.ell, spec.m
    gamma = spec.gamma_cert.gamma
    u0 = -gamma / base.el(ell)
    fnum = specialize_F(sys, u0)
    disc = discriminant(fnum)
    disc_ok = disc == discriminant_formula(sys, u0) and not disc.is_zero()

    q_sep = gcd(sys.Q, sys.Q.derivative()).degree == 0
    coprime = gcd(fnum, sys.Q).degree == 0

    # Z^m - gamma as a polynomial in Z, then the quadratic in that quantity
    zm = Poly.from_elements(base, [-gamma] + [base.zero] * (m - 1) + [base.one])
    qz = zm * zm - base.el(ell) * sys.omega * zm + Poly.constant(base.el(ell * ell))

    level1 = build_tower(spec.q, ell, m, 1, sys=sys, gamma_cert=spec.gamma_cert) \
        if spec.n != 1 else spec
    curve = level1.curve
    num_roots = sum(g.degree for g, mult in squarefree_decomposition(curve.f.num))
    den_roots = sum(g.degree for g, mult in squarefree_decomposition(curve.f.den))

    return RamificationReport(
        numerator=fnum,
        disc_numerator=disc,
        disc_matches_formula=disc_ok,
        numerator_squarefree=not disc.is_zero(),
        numerator_distinct_roots=num_roots,
        denominator_distinct_roots=den_roots,
        q_separable=q_sep,
        coprime=coprime,
        infinity_ramified=curve.v_infinity == -1,
        branch_degree_total=curve.branch_degree_sum(),
        qz_poly=qz,
        qz_degree=qz.degree,
        qz_irreducible=is_irreducible(qz),
        ell_divides_qz_degree=qz.degree % ell == 0,
    )


def kummer_numerator_squarefree(curve: KummerCurve) -> bool:
    """Simple zero of f exists iff the numerator is squarefree."""
    return all(mult == 1 for _, mult in squarefree_decomposition(curve.f.num))


def constant_field_check(spec: TowerSpec) -> bool:
    """Geometric-extension certificate: simple zero (Eisenstein at a branch
    point gives total ramification) combined with the inert quadratic chain."""
    level1 = build_tower(spec.q, spec.ell, spec.m, 1,
                         sys=spec.sys, gamma_cert=spec.gamma_cert) \
        if spec.n != 1 else spec
    return (kummer_numerator_squarefree(level1.curve)
            and inertness_check(spec, 1))
