"""Point counting, L-polynomials, and class numbers for Kummer curves.

Counting rule at a rational point P of the T-line over F_Q (Q = q^i): write
v = v_P(f), d = gcd(m, v), and let u be the unit part f * pi^(-v) evaluated
at P. Degree-one places of Z^m = f above P biject with solutions y in F_Q of
y^d = u; there are gcd(d, Q-1) of them when u is such a power, else none.
At the generic point v = 0, d = m, and u = f(P). The scan over F_Q runs in
the kernel's log domain; the finitely many zeros/poles of f and the place
at infinity are finished off here with exact field arithmetic.

The L-polynomial comes from Newton's identities on the power sums
s_i = q^i + 1 - N_i with an integrality assertion at every step, then the
functional equation a_{2g-i} = q^(g-i) a_i fills the top half. Counts
beyond genus, when available, must match the polynomial's predictions
exactly, which converts silent counting errors into loud failures.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .errors import BudgetError, InputError, VerificationError
from .fields import FieldElement, make_field, subfield_map
from .intutil import prime_divisors
from .poly import Poly
from .tower import KummerCurve, TowerSpec, genus_riemann_hurwitz

#: default cap on total field evaluations per verdict, overridable via env
DEFAULT_BUDGET = 2**32
#: largest single enumeration field (table memory: three int64 arrays of size Q)
MAX_ENUMERATION = 2**22


def evaluation_budget() -> int:
    raw = os.environ.get("INDIV_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _local_place_count(num: Poly, den: Poly, t0: FieldElement, m: int) -> int:
    """Degree-one places above a zero or pole t0 of f = num/den."""
    spec = t0.spec
    linear = Poly.from_elements(spec, [-t0, spec.one])
    a = 0
    while (num % linear).is_zero():
        num = num // linear
        a += 1
    b = 0
    while (den % linear).is_zero():
        den = den // linear
        b += 1
    v = a - b
    u = num.evaluate(t0) / den.evaluate(t0)
    return _root_count(u, math.gcd(m, v))


def _infinity_place_count(num: Poly, den: Poly, m: int) -> int:
    v = den.degree - num.degree
    u = num.lc / den.lc
    return _root_count(u, m if v == 0 else math.gcd(m, v))


def _root_count(u: FieldElement, d: int) -> int:
    """Number of y in the field of u with y^d = u (u != 0)."""
    if u.is_zero():
        raise VerificationError("unit part vanished; zeros/poles were mishandled")
    qm1 = u.spec.q - 1
    g = math.gcd(d, qm1)
    return g if u ** (qm1 // g) == u.spec.one else 0


def count_degree_one_places(curve: KummerCurve, i: int, threads: int = 1) -> int:
    """N_i: degree-one places of the curve's function field over F_{q^i}."""
    if i < 1:
        raise InputError(f"extension degree must be >= 1, got {i}")
    base = curve.spec
    p = base.p
    k = base.e * i
    Q = p**k
    if Q > MAX_ENUMERATION:
        raise BudgetError(
            f"enumerating F_{p}^{k} needs {Q} elements; cap is {MAX_ENUMERATION}")
    big = make_field(p, k)
    emb = subfield_map(base, big)
    num = Poly.from_elements(big, [emb.embed(c) for c in curve.f.num.coeffs])
    den = Poly.from_elements(big, [emb.embed(c) for c in curve.f.den.coeffs])

    qm1_factors = tuple(prime_divisors(Q - 1))
    exp, log, zech, _gen = kernels.build_tables(p, k, big.modulus, qm1_factors)
    num_logs = [log[big.index(c)] for c in num.coeffs]
    den_logs = [log[big.index(c)] for c in den.coeffs]

    if threads > 1 and Q >= 1 << 14:
        chunk = (Q + 4 * threads - 1) // (4 * threads)
        ranges = [(lo, min(lo + chunk, Q)) for lo in range(0, Q, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda r: kernels.count_units_range(
                    log, zech, Q, curve.m, num_logs, den_logs, r[0], r[1]),
                ranges))
        units = sum(part[0] for part in parts)
        zeros = [t for part in parts for t in part[1]]
        poles = [t for part in parts for t in part[2]]
    else:
        units, zeros, poles = kernels.count_units_range(
            log, zech, Q, curve.m, num_logs, den_logs, 0, Q)

    total = units
    for enc in zeros + poles:
        total += _local_place_count(num, den, big.from_index(enc), curve.m)
    total += _infinity_place_count(num, den, curve.m)
    return total


def naive_affine_count(curve: KummerCurve, i: int) -> int:
    """Independent oracle: count pairs (t, z) with den(t) != 0 and z^m = f(t),
    plus the standard corrections at branch places and at infinity.

    The pair count is organized as one pass tallying z^m over all z (plain
    repeated multiplication, no logs or character tests) and one pass over t."""
    base = curve.spec
    big = make_field(base.p, base.e * i)
    emb = subfield_map(base, big)
    num = Poly.from_elements(big, [emb.embed(c) for c in curve.f.num.coeffs])
    den = Poly.from_elements(big, [emb.embed(c) for c in curve.f.den.coeffs])
    mth_power_tally: dict = {}
    for z in big.elements():
        w = z**curve.m
        mth_power_tally[w] = mth_power_tally.get(w, 0) + 1
    total = 0
    zeros = []
    poles = []
    for t in big.elements():
        dv = den.evaluate(t)
        if dv.is_zero():
            poles.append(t)
            continue
        v = num.evaluate(t) / dv
        total += mth_power_tally.get(v, 0)
        if v.is_zero():
            zeros.append(t)
    # an affine pair (t, 0) stands for however many places sit above a zero
    # of f; poles and infinity have no affine pairs at all
    for t in zeros:
        total += _local_place_count(num, den, t, curve.m) - 1
    for t in poles:
        total += _local_place_count(num, den, t, curve.m)
    total += _infinity_place_count(num, den, curve.m)
    return total


def weil_bound_ok(n_i: int, q: int, i: int, g: int) -> bool:
    """|N_i - (q^i + 1)| <= 2g sqrt(q^i), compared exactly via squares."""
    diff = abs(n_i - (q**i + 1))
    return diff * diff <= 4 * g * g * q**i


@dataclass(frozen=True)
class PointCounts:
    q: int
    counts: tuple    # N_1, N_2, ... over F_{q^i}


@dataclass(frozen=True)
class LPolynomial:
    """Numerator of the zeta function: degree 2g, a_0 = 1, a_{2g} = q^g."""

    coeffs: tuple    # a_0 ... a_{2g}, exact ints
    g: int
    q: int

    def __post_init__(self):
        assert self.coeffs[0] == 1
        assert len(self.coeffs) == 2 * self.g + 1

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    def predicted_count(self, i: int) -> int:
        return self.q**i + 1 - _power_sum(self.coeffs, self.g, i)

    def functional_equation_ok(self) -> bool:
        return all(self.coeffs[2 * self.g - i] == self.q ** (self.g - i) * self.coeffs[i]
                   for i in range(self.g + 1))

    def reciprocal_root_moduli(self) -> list[float]:
        """|alpha_j| over the distinct reciprocal roots, via Durand-Kerner.

        The polynomial is deflated to its exact squarefree part first:
        repeated roots (supersingular-type curves produce them) stall the
        iteration, while the squarefree part converges quadratically and
        carries the same set of moduli.
        """
        if self.g == 0:
            return []
        squarefree = _squarefree_over_q(self.coeffs)
        roots = _durand_kerner([complex(c) for c in squarefree])
        return [1.0 / abs(r) for r in roots]

    def weil_moduli_ok(self, rel_tol: float = 1e-6) -> bool:
        target = math.sqrt(self.q)
        return all(abs(m - target) <= rel_tol * target
                   for m in self.reciprocal_root_moduli())


def _power_sum(coeffs: tuple, g: int, upto_i: int) -> int:
    """s_i of the reciprocal roots: s_k = -(k a_k + sum_{j<k} a_j s_{k-j})."""
    deg = 2 * g
    svals: list[int] = []
    for k in range(1, upto_i + 1):
        acc = 0
        for j in range(1, min(k - 1, deg) + 1):
            acc += coeffs[j] * svals[k - j - 1]
        if k <= deg:
            acc += k * coeffs[k]
        svals.append(-acc)
    return svals[upto_i - 1]


def _q_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _q_mod(a: list, b: list) -> list:
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] / b[-1]
        for i in range(1, len(b) + 1):
            r[-i] -= c * b[-i]
        r.pop()
        _q_trim(r)
        if not r:
            break
    return r


def _squarefree_over_q(coeffs: tuple) -> list:
    """Exact squarefree part of an integer polynomial, as Fractions."""
    a = [Fraction(c) for c in coeffs]
    b = _q_trim([i * c for i, c in enumerate(a)][1:])
    g = list(a)
    while b:
        g, b = b, _q_mod(g, b)
    if len(g) <= 1:
        return a
    # exact division a / g
    quot = [Fraction(0)] * (len(a) - len(g) + 1)
    rem = list(a)
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + len(g) - 1] / g[-1]
        quot[i] = c
        if c:
            for j in range(len(g)):
                rem[i + j] -= c * g[j]
    assert not _q_trim(rem), "squarefree deflation left a remainder"
    return quot


def _durand_kerner(coeffs: list[complex], iterations: int = 400) -> list[complex]:
    """All roots of sum coeffs[i] x^i; deterministic start, tiny degrees."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]

    def ev(x: complex) -> complex:
        acc = 0j
        for c in reversed(monic):
            acc = acc * x + c
        return acc

    roots = [(0.4 + 0.9j) ** (k + 1) for k in range(n)]
    for _ in range(iterations):
        moved = 0.0
        new = list(roots)
        for k in range(n):
            denom = 1 + 0j
            for j in range(n):
                if j != k:
                    denom *= roots[k] - roots[j]
            delta = ev(roots[k]) / denom
            new[k] = roots[k] - delta
            moved = max(moved, abs(delta))
        roots = new
        if moved < 1e-14:
            break
    return roots


def l_polynomial(counts: PointCounts, g: int, q: int) -> LPolynomial:
    """Reconstruct L from N_1..N_g; extra counts are checked, not consumed."""
    if len(counts.counts) < g:
        raise InputError(f"need at least {g} counts, got {len(counts.counts)}")
    s = [q**i + 1 - counts.counts[i - 1] for i in range(1, len(counts.counts) + 1)]
    e: list[Fraction] = [Fraction(1)]
    for k in range(1, g + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        ek = acc / k
        if ek.denominator != 1:
            raise VerificationError(
                f"Newton step e_{k} = {ek} is not an integer; counts or genus wrong")
        e.append(ek)
    a = [0] * (2 * g + 1)
    for k in range(g + 1):
        a[k] = int((-1) ** k * e[k])
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    L = LPolynomial(coeffs=tuple(a), g=g, q=q)
    if not L.functional_equation_ok():
        raise VerificationError("functional equation failed after completion")
    for i in range(1, len(counts.counts) + 1):
        if L.predicted_count(i) != counts.counts[i - 1]:
            raise VerificationError(
                f"N_{i} = {counts.counts[i-1]} contradicts the L-polynomial "
                f"prediction {L.predicted_count(i)}")
    if not L.weil_moduli_ok():
        raise VerificationError("reciprocal roots stray from |alpha| = sqrt(q)")
    return L


def class_number(L: LPolynomial) -> int:
    h = L.value_at_one()
    if h < 1:
        raise VerificationError(f"class number h = {h} < 1")
    return h


@dataclass(frozen=True)
class ClassNumberReport:
    q: int
    ell: int
    m: int
    n: int
    genus_rh: int
    genus_l: int                   # deg(L)/2
    counts: tuple
    l_coeffs: tuple
    h: int
    ell_divides: bool
    status: str                    # "ok" | "budget"
    deep_checked_through: int      # largest i with an exact prediction match
    elapsed_ms: float
    budget_note: str = field(default="")


def required_evaluations(q: int, g: int, deep: bool = False) -> int:
    top = 2 * g if deep else g
    return sum(q**i for i in range(1, top + 1))


def verdict_for_tower(spec: TowerSpec, deep_check: bool = False,
                      threads: int = 1) -> ClassNumberReport:
    """Count, reconstruct L, and report whether ell divides h = L(1)."""
    t_start = time.perf_counter()
    g = genus_riemann_hurwitz(spec.curve)
    budget = evaluation_budget()
    need = required_evaluations(spec.q, g)
    if need > budget or spec.q**g > MAX_ENUMERATION:
        raise BudgetError(
            f"(q={spec.q}, n={spec.n}) needs ~{need} evaluations for genus {g}; "
            f"budget is {budget} and the largest enumerable field is {MAX_ENUMERATION}")
    counts = [count_degree_one_places(spec.curve, i, threads=threads)
              for i in range(1, g + 1)]
    for i, n_i in enumerate(counts, start=1):
        if not weil_bound_ok(n_i, spec.q, i, g):
            raise VerificationError(f"Weil bound violated at N_{i} = {n_i}")
    L = l_polynomial(PointCounts(q=spec.q, counts=tuple(counts)), g, spec.q)
    deep_through = g
    if deep_check:
        spent = required_evaluations(spec.q, g)
        for i in range(g + 1, 2 * g + 1):
            cost = spec.q**i
            if spent + cost > budget or cost > MAX_ENUMERATION:
                break
            n_i = count_degree_one_places(spec.curve, i, threads=threads)
            spent += cost
            if n_i != L.predicted_count(i):
                raise VerificationError(
                    f"deep check failed at i={i}: counted {n_i}, "
                    f"predicted {L.predicted_count(i)}")
            deep_through = i
    h = class_number(L)
    return ClassNumberReport(
        q=spec.q, ell=spec.ell, m=spec.m, n=spec.n,
        genus_rh=g, genus_l=len(L.coeffs) // 2,
        counts=tuple(counts), l_coeffs=L.coeffs, h=h,
        ell_divides=h % spec.ell == 0,
        status="ok",
        deep_checked_through=deep_through,
        elapsed_ms=(time.perf_counter() - t_start) * 1000.0)


def indivisibility_verdict(spec: TowerSpec, depth: int, deep_check: bool = False,
                           threads: int = 1) -> list[ClassNumberReport]:
    """One report per feasible level n' <= depth; budget misses are marked."""
    from .tower import build_tower  # local import to avoid a cycle at module load

    out = []
    for n_prime in range(1, depth + 1):
        level = (spec if n_prime == spec.n else
                 build_tower(spec.q, spec.ell, spec.m, n_prime,
                             sys=spec.sys, gamma_cert=spec.gamma_cert))
        try:
            out.append(verdict_for_tower(level, deep_check=deep_check, threads=threads))
        except BudgetError as exc:
            g = genus_riemann_hurwitz(level.curve)
            out.append(ClassNumberReport(
                q=spec.q, ell=spec.ell, m=spec.m, n=n_prime,
                genus_rh=g, genus_l=0, counts=(), l_coeffs=(), h=0,
                ell_divides=False, status="budget",
                deep_checked_through=0, elapsed_ms=0.0,
                budget_note=str(exc)))
    return out
