"""Univariate polynomials and rational functions over finite fields.

Polynomials store their coefficients ascending with no trailing zeros.
Over prime fields the ring operations route through the kernel module, so
gcds of degree-several-thousand polynomials (the genus computations) stay
cheap; extension-field coefficients take the generic path, which is plenty
for the small degrees that occur there.

``factor_oracle`` is deliberately brute force and size-capped: it exists to
certify the fast paths, not to be fast.
"""

from __future__ import annotations

import random

from . import kernels
from .errors import InputError
from .fields import FieldElement, FieldSpec, subfield_map
from .intutil import divisors, moebius, prime_divisors


class Poly:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple):
        self.spec = spec
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_elements(cls, spec: FieldSpec, elts) -> "Poly":
        elts = list(elts)
        while elts and elts[-1].is_zero():
            elts.pop()
        return cls(spec, tuple(elts))

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints) -> "Poly":
        return cls.from_elements(spec, [spec.el(c) for c in ints])

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.one,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.zero, spec.one))

    @classmethod
    def constant(cls, c: FieldElement) -> "Poly":
        return cls.from_elements(c.spec, [c])

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.lc.inv()
        return Poly(self.spec, tuple(c * inv for c in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def to_ints(self) -> list[int]:
        if self.spec.e != 1:
            raise ValueError("int coefficient view requires a prime field")
        return [c.coeffs[0] for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            cs = repr(c)
            if j == 0:
                parts.append(cs)
            else:
                xs = "x" if j == 1 else f"x^{j}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}" if "+" not in cs else f"({cs})*{xs}")
        return "Poly(" + " + ".join(parts) + ")"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise ValueError("mixed coefficient fields")
            return other
        if isinstance(other, FieldElement):
            return Poly.constant(self._coerce_scalar(other))
        if isinstance(other, int):
            return Poly.constant(self.spec.el(other))
        return None

    def _coerce_scalar(self, c: FieldElement) -> FieldElement:
        if c.spec != self.spec:
            raise ValueError("mixed coefficient fields")
        return c

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly.from_elements(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            c = self.spec.el(other) if isinstance(other, int) else self._coerce_scalar(other)
            if c.is_zero():
                return Poly.zero(self.spec)
            return Poly(self.spec, tuple(a * c for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly.zero(self.spec)
        if self.spec.e == 1 and self.spec.p < 2**31:
            out = kernels.zp_mul(self.to_ints(), o.to_ints(), self.spec.p)
            return Poly.from_ints(self.spec, out)
        out = [self.spec.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly.from_elements(self.spec, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.spec.e == 1 and self.spec.p < 2**31:
            q, r = kernels.zp_divmod(self.to_ints(), o.to_ints(), self.spec.p)
            return Poly.from_ints(self.spec, q), Poly.from_ints(self.spec, r)
        if self.degree < o.degree:
            return Poly.zero(self.spec), self
        rem = list(self.coeffs)
        db = o.degree
        inv_lb = o.lc.inv()
        q = [self.spec.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c.is_zero():
                c = c * inv_lb
                q[i - db] = c
                for j in range(db + 1):
                    rem[i - db + j] = rem[i - db + j] - c * o.coeffs[j]
        return Poly.from_elements(self.spec, q), Poly.from_elements(self.spec, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Poly":
        out = [c * j for j, c in enumerate(self.coeffs)][1:]
        return Poly.from_elements(self.spec, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.spec, (self.spec.zero,) * k + self.coeffs)

    def evaluate(self, x: FieldElement) -> FieldElement:
        """Horner evaluation; x may live in an extension of the coefficient field."""
        if x.spec == self.spec:
            coeffs = self.coeffs
        else:
            emb = subfield_map(self.spec, x.spec)
            coeffs = tuple(emb.embed(c) for c in self.coeffs)
        acc = x.spec.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def embed(self, target: FieldSpec) -> "Poly":
        """The same polynomial with coefficients embedded in an extension."""
        emb = subfield_map(self.spec, target)
        return Poly.from_elements(target, [emb.embed(c) for c in self.coeffs])


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.spec != g.spec:
        raise ValueError("mixed coefficient fields")
    if f.spec.e == 1 and f.spec.p < 2**31:
        out = kernels.zp_gcd(f.to_ints(), g.to_ints(), f.spec.p)
        return Poly.from_ints(f.spec, out)
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def powmod(f: Poly, n: int, mod: Poly) -> Poly:
    """f**n mod ``mod`` by square and multiply; n may be a huge integer."""
    if n < 0:
        raise ValueError("negative exponent")
    if f.spec.e == 1 and f.spec.p < 2**31:
        out = kernels.zp_powmod(f.to_ints(), n, mod.to_ints(), f.spec.p)
        return Poly.from_ints(f.spec, out)
    result = Poly.one(f.spec)
    base = f % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Rabin's criterion: x^(q^d) = x mod f, plus gcd checks at maximal subdegrees."""
    d = f.degree
    if d < 1:
        raise InputError("irreducibility is undefined for constants")
    if d == 1:
        return True
    f = f.monic()
    q = f.spec.q
    x = Poly.x(f.spec)
    for r in prime_divisors(d):
        h = powmod(x, q ** (d // r), f) - x
        if gcd(h, f).degree != 0:
            return False
    return powmod(x, q**d, f) == x % f


def roots_in_field(f: Poly, ext: FieldSpec | None = None) -> int:
    """Number of distinct roots of f in the given field (default: its own)."""
    if ext is not None and ext != f.spec:
        f = f.embed(ext)
    x = Poly.x(f.spec)
    h = powmod(x, f.spec.q, f) - x
    return gcd(h, f).degree


# -- factorization ---------------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    """For f = g(x^p), recover g (coefficientwise p-th roots)."""
    p, q = f.spec.p, f.spec.q
    out = []
    for j in range(0, f.degree + 1, p):
        out.append(f.coeffs[j] ** (q // p))
    return Poly.from_elements(f.spec, out)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """[(g, k)] with f = lc * prod g^k, the g monic squarefree and coprime."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    p = f.spec.p
    parts: dict[int, Poly] = {}

    def accumulate(g: Poly, mult: int):
        if g.degree > 0:
            parts[mult] = parts[mult] * g if mult in parts else g

    def sff(f: Poly, scale: int):
        fp = f.derivative()
        if fp.is_zero():
            sff(_pth_root(f), scale * p)
            return
        c = gcd(f, fp)
        w = f // c
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            accumulate(w // y, i * scale)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            sff(_pth_root(c), scale * p)

    sff(f, 1)
    return [(parts[mult], mult) for mult in sorted(parts)]


def distinct_degree_factor(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: [(product of irreducible factors of degree d, d)]."""
    out = []
    q = f.spec.q
    x = Poly.x(f.spec)
    h = x
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1:
        d += 1
        h = powmod(h, q, rest)
        g = gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> Poly:
    """A proper monic factor of f, where f is a product of >= 2 irreducibles of degree d."""
    q = f.spec.q
    n = f.degree
    exponent = (q**d - 1) // 2
    while True:
        a = Poly.from_elements(f.spec,
                               [f.spec.from_index(rng.randrange(q)) for _ in range(n)])
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < n:
            return g
        b = powmod(a, exponent, f) - Poly.one(f.spec)
        g = gcd(b, f)
        if 0 < g.degree < n:
            return g


def factor(f: Poly, seed: int = 0x5EED) -> list[tuple[Poly, int]]:
    """Complete factorization into monic irreducibles with multiplicities.

    Cantor-Zassenhaus with a fixed-seed generator: the factor set is unique,
    so the output is deterministic regardless of the random splitting order.
    Requires odd field size (all uses here have odd q).
    """
    if f.degree < 1:
        raise InputError("cannot factor a constant")
    if f.spec.q % 2 == 0:
        raise InputError("factor() requires odd field size")
    rng = random.Random(seed)
    result = []
    for g, mult in squarefree_decomposition(f):
        for prod, d in distinct_degree_factor(g):
            pieces = [prod]
            irreducibles = []
            while pieces:
                h = pieces.pop()
                if h.degree == d:
                    irreducibles.append(h)
                else:
                    part = _equal_degree_split(h, d, rng)
                    pieces.append(part)
                    pieces.append(h // part)
            result.extend((h, mult) for h in irreducibles)
    result.sort(key=lambda fm: (fm[0].degree, [fm[0].spec.index(c) for c in fm[0].coeffs]))
    return result


#: hard caps for the brute-force oracle; it certifies, it does not scale
ORACLE_MAX_DEGREE = 8
ORACLE_MAX_FIELD = 121


def factor_oracle(f: Poly) -> list[tuple[Poly, int]]:
    """Factor by trial division over all monic polynomials of low degree.

    A divisor of minimal degree is automatically irreducible, so scanning
    degrees upward yields the full factorization with no irreducibility test.
    """
    if f.degree < 1:
        raise InputError("cannot factor a constant")
    if f.degree > ORACLE_MAX_DEGREE or f.spec.q > ORACLE_MAX_FIELD:
        raise InputError(
            f"factor_oracle is capped at degree {ORACLE_MAX_DEGREE}, q <= {ORACLE_MAX_FIELD}")
    spec = f.spec
    rest = f.monic()
    found: list[tuple[Poly, int]] = []
    d = 1
    while rest.degree > 0:
        if d > rest.degree // 2:
            found.append((rest, 1))
            break
        hit = None
        for idx in range(spec.q**d):
            cand = Poly.from_elements(
                spec, [spec.from_index((idx // spec.q**j) % spec.q) for j in range(d)]
                + [spec.one])
            if (rest % cand).is_zero():
                hit = cand
                break
        if hit is None:
            d += 1
            continue
        mult = 0
        while (rest % hit).is_zero():
            rest = rest // hit
            mult += 1
        found.append((hit, mult))
    merged: dict[tuple, tuple[Poly, int]] = {}
    for g, mult in found:
        key = (g.degree, tuple(spec.index(c) for c in g.coeffs))
        if key in merged:
            merged[key] = (g, merged[key][1] + mult)
        else:
            merged[key] = (g, mult)
    return [merged[k] for k in sorted(merged)]


# -- resultants and discriminants -------------------------------------------


def resultant(f: Poly, g: Poly) -> FieldElement:
    """Sylvester-matrix determinant; degrees here are tiny, so O(n^3) is fine."""
    spec = f.spec
    if f.is_zero() or g.is_zero():
        return spec.zero
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([spec.zero] * i + fc + [spec.zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([spec.zero] * i + gc + [spec.zero] * (size - m - 1 - i))
    det = spec.one
    for col in range(size):
        piv = next((r for r in range(col, size) if not rows[r][col].is_zero()), None)
        if piv is None:
            return spec.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inv()
        for r in range(col + 1, size):
            if not rows[r][col].is_zero():
                factor_ = rows[r][col] * inv
                rows[r] = [a - factor_ * b for a, b in zip(rows[r], rows[col])]
    return det


def discriminant(f: Poly) -> FieldElement:
    """disc(f) = (-1)^(n(n-1)/2) lc^(n - deg f' - 2) Res(f, f'); zero iff repeated roots."""
    n = f.degree
    if n < 2:
        raise InputError("discriminant requires degree >= 2")
    fp = f.derivative()
    if fp.is_zero():
        return f.spec.zero
    sign = -f.spec.one if (n * (n - 1) // 2) % 2 else f.spec.one
    res = resultant(f, fp)
    k = n - fp.degree - 2
    lc_pow = f.lc**k if k >= 0 else f.lc.inv() ** (-k)
    return sign * lc_pow * res


def count_monic_irreducibles(q: int, d: int) -> int:
    """Gauss necklace count (1/d) sum_{c|d} mu(c) q^(d/c); positive for all q >= 2."""
    if d < 1:
        raise InputError(f"degree must be >= 1, got {d}")
    total = sum(moebius(c) * q ** (d // c) for c in divisors(d))
    assert total % d == 0
    return total // d


# -- rational functions ------------------------------------------------------


class RatFunc:
    """num/den, reduced and with monic denominator, so == is structural."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if num.spec != den.spec:
            raise ValueError("mixed coefficient fields")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly.zero(num.spec), Poly.one(num.spec)
        else:
            g = gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            inv = den.lc.inv()
            num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @classmethod
    def identity(cls, spec: FieldSpec) -> "RatFunc":
        return cls(Poly.x(spec), Poly.one(spec))

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFunc":
        return cls(f, Poly.one(f.spec))

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    @property
    def degree(self) -> int:
        """Degree as a map of the projective line."""
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (FieldElement, int)):
            other = RatFunc.from_poly(Poly.constant(
                self.spec.el(other) if isinstance(other, int) else other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.spec.el(other) if isinstance(other, int) else other
            return RatFunc(self.num * c, self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def evaluate(self, t: FieldElement) -> FieldElement | None:
        """Value at t, or None at a pole."""
        d = self.den.evaluate(t)
        if d.is_zero():
            return None
        return self.num.evaluate(t) / d

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


def compose_rat(outer: RatFunc, inner: RatFunc) -> RatFunc:
    """outer(inner), normalized; degrees multiply for nondegenerate maps."""
    if outer.spec != inner.spec:
        raise ValueError("mixed coefficient fields")
    spec = outer.spec
    n, d = inner.num, inner.den
    h = max(outer.num.degree, outer.den.degree)

    def homog(f: Poly) -> Poly:
        # sum f_i * n^i * d^(h-i) via Horner in n
        acc = Poly.zero(spec)
        for i in range(h, -1, -1):
            acc = acc * n
            if i <= f.degree and not f.coeffs[i].is_zero():
                acc = acc + Poly.constant(f.coeffs[i]) * d ** (h - i)
        return acc

    num = homog(outer.num)
    den = homog(outer.den)
    if den.is_zero():
        raise InputError("composition lands identically in a pole of the outer map")
    return RatFunc(num, den)
