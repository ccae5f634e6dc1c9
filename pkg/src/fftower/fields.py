"""Exact arithmetic in finite fields F_{p^e}, deterministically constructed.

Construction is canonical so that every run (and every machine) agrees
bit-for-bit on field elements:

* the modulus for F_{p^e} is the monic irreducible of degree e whose
  coefficient tuple (a_{e-1}, ..., a_1, a_0) is lexicographically smallest;
* "smallest element" always means smallest in the same lexicographic order,
  which coincides with the natural order of integer encodings
  sum(coeffs[j] * p**j).

Elements are immutable and all operations are pure, so specs and elements can
be shared freely across threads.
"""

from __future__ import annotations

import functools
import math
from typing import Iterator

from . import kernels
from .errors import InputError
from .intutil import is_prime, prime_divisors

#: fields are rejected beyond this size so enumeration loops stay feasible
MAX_FIELD_SIZE = 2**63


class FieldSpec:
    """A concrete F_{p^e}: prime p, degree e, monic irreducible modulus."""

    __slots__ = ("p", "e", "q", "modulus", "_reduction_rows", "_zero", "_one")

    def __init__(self, p: int, e: int, modulus: tuple):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        # digits of x^(e+j) mod modulus, used to fold products back below x^e
        rows = []
        if e > 1:
            cur = [(-c) % p for c in modulus[:e]]
            rows.append(tuple(cur))
            for _ in range(1, e - 1):
                cur = [0] + cur
                top = cur.pop()
                if top:
                    cur = [(c + top * r) % p for c, r in zip(cur, rows[0])]
                rows.append(tuple(cur))
        self._reduction_rows = tuple(rows)
        self._zero = FieldElement(self, (0,) * e)
        self._one = FieldElement(self, (1,) + (0,) * (e - 1))

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    def el(self, value: int) -> "FieldElement":
        """The image of the integer constant ``value`` in this field."""
        return FieldElement(self, (value % self.p,) + (0,) * (self.e - 1))

    def from_coeffs(self, coeffs) -> "FieldElement":
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(coeffs)}")
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    def from_index(self, idx: int) -> "FieldElement":
        """Element number ``idx`` in the canonical order, 0 <= idx < q."""
        p = self.p
        return FieldElement(self, tuple((idx // p**j) % p for j in range(self.e)))

    def index(self, a: "FieldElement") -> int:
        enc = 0
        for d in reversed(a.coeffs):
            enc = enc * self.p + d
        return enc

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical order."""
        for idx in range(self.q):
            yield self.from_index(idx)

    def _mul_digits(self, da: tuple, db: tuple) -> tuple:
        p, e = self.p, self.e
        if e == 1:
            return (da[0] * db[0] % p,)
        conv = [0] * (2 * e - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:e]]
        for j in range(e - 1):
            c = conv[e + j] % p
            if c:
                row = self._reduction_rows[j]
                out = [(o + c * r) % p for o, r in zip(out, row)]
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldSpec(GF({self.p}^{self.e}))" if self.e > 1 else f"FieldSpec(GF({self.p}))"


class FieldElement:
    """Immutable element of a FieldSpec; coeffs ascending, each in [0, p)."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple):
        self.spec = spec
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError(f"mixed fields: {self.spec} vs {other.spec}")
            return other
        if isinstance(other, int):
            return self.spec.el(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec._mul_digits(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        return self ** (self.spec.q - 2)

    def frobenius(self, power: int = 1) -> "FieldElement":
        """Apply x -> x^(p^power)."""
        return self ** (self.spec.p**power)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.spec.el(other)
        return (isinstance(other, FieldElement)
                and self.spec == other.spec and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec.p, self.spec.e, self.coeffs))

    def __repr__(self):
        if self.spec.e == 1:
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if j == 0 else
                             (f"s^{j}" if c == 1 else f"{c}*s^{j}") if j > 1 else
                             ("s" if c == 1 else f"{c}*s"))
        return "+".join(terms) if terms else "0"


def _zp_is_irreducible(coeffs: list, p: int) -> bool:
    """Rabin test for a monic polynomial over F_p given as an int list."""
    d = len(coeffs) - 1
    if d < 1:
        return False
    x = [0, 1]
    for r in prime_divisors(d):
        h = kernels.zp_powmod(x, p ** (d // r), coeffs, p)
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        if len(kernels.zp_gcd(coeffs, diff, p)) != 1:
            return False
    h = kernels.zp_powmod(x, p**d, coeffs, p)
    return h == [0, 1]


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldSpec:
    """Canonical F_{p^e}; identical (p, e) always yields the identical modulus."""
    if e < 1:
        raise InputError(f"extension degree must be >= 1, got {e}")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p**e > MAX_FIELD_SIZE:
        raise InputError(f"{p}^{e} exceeds the enumeration bound 2^63")
    if e == 1:
        return FieldSpec(p, 1, (0, 1))
    for idx in range(p**e):
        coeffs = [(idx // p**j) % p for j in range(e)]
        if _zp_is_irreducible(coeffs + [1], p):
            return FieldSpec(p, e, tuple(coeffs) + (1,))
    raise RuntimeError("unreachable: irreducibles of every degree exist")


class SubfieldMap:
    """The embedding F_{p^e} -> F_{p^E} (e | E) and its partial inverse.

    The embedding sends the residue class of x to a deterministically chosen
    root of the small modulus in the big field; the section solves the linear
    system over F_p and raises if its argument is outside the image.
    """

    def __init__(self, sub: FieldSpec, amb: FieldSpec):
        if sub.p != amb.p or amb.e % sub.e != 0:
            raise InputError(f"no subfield embedding {sub} -> {amb}")
        self.sub = sub
        self.amb = amb
        if sub.e == 1:
            self.root = amb.one
        elif sub.e == amb.e:
            # same canonical modulus, so x maps to x
            self.root = amb.from_index(amb.p)
        else:
            self.root = _find_root_of_modulus(sub, amb)
        self._powers = [self.amb.one]
        for _ in range(1, sub.e):
            self._powers.append(self._powers[-1] * self.root)
        self._solver = _LinearSection([pw.coeffs for pw in self._powers], amb.p)

    def embed(self, a: FieldElement) -> FieldElement:
        if a.spec != self.sub:
            raise ValueError("element not in the source field")
        acc = self.amb.zero
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                acc = acc + pw * c
        return acc

    def section(self, b: FieldElement) -> FieldElement:
        if b.spec != self.amb:
            raise ValueError("element not in the ambient field")
        sol = self._solver.solve(b.coeffs)
        if sol is None:
            raise ValueError(f"{b!r} does not lie in the degree-{self.sub.e} subfield")
        return FieldElement(self.sub, tuple(sol))


class _LinearSection:
    """Solve E*c = b over F_p for a fixed full-rank matrix E (columns given).

    The elimination is done once at construction, tracked on an identity
    block, so each solve is a single matrix-vector product.
    """

    def __init__(self, columns, p: int):
        self.p = p
        self.ncols = len(columns)
        nrows = len(columns[0])
        m = [[columns[j][i] for j in range(self.ncols)] for i in range(nrows)]
        ident = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
        for c in range(self.ncols):
            piv = next(i for i in range(c, nrows) if m[i][c])
            m[c], m[piv] = m[piv], m[c]
            ident[c], ident[piv] = ident[piv], ident[c]
            inv = pow(m[c][c], p - 2, p)
            m[c] = [v * inv % p for v in m[c]]
            ident[c] = [v * inv % p for v in ident[c]]
            for i in range(nrows):
                if i != c and m[i][c]:
                    f = m[i][c]
                    m[i] = [(v - f * w) % p for v, w in zip(m[i], m[c])]
                    ident[i] = [(v - f * w) % p for v, w in zip(ident[i], ident[c])]
        self.transform = ident

    def solve(self, b) -> list | None:
        p = self.p
        tb = [sum(t * v for t, v in zip(row, b)) % p for row in self.transform]
        if any(tb[self.ncols:]):
            return None
        return tb[: self.ncols]


def _poly_eval_digits(coeffs, x: FieldElement) -> FieldElement:
    acc = x.spec.zero
    for c in reversed(coeffs):
        acc = acc * x + x.spec.el(c)
    return acc


def _find_root_of_modulus(sub: FieldSpec, amb: FieldSpec) -> FieldElement:
    """Deterministic root of sub.modulus inside amb (odd p)."""
    from . import poly  # deferred: poly depends on fields

    f = poly.Poly.from_ints(amb, sub.modulus)
    if amb.p == 2:
        for cand in amb.elements():
            if _poly_eval_digits(sub.modulus, cand).is_zero():
                return cand
        raise InputError("no root found (fields inconsistent)")
    half = (amb.q - 1) // 2
    shift = 0
    while f.degree > 1:
        a = amb.from_index(shift % amb.q)
        shift += 1
        base = poly.Poly.from_elements(amb, [a, amb.one])  # x + a
        w = poly.powmod(base, half, f) - poly.Poly.one(amb)
        g = poly.gcd(w, f)
        if 0 < g.degree < f.degree:
            f = g if g.degree <= f.degree - g.degree else f // g
    return -f.coeffs[0] / f.coeffs[1]


@functools.lru_cache(maxsize=None)
def subfield_map(sub: FieldSpec, amb: FieldSpec) -> SubfieldMap:
    return SubfieldMap(sub, amb)


def norm_to_subfield(a: FieldElement, e_target: int) -> FieldElement:
    """Product of the Frobenius conjugates of a over F_{p^e_target}."""
    e_amb = a.spec.e
    if e_amb % e_target != 0:
        raise InputError(f"target degree {e_target} does not divide {e_amb}")
    sub = make_field(a.spec.p, e_target)
    if e_target == e_amb:
        return subfield_map(sub, a.spec).section(a)
    q_sub = a.spec.p**e_target
    acc = a
    cur = a
    for _ in range(e_amb // e_target - 1):
        cur = cur**q_sub
        acc = acc * cur
    return subfield_map(sub, a.spec).section(acc)


def is_kth_power(a: FieldElement, k: int) -> bool:
    """Whether a is a k-th power in its field; zero counts as one."""
    if k <= 0:
        raise InputError(f"k must be positive, got {k}")
    if a.is_zero():
        return True
    g = math.gcd(k, a.spec.q - 1)
    return a ** ((a.spec.q - 1) // g) == a.spec.one


def primitive_root_of_unity(spec: FieldSpec, ell: int) -> FieldElement:
    """Smallest element of exact multiplicative order ell (an odd prime)."""
    if (spec.q - 1) % ell != 0:
        raise InputError(f"{ell} does not divide q - 1 = {spec.q - 1}")
    one = spec.one
    for elt in spec.elements():
        if elt != one and not elt.is_zero() and elt**ell == one:
            return elt
    raise RuntimeError("unreachable: cyclic group has elements of every dividing order")
