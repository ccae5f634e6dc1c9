"""Pure-Python fallback for the hot computational kernels.

The compiled extension ``fftower._core`` implements the same functions with
identical semantics; ``fftower.kernels`` picks whichever imports. Keep the two
in lockstep: any behavioural change here must be mirrored in ``_core.pyx``.

Shared conventions:

* A dense polynomial over the prime field F_p is a list of ints in [0, p),
  ascending degree, with no trailing zeros; [] is the zero polynomial.
* An element of F_{p^k} is encoded as an integer in [0, p^k) whose base-p
  digits are the coefficients of its residue polynomial (least significant
  digit = constant term).
* ``build_tables`` tabulates the multiplicative group: exp[j] = enc(g^j) for
  the canonically smallest generator g, log[enc] = j with log[0] = -1, and
  zech[j] = log(1 + g^j) with -1 standing for log(0). Addition then stays in
  the log domain, which is what makes the point-counting loop cheap.
"""

from __future__ import annotations

import math
from array import array


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def zp_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def zp_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return [], _trim(r)
    inv_lb = pow(lb, p - 2, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv_lb % p
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return _trim(q), _trim([c % p for c in r])


def zp_gcd(a: list, b: list, p: int) -> list:
    while b:
        a, b = b, zp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def zp_powmod(a: list, n: int, mod: list, p: int) -> list:
    """a**n reduced mod (mod, p), n >= 0."""
    result = [1]
    base = zp_divmod(a, mod, p)[1]
    while n:
        if n & 1:
            result = zp_divmod(zp_mul(result, base, p), mod, p)[1]
        base = zp_divmod(zp_mul(base, base, p), mod, p)[1]
        n >>= 1
    return result


class _DigitField:
    """Arithmetic on base-p digit encodings of F_{p^k}, for table building."""

    def __init__(self, p: int, k: int, modulus: tuple):
        self.p = p
        self.k = k
        self.Q = p**k
        # rows[j] = digits of x^(k+j) mod modulus, for folding convolution tails
        rows = []
        cur = [(-c) % p for c in modulus[:k]]
        rows.append(list(cur))
        for _ in range(1, k - 1):
            cur = [0] + cur
            top = cur.pop()
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, rows[0])]
            rows.append(list(cur))
        self.rows = rows

    def decode(self, enc: int) -> list:
        p = self.p
        return [(enc // p**j) % p for j in range(self.k)]

    def encode(self, digits: list) -> int:
        enc = 0
        for d in reversed(digits):
            enc = enc * self.p + d
        return enc

    def mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.decode(a), self.decode(b)
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:k]]
        for j in range(k - 1):
            c = conv[k + j] % p
            if c:
                row = self.rows[j]
                out = [(o + c * r) % p for o, r in zip(out, row)]
        return self.encode(out)

    def pow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result


def build_tables(p: int, k: int, modulus: tuple, qm1_factors: tuple):
    """exp/log/zech tables for F_{p^k}; returns (exp, log, zech, generator).

    The generator is the smallest encoding of multiplicative order p^k - 1,
    so the tables are a deterministic function of (p, k, modulus).
    """
    field = _DigitField(p, k, modulus)
    Q = field.Q
    qm1 = Q - 1
    gen = 0
    for cand in range(2, Q):
        if all(field.pow(cand, qm1 // r) != 1 for r in qm1_factors):
            gen = cand
            break
    if not gen:
        raise ValueError("no generator found (modulus not irreducible?)")

    exp = array("q", bytes(8 * qm1))
    log = array("q", bytes(8 * Q))
    log[0] = -1
    cur = 1
    for j in range(qm1):
        exp[j] = cur
        log[cur] = j
        cur = field.mul(cur, gen)
    if cur != 1:
        raise ValueError("generator order mismatch (modulus not irreducible?)")

    # 1 + g^j only changes the constant digit of the encoding
    zech = array("q", bytes(8 * qm1))
    for j in range(qm1):
        e = exp[j]
        s = e - (p - 1) if e % p == p - 1 else e + 1
        zech[j] = log[s] if s else -1
    return exp, log, zech, gen


def count_units_range(log, zech, Q: int, m: int, num_logs: list, den_logs: list,
                      t0: int, t1: int):
    """Count Kummer-cover points over non-branch t in [t0, t1).

    num_logs/den_logs are the coefficient logs (ascending degree, -1 for a
    zero coefficient) of the numerator and denominator of f. For every t with
    num(t) and den(t) both nonzero, z^m = f(t) has gcd(m, Q-1) roots when
    log f(t) is divisible by gcd(m, Q-1), else none. Returns the total over
    the range plus the lists of t where num or den vanishes.
    """
    qm1 = Q - 1
    d0 = math.gcd(m, qm1)
    nl = num_logs[::-1]
    dl = den_logs[::-1]
    units = 0
    zeros = []
    poles = []
    for t in range(t0, t1):
        lt = log[t]

        acc = nl[0]
        for lc in nl[1:]:
            if acc >= 0 and lt >= 0:
                acc = (acc + lt) % qm1
            else:
                acc = -1
            if acc < 0:
                acc = lc
            elif lc >= 0:
                z = zech[(acc - lc) % qm1]
                acc = -1 if z < 0 else (lc + z) % qm1
        numv = acc

        acc = dl[0]
        for lc in dl[1:]:
            if acc >= 0 and lt >= 0:
                acc = (acc + lt) % qm1
            else:
                acc = -1
            if acc < 0:
                acc = lc
            elif lc >= 0:
                z = zech[(acc - lc) % qm1]
                acc = -1 if z < 0 else (lc + z) % qm1
        denv = acc

        if denv < 0:
            poles.append(t)
        elif numv < 0:
            zeros.append(t)
        elif (numv - denv) % d0 == 0:
            units += d0
    return units, zeros, poles
