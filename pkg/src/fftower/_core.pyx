# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: dense F_p polynomial arithmetic and the counting scan.

Semantics must match fftower._corepy exactly; tests/test_kernels.py holds the
two implementations against each other. Coefficient primes are capped at
2^31 by the dispatcher in fftower.kernels so every product fits in int64.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from array import array

import math


cdef long long *_to_buf(list a) except NULL:
    cdef Py_ssize_t n = len(a)
    cdef long long *buf = <long long *> PyMem_Malloc(max(n, 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef list _from_buf(long long *buf, Py_ssize_t n):
    cdef Py_ssize_t i = n
    while i > 0 and buf[i - 1] == 0:
        i -= 1
    cdef list out = [0] * i
    cdef Py_ssize_t j
    for j in range(i):
        out[j] = buf[j]
    return out


def zp_mul(list a, list b, p):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef long long pp = p
    cdef Py_ssize_t n = la + lb - 1
    cdef long long *ca = _to_buf(a)
    cdef long long *cb = _to_buf(b)
    cdef long long *out = <long long *> PyMem_Malloc(n * sizeof(long long))
    if out == NULL:
        PyMem_Free(ca); PyMem_Free(cb)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef long long ai
    for i in range(n):
        out[i] = 0
    for i in range(la):
        ai = ca[i]
        if ai:
            for j in range(lb):
                out[i + j] = (out[i + j] + ai * cb[j]) % pp
    result = _from_buf(out, n)
    PyMem_Free(ca); PyMem_Free(cb); PyMem_Free(out)
    return result


def zp_divmod(list a, list b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef long long pp = p
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t db = lb - 1
    if la - 1 < db:
        return [], list(a)
    cdef long long *cr = _to_buf(a)
    cdef long long *cb = _to_buf(b)
    cdef Py_ssize_t nq = la - db
    cdef long long *cq = <long long *> PyMem_Malloc(nq * sizeof(long long))
    if cq == NULL:
        PyMem_Free(cr); PyMem_Free(cb)
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(nq):
        cq[i] = 0
    cdef long long inv_lb = _inv_mod(cb[db], pp)
    cdef long long c
    for i in range(la - 1, db - 1, -1):
        c = cr[i] % pp
        if c < 0:
            c += pp
        if c:
            c = c * inv_lb % pp
            cq[i - db] = c
            for j in range(db + 1):
                cr[i - db + j] = (cr[i - db + j] - c * cb[j]) % pp
    for i in range(la):
        if cr[i] < 0:
            cr[i] += pp
    q = _from_buf(cq, nq)
    r = _from_buf(cr, db if la >= db else la)
    PyMem_Free(cr); PyMem_Free(cb); PyMem_Free(cq)
    return q, r


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; p prime, a nonzero mod p
    cdef long long lm = 1, hm = 0, low = a % p, high = p, r, nm, nw
    while low > 1:
        r = high / low
        nm = hm - lm * r
        nw = high - low * r
        hm = lm; high = low; lm = nm; low = nw
    return lm % p if lm % p >= 0 else lm % p + p


def zp_gcd(list a, list b, p):
    cdef long long pp = p
    while b:
        a, b = b, zp_divmod(a, b, p)[1]
    if a:
        # wraparound is disabled module-wide, so no negative indexing here
        inv = _inv_mod(a[len(a) - 1], pp)
        a = [c * inv % pp for c in a]
    return a


def zp_powmod(list a, n, list mod, p):
    result = [1]
    base = zp_divmod(a, mod, p)[1]
    while n:
        if n & 1:
            result = zp_divmod(zp_mul(result, base, p), mod, p)[1]
        base = zp_divmod(zp_mul(base, base, p), mod, p)[1]
        n >>= 1
    return result


cdef class _DigitCtx:
    cdef long long p
    cdef Py_ssize_t k
    cdef long long Q
    cdef long long *rows      # (k-1) x k reduction rows
    cdef long long *pw        # powers of p

    def __cinit__(self, long long p, Py_ssize_t k, tuple modulus):
        self.p = p
        self.k = k
        cdef Py_ssize_t i, j
        self.pw = <long long *> PyMem_Malloc((k + 1) * sizeof(long long))
        self.rows = <long long *> PyMem_Malloc(max(k - 1, 1) * k * sizeof(long long))
        if self.pw == NULL or self.rows == NULL:
            raise MemoryError()
        self.pw[0] = 1
        for i in range(1, k + 1):
            self.pw[i] = self.pw[i - 1] * p
        self.Q = self.pw[k]
        # row 0: x^k = -(low part of modulus)
        cdef long long top
        if k > 1:
            for j in range(k):
                self.rows[j] = (-<long long> modulus[j]) % p
                if self.rows[j] < 0:
                    self.rows[j] += p
            for i in range(1, k - 1):
                top = self.rows[(i - 1) * k + k - 1]
                self.rows[i * k] = 0
                for j in range(1, k):
                    self.rows[i * k + j] = self.rows[(i - 1) * k + j - 1]
                if top:
                    for j in range(k):
                        self.rows[i * k + j] = (self.rows[i * k + j]
                                                + top * self.rows[j]) % self.p

    def __dealloc__(self):
        if self.pw != NULL:
            PyMem_Free(self.pw)
        if self.rows != NULL:
            PyMem_Free(self.rows)

    cdef long long mul(self, long long a, long long b):
        cdef long long conv[128]
        cdef long long da[64]
        cdef long long db[64]
        cdef Py_ssize_t k = self.k, i, j
        cdef long long p = self.p, ai, c, enc
        for i in range(k):
            da[i] = a % p; a = a / p
            db[i] = b % p; b = b / p
        for i in range(2 * k - 1):
            conv[i] = 0
        for i in range(k):
            ai = da[i]
            if ai:
                for j in range(k):
                    conv[i + j] += ai * db[j]
        for i in range(2 * k - 1):
            conv[i] = conv[i] % p
        for j in range(k - 1):
            c = conv[k + j]
            if c:
                for i in range(k):
                    conv[i] = (conv[i] + c * self.rows[j * k + i]) % p
        enc = 0
        for i in range(k - 1, -1, -1):
            enc = enc * p + conv[i]
        return enc

    cdef long long pow(self, long long a, long long n):
        cdef long long result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result


def build_tables(p, k, tuple modulus, tuple qm1_factors):
    """Mirror of _corepy.build_tables; see there for the conventions."""
    if k > 63:
        raise ValueError("extension degree beyond the table builder's bound")
    cdef _DigitCtx ctx = _DigitCtx(p, k, modulus)
    cdef long long Q = ctx.Q
    cdef long long qm1 = Q - 1
    cdef long long gen = 0, cand, r
    cdef Py_ssize_t i
    cdef bint ok
    for cand in range(2, Q):
        ok = True
        for r in qm1_factors:
            if ctx.pow(cand, qm1 / r) == 1:
                ok = False
                break
        if ok:
            gen = cand
            break
    if gen == 0:
        raise ValueError("no generator found (modulus not irreducible?)")

    exp = array("q", bytes(8 * qm1))
    log = array("q", bytes(8 * Q))
    zech = array("q", bytes(8 * qm1))
    cdef long long[::1] exp_v = exp
    cdef long long[::1] log_v = log
    cdef long long[::1] zech_v = zech
    cdef long long cur = 1, j, e, s
    log_v[0] = -1
    for j in range(qm1):
        exp_v[j] = cur
        log_v[cur] = j
        cur = ctx.mul(cur, gen)
    if cur != 1:
        raise ValueError("generator order mismatch (modulus not irreducible?)")
    cdef long long pm1 = <long long> p - 1
    for j in range(qm1):
        e = exp_v[j]
        if e % p == pm1:
            s = e - pm1
        else:
            s = e + 1
        zech_v[j] = log_v[s] if s else -1
    return exp, log, zech, gen


def count_units_range(log, zech, Q, m, list num_logs, list den_logs, t0, t1):
    """Mirror of _corepy.count_units_range; releases the GIL over the scan."""
    cdef long long[::1] log_v = log if isinstance(log, array) else array("q", log)
    cdef long long[::1] zech_v = zech if isinstance(zech, array) else array("q", zech)
    cdef long long qm1 = <long long> Q - 1
    cdef long long d0 = math.gcd(m, Q - 1)
    cdef Py_ssize_t nn = len(num_logs), nd = len(den_logs)
    cdef long long *nl = <long long *> PyMem_Malloc(nn * sizeof(long long))
    cdef long long *dl = <long long *> PyMem_Malloc(nd * sizeof(long long))
    cdef long long *zbuf = <long long *> PyMem_Malloc((nn + 1) * sizeof(long long))
    cdef long long *pbuf = <long long *> PyMem_Malloc((nd + 1) * sizeof(long long))
    if nl == NULL or dl == NULL or zbuf == NULL or pbuf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(nn):
        nl[i] = num_logs[nn - 1 - i]   # descending degree
    for i in range(nd):
        dl[i] = den_logs[nd - 1 - i]
    cdef long long units = 0
    cdef Py_ssize_t nzero = 0, npole = 0
    cdef long long start = t0, stop = t1
    cdef long long t, lt, acc, lc, z, numv, denv
    with nogil:
        for t in range(start, stop):
            lt = log_v[t]

            acc = nl[0]
            for i in range(1, nn):
                lc = nl[i]
                if acc >= 0 and lt >= 0:
                    acc = (acc + lt) % qm1
                else:
                    acc = -1
                if acc < 0:
                    acc = lc
                elif lc >= 0:
                    z = zech_v[(acc - lc + qm1) % qm1]
                    acc = -1 if z < 0 else (lc + z) % qm1
            numv = acc

            acc = dl[0]
            for i in range(1, nd):
                lc = dl[i]
                if acc >= 0 and lt >= 0:
                    acc = (acc + lt) % qm1
                else:
                    acc = -1
                if acc < 0:
                    acc = lc
                elif lc >= 0:
                    z = zech_v[(acc - lc + qm1) % qm1]
                    acc = -1 if z < 0 else (lc + z) % qm1
            denv = acc

            if denv < 0:
                pbuf[npole] = t
                npole += 1
            elif numv < 0:
                zbuf[nzero] = t
                nzero += 1
            elif (numv - denv) % d0 == 0:
                units += d0
    zeros = [zbuf[i] for i in range(nzero)]
    poles = [pbuf[i] for i in range(npole)]
    PyMem_Free(nl); PyMem_Free(dl); PyMem_Free(zbuf); PyMem_Free(pbuf)
    return units, zeros, poles
