# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of gradedk._kernel.pure.

Same functions, same deterministic pivoting, same results.  The mod-p
paths run on C integers (fields enforce p < 2**31 so products fit in 64
bits); the rational paths keep Python Fraction/int objects but pull the
loop bookkeeping down to C.
"""

from fractions import Fraction

__all__ = ["mat_mul", "rref", "rank", "solve", "nullspace"]


cdef inline long long _inv_mod(long long x, long long p):
    # p is prime, x not divisible by p
    return pow(x, p - 2, p)


def mat_mul(a, b, charp):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t k = len(b)
    cdef Py_ssize_t m = len(b[0]) if k else 0
    cdef Py_ssize_t i, j, t
    cdef long long p, x, acc
    if n and len(a[0]) != k:
        raise ValueError("shape mismatch in mat_mul")
    out = []
    if charp:
        p = charp
        for i in range(n):
            arow = a[i]
            row = [0] * m
            for t in range(k):
                x = arow[t]
                if x:
                    brow = b[t]
                    for j in range(m):
                        acc = row[j]
                        acc = (acc + x * <long long> brow[j]) % p
                        row[j] = acc
            out.append(row)
        return out
    zero = Fraction(0)
    for i in range(n):
        arow = a[i]
        row = [zero] * m
        for t in range(k):
            xq = arow[t]
            if xq:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        row[j] = row[j] + xq * brow[j]
        out.append(row)
    return out


def rref(a, charp):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(a[0]) if n else 0
    cdef Py_ssize_t r = 0, i, j, c, pr
    cdef long long p, inv, f
    rows = [list(row) for row in a]
    pivots = []
    if charp:
        p = charp
        for c in range(m):
            pr = -1
            for i in range(r, n):
                if (<long long> rows[i][c]) % p:
                    pr = i
                    break
            if pr < 0:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            rr = rows[r]
            inv = _inv_mod(rr[c], p)
            for j in range(c, m):
                rr[j] = (<long long> rr[j] * inv) % p
            for i in range(n):
                if i != r and rows[i][c]:
                    ri = rows[i]
                    f = ri[c]
                    for j in range(c, m):
                        ri[j] = ((<long long> ri[j]) - f * (<long long> rr[j])) % p
            pivots.append(c)
            r += 1
            if r == n:
                break
        return rows, pivots
    for c in range(m):
        pr = -1
        for i in range(r, n):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rr = rows[r]
        invq = Fraction(1) / rr[c]
        for j in range(c, m):
            if rr[j]:
                rr[j] = rr[j] * invq
        for i in range(n):
            if i != r and rows[i][c]:
                ri = rows[i]
                fq = ri[c]
                for j in range(c, m):
                    if rr[j]:
                        ri[j] = ri[j] - fq * rr[j]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(a, charp):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(a[0]) if n else 0
    cdef Py_ssize_t r = 0, i, j, c, pr
    cdef long long p, piv, inv, f
    if n == 0 or m == 0:
        return 0
    if charp:
        p = charp
        rows = [[(<long long> x) % p for x in row] for row in a]
        for c in range(m):
            pr = -1
            for i in range(r, n):
                if rows[i][c]:
                    pr = i
                    break
            if pr < 0:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            rr = rows[r]
            piv = rr[c]
            inv = _inv_mod(piv, p)
            for i in range(r + 1, n):
                if rows[i][c]:
                    ri = rows[i]
                    f = ((<long long> ri[c]) * inv) % p
                    for j in range(c, m):
                        ri[j] = ((<long long> ri[j]) - f * (<long long> rr[j])) % p
            r += 1
            if r == n:
                break
        return r
    # clear denominators row by row, then fraction-free Bareiss
    rows = []
    for src in a:
        den = 1
        for x in src:
            if isinstance(x, Fraction):
                d = x.denominator
                if d != 1:
                    g = _gcd(den, d)
                    den = den // g * d
            elif not isinstance(x, int):
                raise TypeError("rational matrix entries must be Fraction or int")
        rows.append([int(x * den) for x in src])
    prev = 1
    for c in range(m):
        pr = -1
        for i in range(r, n):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rr = rows[r]
        pivq = rr[c]  # arbitrary-precision: keep boxed
        for i in range(r + 1, n):
            ri = rows[i]
            fac = ri[c]
            for j in range(c, m):
                ri[j] = (ri[j] * pivq - fac * rr[j]) // prev
        prev = pivq
        r += 1
        if r == n:
            break
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve(a, b, charp):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t k = len(a[0]) if n else 0
    cdef Py_ssize_t m = len(b[0]) if b else 0
    cdef Py_ssize_t i, j, idx, c
    if len(b) != n:
        raise ValueError("shape mismatch in solve")
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    if n:
        red, pivots = rref(aug, charp)
    else:
        red, pivots = [], []
    zero = 0 if charp else Fraction(0)
    for c in pivots:
        if c >= k:
            return None
    x = [[zero] * m for _ in range(k)]
    for idx in range(len(pivots)):
        c = pivots[idx]
        row = red[idx]
        xc = x[c]
        for j in range(m):
            xc[j] = row[k + j]
    for i in range(len(pivots), n):
        if i >= len(red):
            break
        row = red[i]
        for j in range(k, k + m):
            if row[j]:
                return None
    return x


def nullspace(a, charp):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t k = len(a[0]) if n else 0
    cdef Py_ssize_t c, idx
    if n == 0:
        one = 1 if charp else Fraction(1)
        zero = 0 if charp else Fraction(0)
        return [[one if i == j else zero for i in range(k)] for j in range(k)]
    red, pivots = rref(a, charp)
    pivset = set(pivots)
    zero = 0 if charp else Fraction(0)
    one = 1 if charp else Fraction(1)
    basis = []
    for c in range(k):
        if c in pivset:
            continue
        v = [zero] * k
        v[c] = one
        for idx in range(len(pivots)):
            pc = pivots[idx]
            val = red[idx][c]
            if val:
                v[pc] = (-val) % charp if charp else -val
        basis.append(v)
    return basis
