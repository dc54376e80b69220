# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: fixed-width (int64) variants of _pure.py.

Callers must pre-check magnitudes (see _kernels.__init__); these routines do
no overflow detection of their own.
"""

from libc.stdlib cimport malloc, free


cdef inline long long imod(long long v, long long m) nogil:
    v = v % m
    if v < 0:
        v += m
    return v


def mat_mul_w1(a, b, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q, long long mod):
    cdef Py_ssize_t i, j, l
    cdef long long s
    cdef long long *ca = <long long *> malloc(n * p * sizeof(long long))
    cdef long long *cb = <long long *> malloc(p * q * sizeof(long long))
    if ca == NULL or cb == NULL:
        if ca != NULL:
            free(ca)
        if cb != NULL:
            free(cb)
        raise MemoryError
    for i in range(n * p):
        ca[i] = a[i]
    for i in range(p * q):
        cb[i] = b[i]
    out = [0] * (n * q)
    for i in range(n):
        for j in range(q):
            s = 0
            for l in range(p):
                s += ca[i * p + l] * cb[l * q + j]
            out[i * q + j] = imod(s, mod)
    free(ca)
    free(cb)
    return out


def mat_mul_w2(a, b, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
               long long mod, long long c0, long long c1):
    cdef Py_ssize_t i, j, l, ai, bi
    cdef long long sx, sy, ax, ay, bx, by, yy
    cdef long long *ca = <long long *> malloc(n * p * 2 * sizeof(long long))
    cdef long long *cb = <long long *> malloc(p * q * 2 * sizeof(long long))
    if ca == NULL or cb == NULL:
        if ca != NULL:
            free(ca)
        if cb != NULL:
            free(cb)
        raise MemoryError
    for i in range(n * p * 2):
        ca[i] = a[i]
    for i in range(p * q * 2):
        cb[i] = b[i]
    out = [0] * (n * q * 2)
    for i in range(n):
        for j in range(q):
            sx = 0
            sy = 0
            for l in range(p):
                ai = (i * p + l) * 2
                bi = (l * q + j) * 2
                ax = ca[ai]
                ay = ca[ai + 1]
                bx = cb[bi]
                by = cb[bi + 1]
                yy = ay * by
                sx += ax * bx - c0 * yy
                sy += ax * by + ay * bx - c1 * yy
            out[(i * q + j) * 2] = imod(sx, mod)
            out[(i * q + j) * 2 + 1] = imod(sy, mod)
    free(ca)
    free(cb)
    return out


def cyc_mat_mul(a, b, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
                Py_ssize_t prime, Py_ssize_t power):
    cdef Py_ssize_t deg = power * (prime - 1)
    cdef Py_ssize_t order = power * prime
    cdef Py_ssize_t i, j, l, s, t, e, ii, ao, bo, base
    cdef long long av, bv, v
    cdef long long *ca = <long long *> malloc(n * p * deg * sizeof(long long))
    cdef long long *cb = <long long *> malloc(p * q * deg * sizeof(long long))
    cdef long long *acc = <long long *> malloc(order * sizeof(long long))
    if ca == NULL or cb == NULL or acc == NULL:
        if ca != NULL:
            free(ca)
        if cb != NULL:
            free(cb)
        if acc != NULL:
            free(acc)
        raise MemoryError
    for i in range(n * p * deg):
        ca[i] = a[i]
    for i in range(p * q * deg):
        cb[i] = b[i]
    out = [0] * (n * q * deg)
    for i in range(n):
        for j in range(q):
            for e in range(order):
                acc[e] = 0
            for l in range(p):
                ao = (i * p + l) * deg
                bo = (l * q + j) * deg
                for s in range(deg):
                    av = ca[ao + s]
                    if av != 0:
                        for t in range(deg):
                            bv = cb[bo + t]
                            if bv != 0:
                                e = s + t
                                if e >= order:
                                    e -= order
                                acc[e] += av * bv
            for e in range(deg, order):
                v = acc[e]
                if v != 0:
                    base = e - deg
                    for ii in range(prime - 1):
                        acc[ii * power + base] -= v
            for s in range(deg):
                out[(i * q + j) * deg + s] = acc[s]
    free(ca)
    free(cb)
    free(acc)
    return out
