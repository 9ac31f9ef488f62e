# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for dense integer polynomials; mirrors ``_pykernels``."""

import array

from libc.stdint cimport int64_t


def power_product(exponents):
    cdef Py_ssize_t i, e, deg = 0, cur = 0
    cdef int64_t c
    for e in exponents:
        deg += e
    if len(exponents) > 60:
        # |coefficients| <= 2**n, so int64 is only safe for short products
        return _power_product_obj(exponents)
    arr = array.array("q", [0]) * (deg + 1)
    cdef int64_t[::1] mv = arr
    mv[0] = 1
    for e in exponents:
        for i in range(cur, -1, -1):
            c = mv[i]
            if c != 0:
                mv[i + e] += c
                mv[i] = -c
        cur += e
    return arr.tolist()


def _power_product_obj(exponents):
    cdef list coeffs = [1]
    cdef list out
    cdef Py_ssize_t i, e
    for e in exponents:
        out = [0] * (len(coeffs) + e)
        for i in range(len(coeffs)):
            c = coeffs[i]
            out[i + e] += c
            out[i] -= c
        coeffs = out
    return coeffs


def taylor_shift(coeffs, a):
    cdef list c = list(coeffs)
    cdef Py_ssize_t d = len(c) - 1
    cdef Py_ssize_t i, j
    if a == 1:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] = c[j] + c[j + 1]
    elif a == -1:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] = c[j] - c[j + 1]
    else:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
    return c


def hom_eval(coeffs, u, v):
    cdef Py_ssize_t i, n = len(coeffs)
    if n == 0:
        return 0
    acc = coeffs[n - 1]
    if v == 1:
        for i in range(n - 2, -1, -1):
            acc = acc * u + coeffs[i]
        return acc
    vp = 1
    for i in range(n - 2, -1, -1):
        vp = vp * v
        acc = acc * u + coeffs[i] * vp
    return acc


def divide_linear(coeffs, u, v):
    cdef Py_ssize_t d = len(coeffs) - 1
    cdef Py_ssize_t i
    if d < 1:
        return None
    cdef list q = [0] * d
    r = coeffs[d]
    for i in range(d - 1, -1, -1):
        if r % v:
            return None
        q[i] = r // v
        r = coeffs[i] + u * q[i]
    if r:
        return None
    return q


def prem(a, b):
    cdef Py_ssize_t db = len(b) - 1
    cdef list r = list(a)
    cdef Py_ssize_t shift, i, k
    cdef Py_ssize_t e = len(a) - len(b) + 1
    lc = b[db]
    while len(r) > db and r:
        shift = len(r) - 1 - db
        c = r[len(r) - 1]
        for k in range(len(r)):
            r[k] = lc * r[k]
        for i in range(db + 1):
            r[shift + i] = r[shift + i] - c * b[i]
        while r and r[len(r) - 1] == 0:
            r.pop()
        e -= 1
    if e > 0 and r:
        m = lc ** e
        r = [m * x for x in r]
    return r
