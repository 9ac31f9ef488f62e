"""Pure-Python reference kernels for dense integer polynomials.

Coefficient lists are little-endian (index i holds the degree-i coefficient)
and carry no trailing zeros unless they represent the zero polynomial ``[]``.
The compiled module ``_ckernels`` exposes the same functions.
"""


def power_product(exponents):
    coeffs = [1]
    for e in exponents:
        out = [0] * (len(coeffs) + e)
        for i, c in enumerate(coeffs):
            out[i + e] += c
            out[i] -= c
        coeffs = out
    return coeffs


def taylor_shift(coeffs, a):
    """Coefficients of f(x + a)."""
    c = list(coeffs)
    d = len(c) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def hom_eval(coeffs, u, v):
    """Return ``v**deg * f(u/v)`` as an integer (same sign as f(u/v) when v > 0)."""
    if not coeffs:
        return 0
    acc = coeffs[-1]
    vp = 1
    for i in range(len(coeffs) - 2, -1, -1):
        vp *= v
        acc = acc * u + coeffs[i] * vp
    return acc


def divide_linear(coeffs, u, v):
    """Exact quotient of f by (v*x - u), or None when it is not an integer polynomial division."""
    d = len(coeffs) - 1
    if d < 1:
        return None
    q = [0] * d
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
    """Pseudo-remainder of a by b with multiplier ``lc(b)**(deg a - deg b + 1)``."""
    db = len(b) - 1
    r = list(a)
    lc = b[-1]
    e = len(a) - len(b) + 1
    while len(r) > db and r:
        shift = len(r) - 1 - db
        c = r[-1]
        r = [lc * x for x in r]
        for i in range(db + 1):
            r[shift + i] -= c * b[i]
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0 and r:
        m = lc ** e
        r = [m * x for x in r]
    return r
