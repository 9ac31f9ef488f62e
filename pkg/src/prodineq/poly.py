"""Dense integer polynomials with exact evaluation and Sturm root counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import kernels
from .errors import EndpointIsRoot, ExponentZero, NoNegativeValue, ZeroPolynomial

NEG_INF = float("-inf")

Number = Union[int, Fraction]
Interval = tuple[Fraction, Optional[Fraction]]


def _as_int(c) -> int:
    if isinstance(c, int):
        return int(c)
    v = int(c)
    if v != c:
        raise ValueError(f"non-integer coefficient {c!r}")
    return v


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [_as_int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(other * c for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: Number) -> Fraction:
        return eval_rational(self, x)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reverse(self) -> "IntPoly":
        """``x**deg * f(1/x)`` after dropping factors of x; same sign as f(1/x) for x > 0."""
        c = list(self.coeffs)
        while c and c[0] == 0:
            c.pop(0)
        return IntPoly(reversed(c))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if i == 1 else f"x^{i}")
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def power_product(exponents: Sequence[int]) -> IntPoly:
    """Expanded ``prod(x**e - 1 for e in exponents)``."""
    exps = [int(e) for e in exponents]
    for e in exps:
        if e < 1:
            raise ExponentZero(f"exponent {e} must be a positive integer")
    return IntPoly(kernels.power_product(exps))


def sub_scaled(a: IntPoly, ca: int, b: IntPoly, cb: int) -> IntPoly:
    """``ca*a - cb*b``."""
    x, y = a.coeffs, b.coeffs
    out = [0] * max(len(x), len(y))
    for i, c in enumerate(x):
        out[i] += ca * c
    for i, c in enumerate(y):
        out[i] -= cb * c
    return IntPoly(out)


def eval_rational(poly: IntPoly, x: Number) -> Fraction:
    x = Fraction(x)
    if not poly.coeffs:
        return Fraction(0)
    num = kernels.hom_eval(poly.coeffs, x.numerator, x.denominator)
    return Fraction(num, x.denominator ** (len(poly.coeffs) - 1))


def sign_at(poly: IntPoly, x: Number) -> int:
    """Sign of poly(x) without building the full rational value."""
    x = Fraction(x)
    v = kernels.hom_eval(poly.coeffs, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def taylor_shift(poly: IntPoly, a: int) -> IntPoly:
    return IntPoly(kernels.taylor_shift(poly.coeffs, a))


def taylor_shift_one(poly: IntPoly) -> IntPoly:
    """The polynomial g with g(t) = poly(1 + t)."""
    return taylor_shift(poly, 1)


def root_multiplicity(poly: IntPoly, x: Number) -> tuple[int, IntPoly]:
    """Largest m with (v*t - u)**m dividing poly, where x = u/v, and the quotient."""
    if poly.is_zero():
        raise ZeroPolynomial("multiplicity is undefined for the zero polynomial")
    x = Fraction(x)
    coeffs = list(poly.coeffs)
    m = 0
    while True:
        q = kernels.divide_linear(coeffs, x.numerator, x.denominator)
        if q is None:
            return m, IntPoly(coeffs)
        coeffs = q
        m += 1


def root_multiplicity_at_one(poly: IntPoly) -> tuple[int, IntPoly]:
    return root_multiplicity(poly, 1)


# --- gcd and square-free part -------------------------------------------------


def content(poly: IntPoly) -> int:
    return math.gcd(*poly.coeffs) if poly.coeffs else 0


def primitive_part(poly: IntPoly) -> IntPoly:
    """Divide out the content and make the leading coefficient positive."""
    if poly.is_zero():
        return poly
    g = content(poly)
    if poly.lc < 0:
        g = -g
    return IntPoly(c // g for c in poly.coeffs)


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    return IntPoly(kernels.prem(a.coeffs, b.coeffs))


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b when b divides a in Z[x]; ValueError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    lc = b.lc
    if len(r) - 1 < db:
        if r:
            raise ValueError("divisor does not divide dividend")
        return IntPoly.zero()
    q = [0] * (len(r) - db)
    for shift in range(len(r) - 1 - db, -1, -1):
        c, rem = divmod(r[shift + db], lc)
        if rem:
            raise ValueError("divisor does not divide dividend")
        q[shift] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                r[shift + i] -= c * bc
    if any(r):
        raise ValueError("divisor does not divide dividend")
    return IntPoly(q)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = primitive_part(a), primitive_part(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = prem(a, b)
        a, b = b, primitive_part(r)
    return primitive_part(a)


def squarefree_part(poly: IntPoly) -> IntPoly:
    if poly.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if poly.degree < 1:
        return primitive_part(poly)
    g = poly_gcd(poly, poly.derivative())
    return primitive_part(exact_quotient(primitive_part(poly), g))


# --- Sturm chains -------------------------------------------------------------


@dataclass(frozen=True)
class SturmChain:
    members: tuple[IntPoly, ...]

    def variations(self, x: Optional[Number]) -> int:
        """Sign variations at x; ``None`` means +infinity."""
        if x is None:
            signs = [1 if m.lc > 0 else -1 for m in self.members]
        else:
            x = Fraction(x)
            signs = []
            for m in self.members:
                s = sign_at(m, x)
                if s:
                    signs.append(s)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def count(self, lo: Number, hi: Optional[Number] = None) -> int:
        """Distinct roots of the first member in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


def sturm_chain(poly: IntPoly) -> SturmChain:
    """Sturm chain of the square-free part of poly, built from scaled pseudo-remainders."""
    f = squarefree_part(poly)
    chain = [f]
    if f.degree < 1:
        return SturmChain(tuple(chain))
    df = f.derivative()
    chain.append(IntPoly(c // content(df) for c in df.coeffs))
    while True:
        a, b = chain[-2], chain[-1]
        r = prem(a, b)
        if r.is_zero():
            break
        # prem multiplies by lc(b)**(delta+1); undo a negative multiplier so signs survive
        delta = a.degree - b.degree
        if b.lc < 0 and (delta + 1) % 2 == 1:
            r = -r
        g = content(r)
        chain.append(IntPoly(-c // g for c in r.coeffs))
    return SturmChain(tuple(chain))


def sturm_count(poly: IntPoly, lo: Number, hi: Optional[Number] = None) -> int:
    """Number of distinct real roots of poly in (lo, hi] (hi=None: (lo, +inf))."""
    if poly.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    lo = Fraction(lo)
    if sign_at(poly, lo) == 0:
        raise EndpointIsRoot(f"left endpoint {lo} is a root")
    return sturm_chain(poly).count(lo, hi)


def root_upper_bound(poly: IntPoly) -> int:
    """Integer strictly above the modulus of every complex root (Cauchy bound)."""
    c = poly.coeffs
    if len(c) < 2:
        return 1
    return 2 + max(abs(x) for x in c[:-1]) // abs(c[-1])


# --- isolation ----------------------------------------------------------------


def _split_point(poly: IntPoly, a: Fraction, b: Fraction) -> Fraction:
    """A point of (a, b) near the midpoint that is not a root of poly."""
    k = 2
    while True:
        for j in range(1, k):
            m = a + (b - a) * Fraction(j, k)
            if sign_at(poly, m) != 0:
                return m
        k += 1


@dataclass
class RootLayout:
    """Isolating intervals of the distinct roots of ``poly`` in (lo, hi).

    Each interval ``(a, b)`` holds exactly one distinct root in (a, b]; its
    endpoints are never roots. ``samples[i]`` is a non-root point in the i-th
    gap: ``samples[0]`` lies in [lo, first root), ``samples[i]`` between root i
    and root i+1, ``samples[-1]`` after the last root.
    """

    poly: IntPoly
    chain: SturmChain
    lo: Fraction
    hi: Optional[Fraction]
    intervals: list[tuple[Fraction, Fraction]]

    def refine(self, i: int) -> None:
        a, b = self.intervals[i]
        m = _split_point(self.poly, a, b)
        if self.chain.count(a, m) == 1:
            self.intervals[i] = (a, m)
        else:
            self.intervals[i] = (m, b)

    @property
    def samples(self) -> list[Fraction]:
        if not self.intervals:
            return [simplest_between(self.lo, self.hi)]
        return [self.intervals[0][0]] + [b for _, b in self.intervals]

    def gap_signs(self) -> list[int]:
        return [sign_at(self.poly, s) for s in self.samples]


def isolate_roots(poly: IntPoly, lo: Number, hi: Optional[Number] = None) -> RootLayout:
    """Isolate the distinct real roots of poly in (lo, hi) by Sturm bisection."""
    if poly.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    lo = Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if sign_at(poly, lo) == 0:
        raise EndpointIsRoot(f"left endpoint {lo} is a root")
    if hi is not None and sign_at(poly, hi) == 0:
        raise EndpointIsRoot(f"right endpoint {hi} is a root")
    chain = sturm_chain(poly)
    top = hi
    if top is None:
        top = Fraction(max(root_upper_bound(poly), math.floor(lo) + 1))
    intervals: list[tuple[Fraction, Fraction]] = []
    if top > lo:
        stack = [(lo, top, chain.variations(lo), chain.variations(top))]
        while stack:
            a, b, va, vb = stack.pop()
            n = va - vb
            if n == 0:
                continue
            if n == 1:
                intervals.append((a, b))
                continue
            m = _split_point(poly, a, b)
            vm = chain.variations(m)
            stack.append((m, b, vm, vb))
            stack.append((a, m, va, vm))
    intervals.sort()
    return RootLayout(poly, chain, lo, hi, intervals)


def simplest_between(a: Number, b: Optional[Number] = None) -> Fraction:
    """The simplest rational (Stern-Brocot sense) in the open interval (a, b); b=None is +inf."""
    a = Fraction(a)
    b = None if b is None else Fraction(b)
    if b is not None and not a < b:
        raise ValueError("empty interval")
    if a < 0 and (b is None or b > 0):
        return Fraction(0)
    if b is not None and b <= 0:
        return -simplest_between(-b, -a)
    fl = math.floor(a)
    if b is None or fl + 1 < b:
        return Fraction(fl + 1)
    fa, fb = a - fl, b - fl
    inner = simplest_between(1 / fb, None if fa == 0 else 1 / fa)
    return fl + 1 / inner


def negative_point(layout: RootLayout, gap: int, depth: int = 64) -> Fraction:
    """A simple rational x > lo in the given gap with poly(x) < 0.

    The gap's sample must already be negative. Candidates are the simplest
    rationals spanning the gap's outer bounds; the bounding intervals are
    bisected until a candidate lands inside the gap.
    """
    poly, lo = layout.poly, layout.lo
    r = len(layout.intervals)
    for _ in range(depth):
        outer_lo = lo if gap == 0 else layout.intervals[gap - 1][0]
        if gap < r:
            outer_hi = layout.intervals[gap][1]
        else:
            outer_hi = layout.hi
        c = simplest_between(outer_lo, outer_hi)
        if c > lo and (layout.hi is None or c < layout.hi) and sign_at(poly, c) < 0:
            return c
        if gap > 0:
            layout.refine(gap - 1)
        if gap < r:
            layout.refine(gap)
    s = layout.samples[gap]
    if s > lo and sign_at(poly, s) < 0:
        return s
    # gap 0 with its sample on lo itself: walk towards lo from the first root's interval
    right = layout.intervals[0][1] if r else (layout.hi if layout.hi is not None else lo + 1)
    step = (right - lo) / 2
    for _ in range(16 * depth):
        c = lo + step
        if sign_at(poly, c) < 0:
            return c
        step /= 2
    raise NoNegativeValue("no negative value found")  # pragma: no cover


def isolate_negative(poly: IntPoly, lo: Number, hi: Optional[Number] = None) -> Fraction:
    """Exact rational x in (lo, hi) with poly(x) < 0."""
    if poly.is_zero():
        raise NoNegativeValue("the zero polynomial is never negative")
    lo = Fraction(lo)
    _, stripped = root_multiplicity(poly, lo)
    if hi is not None:
        hi = Fraction(hi)
        # (x - hi)**k has sign (-1)**k on the interval
        k, stripped_hi = root_multiplicity(stripped, hi)
        stripped = stripped_hi if k % 2 == 0 else -stripped_hi
    layout = isolate_roots(stripped, lo, hi)
    for gap, s in enumerate(layout.gap_signs()):
        if s < 0:
            w = negative_point(layout, gap)
            assert eval_rational(poly, w) < 0
            return w
    raise NoNegativeValue(f"polynomial is non-negative on ({lo}, {'inf' if hi is None else hi})")
