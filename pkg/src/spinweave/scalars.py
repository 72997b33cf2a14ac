"""Exact arithmetic in the number field Q(i, sqrt(2)).

Every scalar in the library is a rational combination of the basis
{1, i, sqrt2, i*sqrt2}.  This is the smallest field containing all the
constants the constructions need (i for gamma matrices and volume
normalisation, sqrt2 for the almost-Hermitean module), so a single
kernel serves everything.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Union

Rat = Union[int, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _gmul(a, b, c, d):
    # (a+bi)(c+di)
    return a * c - b * d, a * d + b * c


def _rat_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None."""
    if q < 0:
        return None
    if q == 0:
        return _F0
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class ExactScalar:
    """Element a + b*i + c*sqrt2 + d*i*sqrt2 with rational coordinates."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Rat = 0, b: Rat = 0, c: Rat = 0, d: Rat = 0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.c = c if type(c) is Fraction else Fraction(c)
        self.d = d if type(d) is Fraction else Fraction(d)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return (
            self.a.numerator == 0
            and self.b.numerator == 0
            and self.c.numerator == 0
            and self.d.numerator == 0
        )

    def is_rational(self) -> bool:
        return self.b.numerator == 0 and self.c.numerator == 0 and self.d.numerator == 0

    def is_real(self) -> bool:
        """True iff the value lies in R (i.e. in Q(sqrt2))."""
        return self.b.numerator == 0 and self.d.numerator == 0

    def is_gaussian(self) -> bool:
        """True iff the value lies in Q(i)."""
        return self.c.numerator == 0 and self.d.numerator == 0

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        other = sc(other)
        return ExactScalar(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        other = sc(other)
        return ExactScalar(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other) -> "ExactScalar":
        return sc(other).__sub__(self)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        other = sc(other)
        # write self = x + y*sqrt2, other = u + v*sqrt2 with Gaussian x,y,u,v
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # fast path: both Gaussian rationals
        if c1.numerator == 0 and d1.numerator == 0 and c2.numerator == 0 and d2.numerator == 0:
            ra, rb = _gmul(a1, b1, a2, b2)
            return ExactScalar(ra, rb, 0, 0)
        xa, xb = _gmul(a1, b1, a2, b2)
        ya, yb = _gmul(c1, d1, c2, d2)
        ra, rb = xa + 2 * ya, xb + 2 * yb
        pa, pb = _gmul(a1, b1, c2, d2)
        qa, qb = _gmul(c1, d1, a2, b2)
        return ExactScalar(ra, rb, pa + qa, pb + qb)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # 1/(x + y*sqrt2) = (x - y*sqrt2) / (x^2 - 2 y^2), Gaussian denominator.
        # x^2 - 2 y^2 = 0 has no nonzero Gaussian solutions since sqrt2 is
        # not a Gaussian rational.
        xa, xb = self.a, self.b
        ya, yb = self.c, self.d
        wa, wb = _gmul(xa, xb, xa, xb)
        za, zb = _gmul(ya, yb, ya, yb)
        wa, wb = wa - 2 * za, wb - 2 * zb
        nrm = wa * wa + wb * wb
        # conjugate / norm gives the Gaussian inverse of w
        ia, ib = wa / nrm, -wb / nrm
        pa, pb = _gmul(xa, xb, ia, ib)
        qa, qb = _gmul(ya, yb, ia, ib)
        return ExactScalar(pa, pb, -qa, -qb)

    def __truediv__(self, other) -> "ExactScalar":
        return self * sc(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return sc(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation (fixes sqrt2)."""
        return ExactScalar(self.a, -self.b, self.c, -self.d)

    # -- order-flavoured helpers ----------------------------------------

    def real_sign(self) -> int:
        """Exact sign of the real part a + c*sqrt2 (requires is_real data only)."""
        a, c = self.a, self.c
        if a == 0 and c == 0:
            return 0
        if a >= 0 and c >= 0:
            return 1
        if a <= 0 and c <= 0:
            return -1
        # mixed signs: compare a^2 against 2 c^2
        if a * a > 2 * c * c:
            return 1 if a > 0 else -1
        if a * a < 2 * c * c:
            return 1 if c > 0 else -1
        return 0  # unreachable: a^2 = 2c^2 forces a = c = 0

    def imag_sign(self) -> int:
        """Exact sign of the imaginary part b + d*sqrt2."""
        return ExactScalar(self.b, 0, self.d, 0).real_sign()

    def leads_positive(self) -> bool:
        """Sign rule used to fix overall sign freedom: Re > 0, else Im > 0."""
        rs = self.real_sign()
        if rs != 0:
            return rs > 0
        return self.imag_sign() > 0

    def sqrt(self) -> Optional["ExactScalar"]:
        """A square root inside Q(i, sqrt2) if one exists, else None."""
        if self.is_zero():
            return ZERO
        # target (u + v*sqrt2)^2 with Gaussian u, v:
        #   u^2 + 2 v^2 = p,  2 u v = q   where self = p + q*sqrt2.
        p = (self.a, self.b)
        q = (self.c, self.d)
        if q == (_F0, _F0):
            r = _gauss_sqrt(p)
            if r is not None:
                return ExactScalar(r[0], r[1], 0, 0)
            half = _gauss_sqrt((p[0] / 2, p[1] / 2))
            if half is not None:
                return ExactScalar(0, 0, half[0], half[1])
            return None
        # u != 0; u^2 solves 2 t^2 - 2 p t + q^2/2... derived from
        # t + q^2/(4t) = p with t = u^2:  4 t^2 - 4 p t + q^2 = 0.
        disc = _gauss_sqrt(_gsub(_gmul(p[0], p[1], p[0], p[1]), _gscale(_gmul(q[0], q[1], q[0], q[1]), 2)))
        if disc is None:
            return None
        for sign in (1, -1):
            t = _gscale(_gadd(p, _gscale(disc, sign)), Fraction(1, 2))
            u = _gauss_sqrt(t)
            if u is None or u == (_F0, _F0):
                continue
            inv2u = _gauss_inv(_gscale(u, 2))
            v = _gmul(q[0], q[1], inv2u[0], inv2u[1])
            cand = ExactScalar(u[0], u[1], v[0], v[1])
            if cand * cand == self:
                return cand
        return None

    # -- equality / hashing / display ------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = sc(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"ExactScalar({self!s})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for coeff, unit in ((self.a, ""), (self.b, "i"), (self.c, "sqrt2"), (self.d, "i*sqrt2")):
            if coeff == 0:
                continue
            if unit == "":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(unit)
            elif coeff == -1:
                parts.append("-" + unit)
            else:
                parts.append(f"{coeff}*{unit}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return [str(self.a), str(self.b), str(self.c), str(self.d)]

    @classmethod
    def from_json(cls, data) -> "ExactScalar":
        return cls(*(Fraction(s) for s in data))


def _gadd(x, y):
    return x[0] + y[0], x[1] + y[1]


def _gsub(x, y):
    return x[0] - y[0], x[1] - y[1]


def _gscale(x, s):
    return x[0] * s, x[1] * s


def _gauss_inv(x):
    n = x[0] * x[0] + x[1] * x[1]
    return x[0] / n, -x[1] / n


def _gauss_sqrt(w) -> Optional[tuple]:
    """Square root of a Gaussian rational as a Gaussian rational, or None."""
    s, t = w
    if t == 0:
        r = _rat_sqrt(s)
        if r is not None:
            return (r, _F0)
        r = _rat_sqrt(-s)
        if r is not None:
            return (_F0, r)
        return None
    # (g + hi)^2 = s + ti:  g^2 = (s + |w|)/2 with |w| = sqrt(s^2+t^2)
    mod = _rat_sqrt(s * s + t * t)
    if mod is None:
        return None
    g = _rat_sqrt((s + mod) / 2)
    if g is None or g == 0:
        return None
    h = t / (2 * g)
    if g * g - h * h == s and 2 * g * h == t:
        return (g, h)
    return None


def sc(x) -> ExactScalar:
    """Coerce an int, Fraction, or ExactScalar into the field."""
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(i, sqrt2)")


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
TWO = ExactScalar(2)
MINUS_ONE = ExactScalar(-1)
HALF = ExactScalar(Fraction(1, 2))
I = ExactScalar(0, 1)
MINUS_I = ExactScalar(0, -1)
SQRT2 = ExactScalar(0, 0, 1)
