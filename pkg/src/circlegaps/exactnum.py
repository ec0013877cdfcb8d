"""Exact number types for circle-sequence experiments.

Two exact carriers cover every comparison the analyses need:
arbitrary-precision rationals (``fractions.Fraction``, re-exported as
``Rational``) for digit-reversal values and interval lengths, and
``GoldenNumber`` for elements of the real quadratic field Q(sqrt5), which
is where every fractional part {m*phi} lives.  A third, error-bounded
fixed-point type ``FixedReal`` carries the one sequence (base-2 logarithms
of odd integers) that has no finite exact representation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "GoldenNumber",
    "FixedReal",
    "CircleValue",
    "rational_compare",
    "golden_sign",
    "golden_frac",
    "PHI",
    "SQRT5",
    "FIXED_BITS",
    "FIXED_ONE",
]


def rational_compare(a: Fraction, b: Fraction) -> int:
    """Three-way order of two rationals: -1, 0 or +1."""
    if a < b:
        return -1
    if a == b:
        return 0
    return 1


def _int_sign(x: int) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class GoldenNumber:
    """Element p + q*sqrt(5) of Q(sqrt5) with rational p, q.

    Internally a reduced integer triple (a, b, d) with value
    (a + b*sqrt5)/d and d > 0, so every ordering test stays in integer
    arithmetic.  The sign rule: components of equal sign decide directly;
    for mixed signs the heavier square wins, i.e. the sign of a prevails
    exactly when a*a > 5*b*b.  (a*a == 5*b*b forces a == b == 0 because
    sqrt5 is irrational.)
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, p: Union[int, Fraction] = 0, q: Union[int, Fraction] = 0):
        p = Fraction(p)
        q = Fraction(q)
        d = math.lcm(p.denominator, q.denominator)
        a = p.numerator * (d // p.denominator)
        b = q.numerator * (d // q.denominator)
        g = math.gcd(a, b, d)
        object.__setattr__(self, "_a", a // g)
        object.__setattr__(self, "_b", b // g)
        object.__setattr__(self, "_d", d // g)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GoldenNumber:
        if d == 0:
            raise ZeroDivisionError("zero denominator in GoldenNumber")
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(a, b, d)
        self = object.__new__(cls)
        object.__setattr__(self, "_a", a // g)
        object.__setattr__(self, "_b", b // g)
        object.__setattr__(self, "_d", d // g)
        return self

    def __reduce__(self):
        return (_golden_from_triple, (self._a, self._b, self._d))

    @property
    def p(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def q(self) -> Fraction:
        return Fraction(self._b, self._d)

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNumber is immutable")

    def __repr__(self) -> str:
        return f"GoldenNumber({self.p!r}, {self.q!r})"

    def __str__(self) -> str:
        return f"({self.p})+({self.q})sqrt5"

    def sign(self) -> int:
        a, b = self._a, self._b
        if b == 0:
            return _int_sign(a)
        if a == 0:
            return _int_sign(b)
        sa, sb = _int_sign(a), _int_sign(b)
        if sa == sb:
            return sa
        if a * a > 5 * b * b:
            return sa
        if a * a < 5 * b * b:
            return sb
        return 0  # unreachable for nonzero rationals

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    @staticmethod
    def _coerce(other) -> "GoldenNumber | None":
        if isinstance(other, GoldenNumber):
            return other
        if isinstance(other, int):
            return GoldenNumber._raw(other, 0, 1)
        if isinstance(other, Fraction):
            return GoldenNumber._raw(other.numerator, 0, other.denominator)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __add__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber._raw(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self) -> GoldenNumber:
        return GoldenNumber._raw(-self._a, -self._b, self._d)

    def __sub__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber._raw(
            self._a * o._d - o._a * self._d,
            self._b * o._d - o._b * self._d,
            self._d * o._d,
        )

    def __rsub__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber._raw(
            self._a * o._a + 5 * self._b * o._b,
            self._a * o._b + self._b * o._a,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o._a * o._a - 5 * o._b * o._b
        if norm == 0:
            raise ZeroDivisionError("division by zero GoldenNumber")
        # 1/((a + b sqrt5)/d) = d (a - b sqrt5) / (a^2 - 5 b^2)
        return self * GoldenNumber._raw(o._d * o._a, -o._d * o._b, norm)

    def __rtruediv__(self, other) -> GoldenNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self) -> GoldenNumber:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return (self._a + self._b * math.sqrt(5)) / self._d

    def floor(self) -> int:
        """Largest integer t with t <= self, by exact sign checks.

        A float estimate seeds t; an integer-sqrt seed replaces it when the
        components are too large for float conversion.  Either way the
        result is pinned by golden-sign comparisons, so at most O(1)
        corrections run and the answer is exact.
        """
        try:
            t = math.floor(float(self))
        except OverflowError:
            s = math.isqrt(5 * self._b * self._b)
            num = self._a + (s if self._b >= 0 else -s - 1)
            t = num // self._d
        while (self - (t + 1)).sign() >= 0:
            t += 1
        while (self - t).sign() < 0:
            t -= 1
        return t


def _golden_from_triple(a: int, b: int, d: int) -> GoldenNumber:
    return GoldenNumber._raw(a, b, d)


PHI = GoldenNumber(Fraction(1, 2), Fraction(1, 2))
SQRT5 = GoldenNumber(0, 1)


def golden_sign(x: GoldenNumber) -> int:
    """Exact sign of p + q*sqrt5: -1, 0 or +1."""
    return x.sign()


def golden_frac(m: int) -> GoldenNumber:
    """Fractional part {m*phi} as an exact element of Q(sqrt5).

    Works for negative m as well, where {(-m)*phi} = 1 - {m*phi}.
    """
    x = GoldenNumber._raw(m, m, 2)  # m*phi = (m + m*sqrt5)/2
    return x - x.floor()


FIXED_BITS = 80
FIXED_ONE = 1 << FIXED_BITS
# Error bounds above 2^20 units would violate the 2^-60 absolute guarantee.
_MAX_ERR = 1 << (FIXED_BITS - 60)


class FixedReal:
    """Fixed-point real with a tracked absolute error bound.

    The represented value is ``mant * 2**-80`` and the true quantity is
    guaranteed to lie within ``err * 2**-80`` of it.  Integer mantissas make
    addition, subtraction and comparison exact; only the inherited input
    error propagates.  Comparisons order by mantissa, so callers that need
    certainty must check :meth:`separated_from` first.
    """

    __slots__ = ("mant", "err")

    def __init__(self, mant: int, err: int = 1):
        if err < 0 or err > _MAX_ERR:
            raise ValueError(f"error bound {err} ulps exceeds 2^-60 budget")
        self.mant = mant
        self.err = err

    def __repr__(self) -> str:
        return f"FixedReal({self.mant}, err={self.err})"

    def __reduce__(self):
        return (FixedReal, (self.mant, self.err))

    def __float__(self) -> float:
        return self.mant / FIXED_ONE

    def __add__(self, other):
        if isinstance(other, FixedReal):
            return FixedReal(self.mant + other.mant, self.err + other.err)
        if isinstance(other, int):
            return FixedReal(self.mant + (other << FIXED_BITS), self.err)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, FixedReal):
            return FixedReal(self.mant - other.mant, self.err + other.err)
        if isinstance(other, int):
            return FixedReal(self.mant - (other << FIXED_BITS), self.err)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return FixedReal(self.mant * other, self.err * abs(other))
        return NotImplemented

    __rmul__ = __mul__

    def separated_from(self, other: "FixedReal") -> bool:
        return abs(self.mant - other.mant) > self.err + other.err

    def __eq__(self, other):
        if isinstance(other, FixedReal):
            return self.mant == other.mant
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, FixedReal):
            return self.mant < other.mant
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, FixedReal):
            return self.mant <= other.mant
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, FixedReal):
            return self.mant > other.mant
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, FixedReal):
            return self.mant >= other.mant
        return NotImplemented

    def __hash__(self):
        return hash(("FixedReal", self.mant))


CircleValue = Union[Fraction, GoldenNumber, FixedReal]
