import math
import random
from fractions import Fraction

import mpmath
import pytest

from circlegaps.exactnum import (
    PHI,
    SQRT5,
    FixedReal,
    GoldenNumber,
    golden_frac,
    golden_sign,
    rational_compare,
)


def test_rational_compare_examples():
    assert rational_compare(Fraction(1, 2), Fraction(1, 2)) == 0
    assert rational_compare(Fraction(5, 64), Fraction(1, 8)) == -1
    # cross-multiplication oracle: 149*1024 = 152576 < 299*512 = 153088
    assert 149 * 1024 < 299 * 512
    assert rational_compare(Fraction(149, 512), Fraction(299, 1024)) == -1


def test_golden_sign_examples():
    assert golden_sign(GoldenNumber(0, 0)) == 0
    # sqrt5 > 2 because 5 > 4
    assert golden_sign(GoldenNumber(-2, 1)) == 1
    # (9/4)^2 = 81/16 > 5, so the rational part wins
    assert golden_sign(GoldenNumber(Fraction(9, 4), -1)) == 1
    assert golden_sign(GoldenNumber(Fraction(9, 4), -1) - GoldenNumber(0, 0)) == 1
    assert golden_sign(-PHI) == -1


def test_golden_arithmetic_field_identities():
    assert (PHI * PHI - PHI - 1).is_zero()
    assert (SQRT5 * SQRT5) == GoldenNumber(5, 0)
    x = GoldenNumber(Fraction(3, 7), Fraction(-2, 5))
    y = GoldenNumber(Fraction(-1, 3), Fraction(4, 9))
    assert ((x + y) - y) == x
    assert (x * y) / y == x
    assert x + 0 == x and 1 * x == x
    with pytest.raises(ZeroDivisionError):
        x / GoldenNumber(0, 0)


def test_golden_ordering_total():
    vals = [GoldenNumber(Fraction(a, 3), Fraction(b, 2)) for a in range(-4, 5) for b in range(-4, 5)]
    s = sorted(vals)
    for u, v in zip(s, s[1:]):
        assert not v < u
        assert (u < v) == (float(u) < float(v)) or abs(float(u) - float(v)) < 1e-12


def test_golden_frac_examples():
    assert golden_frac(1) == GoldenNumber(Fraction(-1, 2), Fraction(1, 2))
    assert golden_frac(2) == GoldenNumber(-2, 1)
    # {(-m) phi} = 1 - {m phi}
    assert golden_frac(-1) == GoldenNumber(1, 0) - golden_frac(1)
    for m in (2, 3, 17, 500):
        assert golden_frac(-m) == GoldenNumber(1, 0) - golden_frac(m)


def test_golden_frac_in_unit_interval_and_floor_oracle():
    phi = (1 + math.sqrt(5)) / 2
    for m in range(1, 10_001):
        f = golden_frac(m)
        assert f.sign() >= 0
        assert (f - 1).sign() < 0
        # independent float oracle for the floor (valid far beyond this range)
        t = (GoldenNumber._raw(m, m, 2)).floor()
        assert t == math.floor(m * phi)


def test_floor_matches_isqrt_oracle_on_random_values():
    rng = random.Random(7)
    for _ in range(2000):
        p = Fraction(rng.randrange(-10**9, 10**9), rng.randrange(1, 10**6))
        q = Fraction(rng.randrange(-10**9, 10**9), rng.randrange(1, 10**6))
        x = GoldenNumber(p, q)
        t = x.floor()
        a, b, d = x._a, x._b, x._d
        s = math.isqrt(5 * b * b)
        num = a + (s if b >= 0 else -s - 1)
        assert t == num // d
        assert (x - t).sign() >= 0 > (x - (t + 1)).sign()


def test_sign_negation_antisymmetry_random():
    rng = random.Random(11)
    for _ in range(10_000):
        x = GoldenNumber(
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 9)),
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 9)),
        )
        assert golden_sign(x) == -golden_sign(-x)


def test_agreement_with_high_precision_floats():
    rng = random.Random(13)
    with mpmath.workprec(128):
        sqrt5 = mpmath.sqrt(5)
        for _ in range(10_000):
            p = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
            q = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
            x = GoldenNumber(p, q)
            ref = mpmath.mpf(p.numerator) / p.denominator + (
                mpmath.mpf(q.numerator) / q.denominator
            ) * sqrt5
            assert abs(mpmath.mpf(float(x)) - ref) < mpmath.mpf(2) ** -40 * (1 + abs(ref))
            if abs(ref) > mpmath.mpf(2) ** -40:
                assert golden_sign(x) == mpmath.sign(ref)


def test_rational_arithmetic_against_high_precision_floats():
    rng = random.Random(17)
    with mpmath.workprec(128):
        for _ in range(10_000):
            a = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
            b = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**4))
            exact = a * b + a - b
            ref = (
                mpmath.mpf(a.numerator) / a.denominator * b.numerator / b.denominator
                + mpmath.mpf(a.numerator) / a.denominator
                - mpmath.mpf(b.numerator) / b.denominator
            )
            scale = 1 + abs(ref)
            assert abs(mpmath.mpf(exact.numerator) / exact.denominator - ref) < mpmath.mpf(2) ** -40 * scale


def test_fixed_real_arithmetic_and_error_tracking():
    a = FixedReal(3 << 70, 1)
    b = FixedReal(1 << 70, 2)
    assert (a - b).mant == 2 << 70
    assert (a - b).err == 3
    assert (a + 1).mant == (3 << 70) + (1 << 80)
    assert (5 * b).err == 10
    assert b < a and a > b and a != b
    assert not a.separated_from(FixedReal(a.mant + 1, 1))
    assert a.separated_from(b)
    with pytest.raises(ValueError):
        FixedReal(0, 1 << 40)


def test_golden_pickle_roundtrip():
    import pickle

    x = GoldenNumber(Fraction(-7, 3), Fraction(5, 4))
    assert pickle.loads(pickle.dumps(x)) == x
    y = FixedReal(12345, 2)
    assert pickle.loads(pickle.dumps(y)) == y
