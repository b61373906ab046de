import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dodecakit.ival import (
    Box,
    DomainViolation,
    Interval,
    RoundingOverflow,
    constant,
    format_interval,
    parse_interval,
)
from dodecakit.ival import constants as K
from dodecakit.ival.atan import PI_HI, PI_LO, _atan_fraction_bounds

mpmath.mp.prec = 200


def ulp(x):
    return math.ulp(x)


def mp_contains(iv, value):
    return mpmath.mpf(iv.lo) <= value <= mpmath.mpf(iv.hi)


def test_add_exact_integers():
    assert Interval(1.0, 2.0) + Interval(3.0, 4.0) == Interval(4.0, 6.0)


def test_mul_sign_cases():
    assert Interval(-1.0, 2.0) * Interval(3.0, 4.0) == Interval(-4.0, 8.0)
    assert Interval(-2.0, -1.0) * Interval(-3.0, 5.0) == Interval(-10.0, 6.0)


def test_div_one_third_is_tight():
    x = Interval(1.0) / Interval(3.0)
    assert Fraction(x.lo) < Fraction(1, 3) < Fraction(x.hi)
    assert x.hi - x.lo <= 2 * ulp(1 / 3)


def test_div_by_zero_interval():
    with pytest.raises(DomainViolation):
        Interval(1.0) / Interval(-1.0, 1.0)


def test_overflow_is_an_error():
    with pytest.raises(RoundingOverflow):
        Interval(1e308) * Interval(1e308)
    with pytest.raises(RoundingOverflow):
        Interval(0.0, math.inf)


def test_sqrt_exact_squares():
    assert Interval(4.0, 9.0).sqrt() == Interval(2.0, 3.0)
    with pytest.raises(DomainViolation):
        Interval(-1.0, 4.0).sqrt()


def test_sqrt2_encloses():
    r = Interval(2.0).sqrt()
    assert Fraction(r.lo) ** 2 < 2 < Fraction(r.hi) ** 2
    assert r.hi - r.lo <= ulp(1.4)


def test_atan_zero_and_one():
    z = Interval(0.0).atan()
    assert z.lo <= 0.0 <= z.hi and z.hi - z.lo <= ulp(0.0) * 2
    a = Interval(1.0).atan()
    assert mp_contains(a, mpmath.pi / 4)
    assert a.hi - a.lo <= 4 * ulp(0.785)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@settings(max_examples=300, deadline=None)
def test_atan_contains_extended_precision(x):
    e = Interval(x).atan()
    assert mp_contains(e, mpmath.atan(mpmath.mpf(x)))
    assert e.hi - e.lo <= 8 * ulp(max(abs(e.lo), abs(e.hi), 1e-300))


def test_pi_literal_checked_by_machin():
    # pi = 16 atan(1/5) - 4 atan(1/239), with exact rational bounds
    a_lo, a_hi = _atan_fraction_bounds(Fraction(1, 5))
    b_lo, b_hi = _atan_fraction_bounds(Fraction(1, 239))
    lo = 16 * a_lo - 4 * b_hi
    hi = 16 * a_hi - 4 * b_lo
    assert Fraction(PI_LO) < lo and hi < Fraction(PI_HI)
    assert PI_HI == math.nextafter(PI_LO, math.inf)


def test_constants_contain_paper_values():
    assert round(constant("t_dod").mid, 3) == 1.258
    assert constant("M_dod") == Interval.from_decimal("0.42755")
    assert Fraction(constant("M_dod").lo) <= Fraction("0.42755") <= Fraction(constant("M_dod").hi)
    diff = constant("M_0") - constant("M_dod")
    # agrees with 1.86e-7 to the three quoted significant figures
    assert Interval(1.855e-7, 1.865e-7).contains(diff)
    assert round(constant("delta_tet").mid, 4) == 0.7796


def test_constant_widths():
    for name in ("pi", "sqrt8", "t_dod", "t_0", "M_dod", "M_0", "delta_tet"):
        assert constant(name).width <= 1e-12, name
    for name in ("mu_dod", "omega_dod"):
        assert constant(name).width <= 1e-5, name


def test_unknown_constant():
    with pytest.raises(KeyError):
        constant("tau")


def test_m0_identity():
    e = 3 * K.delta_tet() * K.m0() - 1
    assert e.contains(0.0)


def test_constants_match_extended_precision():
    t = mpmath.sqrt(3) * mpmath.tan(mpmath.pi / 5)
    assert mp_contains(K.t_dod(), t)
    dt = mpmath.sqrt(8) * mpmath.atan(mpmath.sqrt(2) / 5)
    assert mp_contains(K.delta_tet(), dt)
    omega = 10 * (t * t - 1) * mpmath.sin(2 * mpmath.pi / 5)
    assert mp_contains(K.omega_dod(), omega)
    assert mp_contains(K.mu_dod(), omega - 4 * mpmath.pi * mpmath.mpf("0.42755"))


def _rand_interval(rng, scale=100.0):
    a = rng.uniform(-scale, scale)
    b = a + rng.uniform(0, scale) * rng.choice([0.0, 1e-9, 1.0])
    return Interval(a, b)


def _sample(rng, iv):
    return Fraction(rng.uniform(iv.lo, iv.hi)) if iv.lo < iv.hi else Fraction(iv.lo)


def test_containment_random_samples():
    rng = random.Random(20240601)
    ops = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
    }
    checked = 0
    while checked < 100_000:
        a = _rand_interval(rng)
        b = _rand_interval(rng)
        for name, op in ops.items():
            if name == "div" and b.contains(0.0):
                continue
            r = op(a, b)
            x = _sample(rng, a)
            y = _sample(rng, b)
            v = op(x, y)
            assert Fraction(r.lo) <= v <= Fraction(r.hi), (name, a, b, x, y)
            checked += 1


@given(
    st.floats(-50, 50), st.floats(0, 10), st.floats(0, 5), st.floats(0, 5),
    st.floats(-50, 50), st.floats(0, 10),
)
@settings(max_examples=300, deadline=None)
def test_inclusion_monotone(a, w, ea, eb, c, v):
    inner_a = Interval(a, a + w)
    outer_a = Interval(a - ea, a + w + eb)
    b = Interval(c, c + v)
    for op in (lambda x, y: x + y, lambda x, y: x - y, lambda x, y: x * y):
        assert op(outer_a, b).contains(op(inner_a, b))
    if b.lo > 1e-6:
        assert (outer_a / b).contains(inner_a / b)
    if inner_a.lo >= 0:
        assert Interval(max(outer_a.lo, 0.0), outer_a.hi).sqrt().contains(inner_a.sqrt())


@given(st.floats(-1e3, 1e3), st.floats(1e-9, 10), st.floats(1e-9, 10))
@settings(max_examples=300, deadline=None)
def test_atan_inclusion_monotone(a, ea, eb):
    inner = Interval(a, a + eb)
    outer = Interval(a - ea, a + eb + ea)
    assert outer.atan().contains(inner.atan())


@given(st.floats(0.5, 3.0), st.floats(1e-3, 1.0), st.integers(1, 6))
@settings(max_examples=100, deadline=None)
def test_subdivision_never_widens(lo, w, depth):
    def f(x):
        return x * x - 2 * x + x.sqrt()

    whole = Box((Interval(lo, lo + w),))
    ref = f(whole[0])
    pieces = [whole]
    for _ in range(depth):
        pieces = [c for p in pieces for c in p.split()]
    hull = pieces[0][0]
    encl = f(pieces[0][0])
    for p in pieces[1:]:
        encl = encl.hull(f(p[0]))
        hull = hull.hull(p[0])
    assert hull == whole[0]
    assert ref.contains(encl)


@given(st.floats(-1e300, 1e300), st.floats(0, 1e300))
@settings(max_examples=200, deadline=None)
def test_text_round_trip(a, w):
    b = a + w
    if not math.isfinite(b):
        return
    x = Interval(a, b)
    assert parse_interval(format_interval(x)).contains(x)


def test_parse_decimal_outward():
    x = parse_interval("[0.1, 0.1]")
    assert Fraction(x.lo) <= Fraction("0.1") <= Fraction(x.hi)
    assert x.lo < x.hi
    with pytest.raises(ValueError):
        parse_interval("(0, 1)")


def test_invalid_interval():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)


def test_box_split_and_text():
    b = Box.from_bounds([(0, 1), (2, 6)])
    left, right = b.split()
    assert left[1] == Interval(2.0, 4.0) and right[1] == Interval(4.0, 6.0)
    assert Box.from_text(b.to_text()) == b
    assert left.volume_exact() + right.volume_exact() == b.volume_exact()
