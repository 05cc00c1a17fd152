import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotvol.qnum import DomainError, RootOfUnityCtx
from knotvol.specfun import (faddeev_phi, li2, li2_array, li2_branched,
                             lobachevsky)

PI = math.pi


def test_li2_special_values():
    assert li2(0) == 0
    assert abs(li2(1) - PI ** 2 / 6) < 1e-15
    assert abs(li2(-1) + PI ** 2 / 12) < 1e-15


def test_li2_against_mpmath_grid():
    rng = np.random.default_rng(11)
    zs = rng.uniform(-4, 4, 300) + 1j * rng.uniform(-4, 4, 300)
    for z in zs:
        want = complex(mpmath.polylog(2, complex(z)))
        got = li2(complex(z))
        assert abs(got - want) <= 1e-13 * max(1.0, abs(want))


def test_li2_reflection_identity():
    rng = np.random.default_rng(5)
    count = 0
    while count < 100:
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(z) >= 1 or abs(z) < 1e-3 or abs(1 - z) < 1e-3:
            continue
        count += 1
        lhs = li2(z) + li2(1 - z)
        rhs = PI ** 2 / 6 - cmath.log(z) * cmath.log(1 - z)
        assert abs(lhs - rhs) < 1e-12


def test_li2_inversion_identity():
    rng = np.random.default_rng(6)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
        lhs = li2(z) + li2(1 / z)
        rhs = -PI ** 2 / 6 - 0.5 * cmath.log(-z) ** 2
        assert abs(lhs - rhs) < 1e-12


def test_li2_derivative():
    h = 1e-6
    for z in (0.3 + 0.2j, -1.5 + 0.7j, 2.0 + 2.0j):
        fd = (li2(z + h) - li2(z - h)) / (2 * h)
        exact = -cmath.log(1 - z) / z
        assert abs(fd - exact) < 1e-8


def test_li2_cut_sides():
    x = 2.5
    with pytest.raises(DomainError):
        li2(x)
    above = li2(x, cut_side=+1)
    below = li2(x, cut_side=-1)
    assert abs(above - complex(mpmath.polylog(2, x + 1e-14j))) < 1e-12
    assert abs(below - complex(mpmath.polylog(2, x - 1e-14j))) < 1e-12
    # jump across the cut is 2 pi i log x
    assert abs((above - below) - 2j * PI * math.log(x)) < 1e-12


def test_li2_branched_continuity():
    # crossing the cut from below onto the next sheet stays continuous
    x = 1.8
    eps = 1e-6
    below = li2(complex(x, -eps))
    continued = li2_branched(complex(x, +eps), branch=-1).value
    assert abs(below - continued) < 1e-4


def test_li2_array_matches_scalar():
    zs = np.array([0.1 + 0.2j, -2.0 + 1.0j, 3.0 + 0.5j, 0.9 + 0.01j])
    arr = li2_array(zs)
    for z, v in zip(zs, arr):
        assert abs(v - li2(complex(z))) < 1e-14


def test_lobachevsky_values():
    assert lobachevsky(0.0) == 0.0
    assert abs(lobachevsky(PI / 2)) < 1e-15
    assert abs(16 * lobachevsky(PI / 4) - 7.327724753417752) < 1e-12


def test_lobachevsky_against_fourier_series():
    # independent oracle: partial Fourier sum with integral tail bound
    theta = 0.6180339887
    M = 200000
    n = np.arange(1, M + 1)
    partial = 0.5 * np.sum(np.sin(2 * n * theta) / n ** 2)
    assert abs(lobachevsky(theta) - partial) < 1.0 / M + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-6, 6, allow_nan=False))
def test_lobachevsky_symmetries(theta):
    lam = lobachevsky(theta)
    assert abs(lobachevsky(theta + PI) - lam) < 1e-12
    assert abs(lobachevsky(-theta) + lam) < 1e-12


def test_faddeev_shift_identity():
    ctx = RootOfUnityCtx(11)
    a = 0.3
    lhs = faddeev_phi(ctx, a + 1 / (2 * ctx.N)) - faddeev_phi(ctx, a - 1 / (2 * ctx.N))
    rhs = -cmath.log(1 - cmath.exp(2j * PI * a))
    assert abs(lhs - rhs) < 1e-8


def test_faddeev_li2_limit_decreases():
    t = 0.37 + 0.1j
    diffs = []
    for N in (51, 101, 201):
        ctx = RootOfUnityCtx(N)
        diffs.append(abs(faddeev_phi(ctx, t)
                         - N / (2j * PI) * li2(cmath.exp(2j * PI * t))))
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] < 51 / 201 * diffs[0] * 1.5  # roughly O(1/N)


def test_faddeev_small_argument():
    ctx = RootOfUnityCtx(101)
    v = faddeev_phi(ctx, 1 / (2 * ctx.N))
    target = ctx.N / (2j * PI) * (PI ** 2 / 6)
    assert abs(v - target) < 3 * math.log(ctx.N)


def test_faddeev_strip_check():
    ctx = RootOfUnityCtx(11)
    with pytest.raises(DomainError):
        faddeev_phi(ctx, 1.5)
