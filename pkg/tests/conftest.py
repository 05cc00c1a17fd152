"""Shared fixtures and independent oracle evaluators.

The naive evaluators below use plain complex arithmetic and the printed
summation structure directly, with no shared code paths with the library
engines (no LogComplex, no prefix tables, derivatives by finite
differences).  They are the ground truth for small N.
"""

import cmath
import math

import pytest

from knotvol.qnum import RootOfUnityCtx


@pytest.fixture(scope="session")
def ctx5():
    return RootOfUnityCtx(5)


def qp_naive(N: int, a: complex, n: int) -> complex:
    """Falling product of quantum integers, plain arithmetic."""
    out = 1 + 0j
    for j in range(n):
        out *= 2j * cmath.sin(math.pi * (a - j) / N)
    return out


def fact_naive(N: int, n: int) -> complex:
    return qp_naive(N, n, n)


def xi_naive(N: int, k: int, l: int, s: int) -> complex:
    return fact_naive(N, s) ** 2 / (
        fact_naive(N, s - k) ** 2 * fact_naive(N, s - l) ** 2
        * fact_naive(N, k + l - s) ** 2)


def naive_borromean(N: int, k_phase: bool = False, l_phase: bool = False,
                    pref_halves: int = 0) -> complex:
    """Direct triple sum for the Borromean family."""
    q = cmath.exp(1j * math.pi / N)
    h = (N - 1) / 2
    tot = 0j
    for k in range(N):
        for l in range(N):
            for s in range(max(k, l), min(k + l, N - 1) + 1):
                t = xi_naive(N, k, l, s)
                if k_phase:
                    t *= q ** ((k - h) ** 2)
                if l_phase:
                    t *= q ** ((l - h) ** 2)
                tot += t
    return N ** 2 * q ** (-pref_halves * (N - 1) ** 2 / 4) * tot


def naive_zeta_w(N: int, x: complex, k: int, l: int, s_int: int) -> complex:
    """The reparametrised Whitehead kernel at complex x (plain products)."""
    s = s_int + (x - k) / 2
    num = qp_naive(N, s, s_int) ** 2
    den = (qp_naive(N, s - x, s_int - k) ** 2
           * qp_naive(N, s - l, s_int - l) ** 2
           * qp_naive(N, x + l - s, k + l - s_int) ** 2)
    return num / den


def naive_whitehead(N: int, p: int, fd_step: float = 1e-4) -> complex:
    """eq-style evaluation with 4th-order finite differences in x."""
    q = cmath.exp(1j * math.pi / N)
    h = (N - 1) / 2

    def term(x, k, l, s_int):
        return (q ** (p * (x - h) ** 2)
                * 2j * cmath.sin(math.pi * (2 * x + 1) / N)
                * naive_zeta_w(N, x, k, l, s_int))

    tot = 0j
    d = fd_step
    for k in range(N):
        for l in range(N):
            for s_int in range(max(k, l), min(k + l, N - 1) + 1):
                f = lambda x: term(x, k, l, s_int)
                deriv = (-f(k + 2 * d) + 8 * f(k + d) - 8 * f(k - d)
                         + f(k - 2 * d)) / (12 * d)
                tot += deriv
    return N * q ** (p * (N - 1) ** 2 / 4) / (4j * math.pi) * tot


def naive_double(N: int, p: int, r: int, fd_step: float = 1e-4) -> complex:
    """eq-style evaluation with nested central differences in (x, y)."""
    q = cmath.exp(1j * math.pi / N)
    h = (N - 1) / 2

    def kernel(x, y, k, l, s_int):
        s = s_int + (x - k) / 2 + (y - l) / 2
        num = qp_naive(N, s, s_int) ** 2
        den = (qp_naive(N, s - x, s_int - k) ** 2
               * qp_naive(N, s - y, s_int - l) ** 2
               * qp_naive(N, x + y - s, k + l - s_int) ** 2)
        return num / den

    def term(x, y, k, l, s_int):
        return (q ** (p * (x - h) ** 2 - r * (y - h) ** 2)
                * 2j * cmath.sin(math.pi * (2 * x + 1) / N)
                * 2j * cmath.sin(math.pi * (2 * y + 1) / N)
                * kernel(x, y, k, l, s_int))

    # true mixed derivative of the pre-squared product: the squared kernel
    # rewrite is only a first-order identity, so differentiate the product
    # of the factorial part and the fully shifted part instead
    def term_f(x, y, k, l, s_int):
        e, dlt = x - k, y - l
        s = s_int
        base = (fact_naive(N, s) / (fact_naive(N, s - k) * fact_naive(N, s - l)
                                    * fact_naive(N, k + l - s)))
        shift = (qp_naive(N, s + e + dlt, s)
                 / qp_naive(N, s - k - e + dlt, s - k)
                 / qp_naive(N, s - l + e - dlt, s - l)
                 / qp_naive(N, k + l - s + e + dlt, k + l - s))
        return (q ** (p * (x - h) ** 2 - r * (y - h) ** 2)
                * 2j * cmath.sin(math.pi * (2 * x + 1) / N)
                * 2j * cmath.sin(math.pi * (2 * y + 1) / N) * base * shift)

    tot = 0j
    d = fd_step
    for k in range(N):
        for l in range(N):
            for s_int in range(max(k, l), min(k + l, N - 1) + 1):
                f = lambda x, y: term_f(x, y, k, l, s_int)
                mixed = (f(k + d, l + d) - f(k + d, l - d)
                         - f(k - d, l + d) + f(k - d, l - d)) / (4 * d * d)
                tot += mixed
    return -N ** 2 * q ** ((p - r) * (N - 1) ** 2 / 4) / (16 * math.pi ** 2) * tot
