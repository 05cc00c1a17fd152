"""Classical and quantum special functions.

Complex dilogarithm Li2 on its principal sheet (cut along [1, oo)), the
Lobachevsky function, and the quantum dilogarithm phi_N defined by a
contour integral that detours above the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .qnum import DomainError

PI = math.pi
PI2_6 = PI * PI / 6.0


class NumericError(RuntimeError):
    """A numerical procedure failed to converge to its tolerance."""


# Bernoulli numbers B_0 .. B_40 (odd ones beyond B_1 vanish).
_BERNOULLI = [
    1.0, -0.5, 1.0 / 6, 0.0, -1.0 / 30, 0.0, 1.0 / 42, 0.0, -1.0 / 30, 0.0,
    5.0 / 66, 0.0, -691.0 / 2730, 0.0, 7.0 / 6, 0.0, -3617.0 / 510, 0.0,
    43867.0 / 798, 0.0, -174611.0 / 330, 0.0, 854513.0 / 138, 0.0,
    -236364091.0 / 2730, 0.0, 8553103.0 / 6, 0.0, -23749461029.0 / 870, 0.0,
    8615841276005.0 / 14322, 0.0, -7709321041217.0 / 510, 0.0,
    2577687858367.0 / 6, 0.0, -26315271553053477373.0 / 1919190, 0.0,
    2929993913841559.0 / 6, 0.0, -261082718496449122051.0 / 13530,
]


def _li2_series(z: np.ndarray) -> np.ndarray:
    # power series sum z^n / n^2, safe for |z| <= 0.55
    out = np.zeros_like(z)
    term = np.array(z)
    for n in range(1, 80):
        out = out + term / (n * n)
        term = term * z
    return out


def _li2_logseries(z: np.ndarray) -> np.ndarray:
    # Debye-type series in u = -log(1-z); converges for |u| < 2 pi and is
    # the workhorse near the unit circle where the power series crawls.
    u = -np.log(1.0 - z)
    out = np.zeros_like(u)
    upow = np.array(u)
    kfac = 1.0
    for k in range(0, len(_BERNOULLI)):
        b = _BERNOULLI[k]
        if b != 0.0:
            out = out + b * upow / (kfac * (k + 1))
        upow = upow * u
        kfac *= (k + 1)
    return out


def _li2_core(z: np.ndarray) -> np.ndarray:
    """Principal Li2 on an array, assuming no entry lies on [1, oo)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)

    big = np.abs(z) > 1.2
    if np.any(big):
        zb = z[big]
        lg = np.log(-zb)
        out[big] = -_li2_core(1.0 / zb) - PI2_6 - 0.5 * lg * lg

    rest = ~big
    if np.any(rest):
        zr = z[rest]
        res = np.empty_like(zr)
        small = np.abs(zr) <= 0.55
        nearone = (~small) & (np.abs(1.0 - zr) <= 0.4)
        other = (~small) & (~nearone)
        if np.any(small):
            res[small] = _li2_series(zr[small])
        if np.any(nearone):
            w = 1.0 - zr[nearone]
            res[nearone] = PI2_6 - np.log(zr[nearone]) * np.log(w) - _li2_series(w)
        if np.any(other):
            res[other] = _li2_logseries(zr[other])
        out[rest] = res
    return out


def li2_array(z: np.ndarray, cut_nudge: float = 0.0) -> np.ndarray:
    """Vectorised principal dilogarithm.

    Entries exactly on the cut [1, oo) are evaluated on the side indicated
    by ``cut_nudge`` (+1 above, -1 below); with nudge 0 they come out on
    the upper side, which callers that care must not rely on.
    """
    z = np.asarray(z, dtype=complex)
    if cut_nudge:
        oncut = (z.imag == 0.0) & (z.real > 1.0)
        if np.any(oncut):
            z = z.copy()
            z[oncut] += 1j * cut_nudge * 1e-300
    return _li2_core(z)


def li2(z: complex, cut_side: int | None = None) -> complex:
    """Principal-branch dilogarithm Li2(z), cut along [1, oo).

    For real z > 1 the value is two-sided; pass ``cut_side=+1`` (limit from
    above) or ``-1`` (from below), otherwise a DomainError is raised.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real > 1.0:
        if cut_side is None:
            raise DomainError(
                "Li2 evaluated on the cut [1, oo); pass cut_side=+1 or -1")
        x = z.real
        re = complex(_li2_core(np.array([complex(x)]))[0]).real
        return complex(re, cut_side * PI * math.log(x))
    if z == 1.0:
        return complex(PI2_6, 0.0)
    return complex(_li2_core(np.array([z]))[0])


@dataclass(frozen=True)
class BranchedValue:
    """A dilogarithm-type value together with its sheet index.

    Sheet n of Li2 differs from the principal sheet by n * 2*pi*i * log(z),
    the monodromy picked up winding around z = 1.
    """

    value: complex
    branch_index: int = 0


def li2_branched(z: complex, branch: int = 0, cut_side: int | None = None) -> BranchedValue:
    base = li2(z, cut_side=cut_side)
    if branch:
        base = base + branch * 2j * PI * cmath.log(z)
    return BranchedValue(base, branch)


def lobachevsky(theta: float) -> float:
    """Lobachevsky function: -int_0^theta log|2 sin t| dt.

    Equals one half of the Fourier series sum_{n>=1} sin(2 n theta)/n^2,
    summed here through its dilogarithm closed form (pi-periodic, odd).
    """
    theta = float(theta)
    t = math.fmod(theta, PI)
    if t < 0.0:
        t += PI
    if t == 0.0:
        return 0.0
    z = cmath.exp(2j * t)
    if z == 1.0:
        return 0.0
    return 0.5 * complex(_li2_core(np.array([z]))[0]).imag


def _complex_quad(f, a, b, **kw):
    re, re_err = quad(lambda t: f(t).real, a, b, **kw)
    im, im_err = quad(lambda t: f(t).imag, a, b, **kw)
    return complex(re, im), max(re_err, im_err)


def faddeev_phi(ctx, x: complex) -> complex:
    """Quantum dilogarithm phi_N(x) for x in the strip 0 < Re x < 1.

    Integral of exp((2x-1)t) / (4 t sinh t sinh(t/N)) along the real line,
    with a radius-1 semicircular detour above the triple pole at t = 0.
    Validated through the shift identity
    phi_N(a + 1/2N) - phi_N(a - 1/2N) = -log(1 - exp(2 pi i a)).
    """
    x = complex(x)
    if not (0.0 < x.real < 1.0):
        raise DomainError(f"faddeev_phi needs 0 < Re x < 1, got {x}")
    N = ctx.N

    def log_sinh(t: float) -> float:
        # log sinh t for t > 0 without overflow
        return t + math.log1p(-math.exp(-2 * t)) - math.log(2)

    def tail(s: float, sign: int) -> complex:
        # integrand at t = sign * s for s >= 1, in log form
        expo = (2 * x - 1) * (sign * s) - log_sinh(s) - log_sinh(s / N)
        val = cmath.exp(expo) / (4 * s)
        return val if sign > 0 else -val

    right, err_r = _complex_quad(lambda s: tail(s, +1), 1.0, np.inf, limit=400)
    left, err_l = _complex_quad(lambda s: tail(s, -1), 1.0, np.inf, limit=400)

    # semicircle t = e^{i th}, th from pi to 0 (passes above the origin)
    nodes, weights = np.polynomial.legendre.leggauss(240)
    th = 0.5 * (nodes + 1.0) * (-PI) + PI      # maps [-1,1] -> [pi, 0]
    jac = -PI / 2.0
    tvals = np.exp(1j * th)
    fvals = np.exp((2 * x - 1) * tvals) / (4 * tvals * np.sinh(tvals) * np.sinh(tvals / N))
    arc = complex(np.sum(weights * fvals * 1j * tvals) * jac)

    total = left + arc + right
    if max(err_r, err_l) > 1e-7 * (1.0 + abs(total)):
        raise NumericError(
            f"faddeev_phi tail quadrature error {max(err_r, err_l):.2e} at x={x}")
    return total
