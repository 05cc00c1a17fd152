"""Complex volumes from saddle values and growth-rate convergence studies.

The saddle-potential route evaluates the closed combination of the
potential at the saddle; the surgery route rebuilds the same number
through the Neumann-Zagier function of the deformed Borromean complement.
Convergence studies tie the state-sum growth rates back to these targets.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from . import __version__
from .jones import JonesValue, KnotSpec, Family, jones_value, required_digits
from .potential import (FOUR_PI2, SaddleSolution, grad_psi_w, phi_wp,
                        psi_w, saddle_double, saddle_whitehead)
from .qnum import DomainError, RootOfUnityCtx

PI = math.pi
PI2 = PI * PI
TWO_PI_I = 2j * PI


@dataclass(frozen=True)
class ComplexVolume:
    """Hyperbolic volume and Chern-Simons value (normalised to [0, pi^2))."""

    vol: float
    cs: float
    raw: complex
    path: str

    @staticmethod
    def from_raw(raw: complex, path: str) -> "ComplexVolume":
        return ComplexVolume(raw.real, raw.imag % PI2, raw, path)


@dataclass(frozen=True)
class SurgeryCurveData:
    """Log-holonomies of the surgery curve: meridian m, longitude l with
    Im l in [0, 2 pi), and the core geodesic gamma."""

    m: complex
    l: complex
    gamma: complex


def _volume_combination_whitehead(sol: SaddleSolution, p: int) -> complex:
    phi = phi_wp(p, sol.alpha0)
    return phi - TWO_PI_I * (TWO_PI_I * (sol.alpha0 - 0.5))


def complex_volume_whitehead(p: int) -> ComplexVolume:
    """Complex volume of the twisted Whitehead link from its saddle."""
    sol = saddle_whitehead(p)
    combo = _volume_combination_whitehead(sol, p)
    return ComplexVolume.from_raw(combo / 1j, "saddle_potential")


def complex_volume_double(p: int, r: int) -> ComplexVolume:
    """Complex volume of the double twist knot from its saddle."""
    sol = saddle_double(p, r)
    phi = sol.value - FOUR_PI2 * (sol.alpha0 + sol.beta0)
    combo = phi - TWO_PI_I * (TWO_PI_I * (sol.alpha0 - 0.5)
                              + TWO_PI_I * (sol.beta0 - 0.5))
    return ComplexVolume.from_raw(combo / 1j, "saddle_potential")


def surgery_data(p: int, alpha: complex) -> SurgeryCurveData:
    """Meridian/longitude log-holonomies of the twist-region surgery curve
    along the Whitehead deformation path."""
    a = complex(alpha)
    # -(sqrt(u)-1)^2/(sqrt(u)+1)^2 = cot^2(pi a / 2) on the branch that is
    # continuous through m = 0 at a = 1/2
    m = -2 * cmath.log(cmath.tan(PI * a / 2))
    l = 4j * PI * a - TWO_PI_I
    gamma = l  # core geodesic of the (1, p/2) filling
    return SurgeryCurveData(m, l, gamma)


def nz_h(p: int, alpha: complex) -> complex:
    """h(m) = Phi_W - (1/4) m l along the deformation path."""
    sd = surgery_data(p, alpha)
    return phi_wp(p, alpha) + 2 * PI ** 2 * p * (complex(alpha) - 0.5) ** 2 \
        - 0.25 * sd.m * sd.l


def nz_consistency(p: int, alphas=None) -> dict:
    """Residual report for the surgery-function identities.

    Checks dH/dm = -l/2 by finite differences along the deformation path
    (H = Psi_W - (1/2) m l), the anchor h(0) = i Vol(Borromean rings), and
    the reassembled complex volume against the saddle-route value.
    """
    sol = saddle_whitehead(p)
    a0 = sol.alpha0
    if alphas is None:
        alphas = [a0 + 0.02 * cmath.exp(2j * PI * k / 20) for k in range(20)]

    def m_of(a):
        return surgery_data(p, a).m

    def l_of(a):
        return surgery_data(p, a).l

    def H_of(a):
        return psi_w(a) - 0.5 * m_of(a) * l_of(a)

    max_resid = 0.0
    h = 1e-6
    for a in alphas:
        dH = (H_of(a + h) - H_of(a - h)) / (2 * h)
        dm = (m_of(a + h) - m_of(a - h)) / (2 * h)
        resid = abs(dH / dm + 0.5 * l_of(a))
        max_resid = max(max_resid, resid)

    # anchor: at m = 0 (alpha = 1/2) h equals i Vol(S^3 minus B)
    anchor = nz_h(p, 0.5)

    # reassembly: Vol + i CS = (1/i)(h(m) - (pi i / 2) l) at the saddle
    sd = surgery_data(p, a0)
    reassembled = (nz_h(p, a0) - 0.5j * PI * sd.l) / 1j
    combo = _volume_combination_whitehead(sol, p) / 1j
    return {
        "max_dhdm_residual": max_resid,
        "anchor_h0": anchor,
        "surgery_constraint": sd.m + (p / 2) * sd.l,
        "reassembled": reassembled,
        "saddle_value": combo,
        "reassembly_residual": abs(reassembled - combo),
    }


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    growth: complex
    target: complex
    abs_err: float


class JonesCache:
    """Append-only JSON-lines cache keyed by (knot, N, code version)."""

    def __init__(self, path: str | None):
        self.path = path
        self._mem = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        continue
                    key = (rec["knot"], rec["N"], rec["version"])
                    self._mem[key] = rec

    def get(self, knot: KnotSpec, N: int):
        rec = self._mem.get((knot.label(), N, __version__))
        if rec is None:
            return None
        return rec["logmag"], rec["phase"], rec["unreduced_phase"]

    def put(self, knot: KnotSpec, N: int, jv: JonesValue):
        rec = {"knot": knot.label(), "N": N, "version": __version__,
               "logmag": jv.value.logmag, "phase": jv.value.phase,
               "unreduced_phase": jv.unreduced_phase}
        self._mem[(knot.label(), N, __version__)] = rec
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec) + "\n")


def volume_target(knot: KnotSpec) -> ComplexVolume:
    """Complex-volume target for a verification run.

    Borromean-family targets are the octahedral closed forms; W and D
    targets come from the saddle route.  Non-hyperbolic double twist
    parameters are rejected.
    """
    from .specfun import lobachevsky

    v_b = 16 * lobachevsky(PI / 4)
    if knot.family is Family.BORROMEAN:
        return ComplexVolume(v_b, 0.0, complex(v_b, 0.0), "closed_form")
    if knot.family is Family.B1:
        return ComplexVolume(v_b, PI2 / 2, complex(v_b, PI2 / 2), "closed_form")
    if knot.family is Family.B11:
        return ComplexVolume(v_b, 0.0, complex(v_b, 0.0), "closed_form")
    if knot.family is Family.WHITEHEAD:
        return complex_volume_whitehead(knot.p)
    if knot.family is Family.DOUBLE_TWIST:
        if not is_hyperbolic_double(knot.p, knot.r):
            raise DomainError(
                f"D(p={knot.p}, r={knot.r}) is not hyperbolic; "
                "verification handles hyperbolic knots only")
        return complex_volume_double(knot.p, knot.r)
    raise DomainError(f"no target for {knot!r}")  # pragma: no cover


def is_hyperbolic_double(p: int, r: int) -> bool:
    """Double twist knots are hyperbolic unless a region is trivial or the
    pair gives a torus knot ((p, r) in {(+-1, +-1)} family)."""
    if p == 0 or r == 0:
        return False
    if abs(p) == 1 and abs(r) == 1:
        return False
    return True


def convergence_study(knot: KnotSpec, Ns, threads: int = 1,
                      cache: JonesCache | None = None,
                      precision: str | int | None = "auto") -> list[ConvergenceRow]:
    """Growth rates (2 pi / N) log J_{N-1} against the complex volume.

    Phases are unwrapped across consecutive N by nearest-branch
    continuation (first N anchored to the analytically tracked prefactor
    phase).  ``precision='auto'`` escalates to the high-accuracy summation
    path when the structural cancellation exceeds doubles.
    """
    Ns = sorted(int(N) for N in Ns)
    if any(N % 2 == 0 or N < 3 for N in Ns):
        raise DomainError("convergence Ns must be odd integers >= 3")
    target = volume_target(knot)
    tgt = complex(target.vol, target.cs)
    cache = cache or JonesCache(None)
    rows = []
    prev_growth_im = None
    for N in Ns:
        ctx = RootOfUnityCtx(N)
        cached = cache.get(knot, N)
        if cached is not None:
            logmag, _, unreduced = cached
        else:
            prec = None
            if precision == "auto":
                if knot.family in (Family.WHITEHEAD, Family.DOUBLE_TWIST):
                    prec = required_digits(ctx, N * target.vol / (2 * PI))
            elif precision is not None:
                prec = int(precision)
            jv = jones_value(ctx, knot, threads=threads, precision=prec)
            cache.put(knot, N, jv)
            logmag, unreduced = jv.value.logmag, jv.unreduced_phase
        g_re = 2 * PI * logmag / N
        g_im = 2 * PI * unreduced / N
        if prev_growth_im is not None:
            # nearest-branch continuation: adding 2 pi k to the phase moves
            # the growth by 4 pi^2 k / N
            step = 2 * PI * (2 * PI) / N
            k = round((prev_growth_im - g_im) / step)
            g_im += k * step
        prev_growth_im = g_im
        growth = complex(g_re, g_im)
        rows.append(ConvergenceRow(N, growth, tgt, abs(g_re - target.vol)))
    return rows


def log_corrected_extrapolation(rows: list[ConvergenceRow]) -> float:
    """Least-squares fit growth(N) = v + a log(N)/N + b/N; returns v."""
    if len(rows) < 3:
        raise DomainError("extrapolation needs at least 3 ladder points")
    A = np.array([[1.0, math.log(r.N) / r.N, 1.0 / r.N] for r in rows])
    y = np.array([r.growth.real for r in rows])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(coef[0])


def write_convergence_csv(rows: list[ConvergenceRow], path: str):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["N", "re_growth", "im_growth", "re_target", "im_target",
                    "abs_err"])
        for r in rows:
            w.writerow([r.N, repr(r.growth.real), repr(r.growth.imag),
                        repr(r.target.real), repr(r.target.imag),
                        repr(r.abs_err)])
