"""Closed-form quantum 6j symbols at the 2N-th root of unity.

The general tetrahedral-graph symbol, its specialisation to the
half-colored family that drives the state sums, the perturbed variants
used as epsilon-limit oracles, and the positive kernel xi together with
its holomorphic extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .qnum import (DomainError, LogComplex, RootOfUnityCtx, logc_sum, qbinom,
                   qfact, qpoch)


@dataclass(frozen=True)
class SixJColors:
    """Colors on the six edges of the tetrahedral graph."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    f: complex


def admissible(ctx: RootOfUnityCtx, a: complex, b: complex, c: complex,
               kind: int) -> bool:
    """Admissibility of three colors around a vertex.

    ``kind`` selects the vertex orientation case 1..4:
      1: a+b+c in {-2N+2, ..., -N+1}
      2: a+b-c in {-N+1, ..., 0}
      3: a+b-c in {0, ..., N-1}
      4: a+b+c in {N-1, ..., 2N-2}
    Complex inputs are accepted; the combination must sit within 1e-6 of an
    integer in the stated range.
    """
    N = ctx.N
    if kind in (1, 4):
        val = complex(a) + complex(b) + complex(c)
        lo, hi = (-2 * N + 2, -N + 1) if kind == 1 else (N - 1, 2 * N - 2)
    elif kind in (2, 3):
        val = complex(a) + complex(b) - complex(c)
        lo, hi = (-N + 1, 0) if kind == 2 else (0, N - 1)
    else:
        raise DomainError(f"vertex kind must be 1..4, got {kind!r}")
    m = round(val.real)
    return abs(val - m) <= 1e-6 and lo <= m <= hi


def _near_int(z: complex, tol: float = 1e-6) -> int:
    m = round(complex(z).real)
    if abs(complex(z) - m) > tol:
        raise DomainError(f"expected near-integer quantity, got {z}")
    return m


def sixj_general(ctx: RootOfUnityCtx, colors: SixJColors) -> LogComplex:
    """General quantum 6j symbol of the tetrahedral graph.

    The four bracket quantities B_dec, B_abe, B_bdf, B_afc must be within
    1e-6 of integers in [0, N-1]; the colors themselves may carry complex
    perturbations.
    """
    a, b, c, d, e, f = (colors.a, colors.b, colors.c,
                        colors.d, colors.e, colors.f)
    N = ctx.N

    def B(x, y, z):
        return x + y - z

    B_dec = _near_int(B(d, e, c))
    B_abe = _near_int(B(a, b, e))
    B_bdf = _near_int(B(b, d, f))
    B_afc = _near_int(B(a, f, c))
    for name, val in (("B_dec", B_dec), ("B_abe", B_abe),
                      ("B_bdf", B_bdf), ("B_afc", B_afc)):
        if val < 0 or val > N - 1:
            raise DomainError(f"{name} = {val} outside [0, N-1]")

    pref = (qfact(ctx, B_dec) * qfact(ctx, B_abe)
            / (qfact(ctx, B_bdf) * qfact(ctx, B_afc)))

    # The two [2e; .] brackets share the falling product started at 2e;
    # cancel that common prefix symbolically so a zero factor {N} sitting
    # in both does not turn into 0/0.
    d1 = 2 * e - (a + b + e + 1 - N)
    d2 = 2 * e - B(c, e, d)
    m1 = _near_int(d1)
    m2 = _near_int(d2)
    if m1 >= m2:
        head = qpoch(ctx, 2 * e - m2, m1 - m2)
    else:
        head = LogComplex.one() / qpoch(ctx, 2 * e - m1, m2 - m1)
    pref = pref * head * (qpoch(ctx, d2, m2) / qpoch(ctx, d1, m1))

    lo = max(0, -B_bdf + B_dec)
    hi = min(B_dec, B_afc)
    terms = []
    for s in range(lo, hi + 1):
        t = qbinom(ctx, a + c + f + 1 - N, 2 * c + s + 1 - N)
        t = t * qbinom(ctx, B(a, c, f) + s, B(a, c, f))
        t = t * qbinom(ctx, B(b, f, d) + B_dec - s, B(b, f, d))
        t = t * qbinom(ctx, B(c, d, e) + s, B(d, f, b))
        terms.append(t)
    total = logc_sum(terms)
    sign = LogComplex(0.0, 0.0 if (N - 1) % 2 == 0 else math.pi)
    return sign * pref * total


def xi(ctx: RootOfUnityCtx, k: int, l: int, s: int) -> LogComplex:
    """State-sum kernel {s}!^2 / ({s-k}!^2 {s-l}!^2 {k+l-s}!^2).

    Requires max(k, l) <= s <= min(k+l, N-1); the value is a positive real.
    """
    if not (max(k, l) <= s <= min(k + l, ctx.N - 1)):
        raise DomainError(f"xi needs max(k,l) <= s <= min(k+l, N-1); "
                          f"got k={k}, l={l}, s={s}")
    num = qfact(ctx, s) ** 2
    den = (qfact(ctx, s - k) ** 2 * qfact(ctx, s - l) ** 2
           * qfact(ctx, k + l - s) ** 2)
    return num / den


def xi_analytic(ctx: RootOfUnityCtx, x: complex, y: complex,
                s: complex) -> LogComplex:
    """Holomorphic extension of xi used inside the derivative formulas.

    Each factorial becomes a falling product whose term count is the
    nearest integer to the real part of the corresponding length (s, s-x,
    s-y, x+y-s); at integer arguments this restricts to :func:`xi`.
    """
    n1 = round(complex(s).real)
    n2 = round(complex(s - x).real)
    n3 = round(complex(s - y).real)
    n4 = round(complex(x + y - s).real)
    if min(n1, n2, n3, n4) < 0:
        raise DomainError("xi_analytic outside the admissible cone")
    num = qpoch(ctx, s, n1) ** 2
    den = (qpoch(ctx, s - x, n2) ** 2 * qpoch(ctx, s - y, n3) ** 2
           * qpoch(ctx, x + y - s, n4) ** 2)
    if den.is_zero:
        raise DomainError("xi_analytic hit a pole")
    return num / den


def sixj_half(ctx: RootOfUnityCtx, k: int, l: int) -> LogComplex:
    """6j symbol of the family with four colors (N-1)/2 and two colors k, l.

    Equals sum over s in [max(k,l), min(k+l, N-1)] of xi(k, l, s); all
    terms are positive reals.
    """
    N = ctx.N
    if not (0 <= k <= N - 1 and 0 <= l <= N - 1):
        raise DomainError(f"sixj_half needs 0 <= k, l <= N-1, got {k}, {l}")
    terms = [xi(ctx, k, l, s) for s in range(max(k, l), min(k + l, N - 1) + 1)]
    return logc_sum(terms)


def sixj_eps(ctx: RootOfUnityCtx, k: int, l: int, eps: complex,
             delta: complex) -> LogComplex:
    """Perturbed half-family 6j symbol.

    The {. + 2 eps, .} / {. + 2 delta, .} corrected sum whose limit as
    eps, delta -> 0 recovers :func:`sixj_half`; it is the building block
    of the epsilon-limit oracles for the derivative formulas.
    """
    N = ctx.N
    if not (0 <= k <= N - 1 and 0 <= l <= N - 1):
        raise DomainError(f"sixj_eps needs 0 <= k, l <= N-1, got {k}, {l}")
    eps = complex(eps)
    delta = complex(delta)
    pref = qpoch(ctx, N - 1 - 2 * delta, N - 1) / qfact(ctx, N - 1)
    terms = []
    for s in range(max(k, l), min(k + l, N - 1) + 1):
        t = qfact(ctx, s) / (qfact(ctx, s - k) * qfact(ctx, s - l)
                             * qfact(ctx, k + l - s))
        t = t * qpoch(ctx, s + 2 * eps, s)
        t = t / qpoch(ctx, s - k + 2 * delta, s - k)
        t = t / qpoch(ctx, s - l - 2 * delta, s - l)
        t = t / qpoch(ctx, k + l - s + 2 * eps, k + l - s)
        terms.append(t)
    return pref * logc_sum(terms)


class DegenerateForm(Enum):
    """The five degenerate 6j closed forms (one vanishing edge color)."""

    EDGE_PLUS = "edge_plus"      # {l+2e, l} / {l}!
    CAP = "cap"                  # {N-1-e, N-1} / {N-1}!
    EDGE_MINUS = "edge_minus"    # {l-2e, l} / {l}!
    K_RATIO = "k_ratio"          # {k+e-d, k}{N-1+e+d, N-1} / ({k+e+d, k}{N-1}!)
    L_RATIO = "l_ratio"          # {l+e+d, l} / {l-e+d, l}


def sixj_degenerate(ctx: RootOfUnityCtx, which: DegenerateForm | str,
                    *, k: int = 0, l: int = 0, eps: complex = 0.0,
                    delta: complex = 0.0) -> LogComplex:
    """Evaluate one of the degenerate 6j closed forms."""
    which = DegenerateForm(which)
    e, d = complex(eps), complex(delta)
    N = ctx.N
    if which is DegenerateForm.EDGE_PLUS:
        return qpoch(ctx, l + 2 * e, l) / qfact(ctx, l)
    if which is DegenerateForm.CAP:
        return qpoch(ctx, N - 1 - e, N - 1) / qfact(ctx, N - 1)
    if which is DegenerateForm.EDGE_MINUS:
        return qpoch(ctx, l - 2 * e, l) / qfact(ctx, l)
    if which is DegenerateForm.K_RATIO:
        num = qpoch(ctx, k + e - d, k) * qpoch(ctx, N - 1 + e + d, N - 1)
        return num / (qpoch(ctx, k + e + d, k) * qfact(ctx, N - 1))
    if which is DegenerateForm.L_RATIO:
        return qpoch(ctx, l + e + d, l) / qpoch(ctx, l - e + d, l)
    raise DomainError(f"unknown degenerate form {which!r}")  # pragma: no cover


def degenerate_colors(ctx: RootOfUnityCtx, which: DegenerateForm | str,
                      *, k: int = 0, l: int = 0, eps: complex = 0.0,
                      delta: complex = 0.0) -> SixJColors:
    """Tetrahedral colors whose general 6j symbol matches the closed form.

    Cross-checking :func:`sixj_general` on these colors against
    :func:`sixj_degenerate` is the dual-formula oracle for the degenerate
    family.
    """
    which = DegenerateForm(which)
    h = (ctx.N - 1) / 2
    e, d = complex(eps), complex(delta)
    if which is DegenerateForm.EDGE_PLUS:
        return SixJColors(l, h, h + e, e, h, h + e)
    if which is DegenerateForm.CAP:
        return SixJColors(l, h - e / 2, h + e / 2, e, h - e / 2, h + e / 2)
    if which is DegenerateForm.EDGE_MINUS:
        return SixJColors(-e, h, h, ctx.N - 1 - l + e, h - e, h + e)
    if which is DegenerateForm.K_RATIO:
        return SixJColors(h - (e + d) / 2, h + (e - d) / 2, h + (e - d) / 2,
                          h + (e + d) / 2, -d, k + e)
    if which is DegenerateForm.L_RATIO:
        return SixJColors(l + d, h - (e + d) / 2, h + (e + d) / 2,
                          e, h - (e - d) / 2, h + (e - d) / 2)
    raise DomainError(f"unknown degenerate form {which!r}")  # pragma: no cover
