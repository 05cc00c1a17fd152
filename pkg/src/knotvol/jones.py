"""Colored Jones invariants J_{N-1} at q = exp(i*pi/N) for the knot families.

Borromean rings B and the variants B_1, B_{1,1} are plain triple state
sums; twisted Whitehead links W_p and double twist knots D_{p,r} are
evaluated through exact analytic derivatives of the reparametrised state
sum (cotangent log-derivatives plus polynomial exponent derivatives), so
no finite differencing enters the production path.

The engines are vectorised per outer index k; a fixed pairwise reduction
tree over rows makes results bit-identical for any thread count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .qnum import DomainError, LogComplex, RootOfUnityCtx, _wrap_phase

try:
    import gmpy2
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    _HAVE_GMPY2 = False

PI = math.pi


class Family(Enum):
    BORROMEAN = "borromean"
    B1 = "b1"
    B11 = "b11"
    WHITEHEAD = "whitehead"
    DOUBLE_TWIST = "double"


@dataclass(frozen=True)
class KnotSpec:
    """A knot or link in the supported families.

    Twist knots are double twist knots with r = 2.  Whitehead requires
    |p| >= 2; hyperbolicity of double-twist parameters is enforced only at
    the verification layer, not here.
    """

    family: Family
    p: int = 0
    r: int = 0

    def __post_init__(self):
        if self.family is Family.WHITEHEAD and abs(self.p) < 2:
            raise DomainError("twisted Whitehead link needs |p| >= 2")

    @staticmethod
    def borromean() -> "KnotSpec":
        return KnotSpec(Family.BORROMEAN)

    @staticmethod
    def b1() -> "KnotSpec":
        return KnotSpec(Family.B1)

    @staticmethod
    def b11() -> "KnotSpec":
        return KnotSpec(Family.B11)

    @staticmethod
    def whitehead(p: int) -> "KnotSpec":
        return KnotSpec(Family.WHITEHEAD, p=p)

    @staticmethod
    def double_twist(p: int, r: int) -> "KnotSpec":
        return KnotSpec(Family.DOUBLE_TWIST, p=p, r=r)

    @staticmethod
    def twist(p: int) -> "KnotSpec":
        return KnotSpec(Family.DOUBLE_TWIST, p=p, r=2)

    def label(self) -> str:
        if self.family is Family.WHITEHEAD:
            return f"whitehead(p={self.p})"
        if self.family is Family.DOUBLE_TWIST:
            return f"double(p={self.p},r={self.r})"
        return self.family.value

    @staticmethod
    def parse(name: str, p: int | None = None, r: int | None = None) -> "KnotSpec":
        name = name.lower()
        if name in ("borromean", "b"):
            return KnotSpec.borromean()
        if name == "b1":
            return KnotSpec.b1()
        if name in ("b11", "b1,1"):
            return KnotSpec.b11()
        if name in ("whitehead", "w"):
            if p is None:
                raise DomainError("whitehead needs --p")
            return KnotSpec.whitehead(p)
        if name in ("double", "doubletwist", "d"):
            if p is None or r is None:
                raise DomainError("double twist needs --p and --r")
            return KnotSpec.double_twist(p, r)
        if name in ("twist", "t"):
            if p is None:
                raise DomainError("twist knot needs --p")
            return KnotSpec.twist(p)
        raise DomainError(f"unknown knot family {name!r}")


@dataclass(frozen=True)
class JonesValue:
    """J_{N-1} of a knot, with the bookkeeping the growth studies need.

    ``value`` holds magnitude and principal phase; ``unreduced_phase``
    additionally keeps the analytically known prefactor phase without mod
    2 pi reduction, which is what phase-unwrapped growth rates consume.
    """

    value: LogComplex
    N: int
    knot: KnotSpec
    method: str
    unreduced_phase: float = 0.0

    def to_complex(self) -> complex:
        return self.value.to_complex()


def _reduced_q_phase(ctx: RootOfUnityCtx, quarter_units: int) -> float:
    """Phase of q**(quarter_units/4) with the exponent reduced exactly.

    State-sum exponents are integers or quarter-integers; reducing them
    modulo 8N in integer arithmetic keeps sin/cos arguments small so no
    precision is lost at large N.
    """
    return PI * (quarter_units % (8 * ctx.N)) / (4.0 * ctx.N)


def _ragged_sl(ctx: RootOfUnityCtx, k: int):
    """Flattened (l, s) index arrays for the s-range of a fixed k."""
    N = ctx.N
    l = np.arange(N)
    smin = np.maximum(k, l)
    smax = np.minimum(k + l, N - 1)
    counts = smax - smin + 1
    total = int(counts.sum())
    l_rep = np.repeat(l, counts)
    starts = np.cumsum(counts) - counts
    s_rep = np.repeat(smin, counts) + (np.arange(total) - np.repeat(starts, counts))
    return l_rep, s_rep


def _log_xi(ctx: RootOfUnityCtx, k: int, l_rep: np.ndarray, s_rep: np.ndarray) -> np.ndarray:
    """log xi(k, l, s) (positive real kernel) via prefix tables."""
    L = ctx.log2sin_prefix
    return 2.0 * (L[s_rep] - L[s_rep - k] - L[s_rep - l_rep] - L[k + l_rep - s_rep])


def _row_borromean(ctx: RootOfUnityCtx, k: int, phase_k: int, phase_l: bool) -> LogComplex:
    """Row sum over (l, s) for the Borromean family at fixed k.

    phase_k carries the exponent (k-(N-1)/2)^2 multiplicity (0 or 1) and
    phase_l switches the matching l-dependent factor on (for B_{1,1}).
    """
    N = ctx.N
    h = (N - 1) // 2
    l_rep, s_rep = _ragged_sl(ctx, k)
    logmag = _log_xi(ctx, k, l_rep, s_rep)
    if phase_k or phase_l:
        expo = np.zeros(l_rep.shape, dtype=np.int64)
        if phase_k:
            expo += 4 * (k - h) ** 2
        if phase_l:
            expo += 4 * (l_rep - h) ** 2
        phases = PI * (expo % (8 * N)) / (4.0 * N)
    else:
        phases = np.zeros_like(logmag)
    shift = float(logmag.max())
    acc = complex(np.sum(np.exp(logmag - shift + 1j * phases)))
    return LogComplex(shift + math.log(abs(acc)), cmath.phase(acc))


def _row_whitehead(ctx: RootOfUnityCtx, p: int, k: int) -> LogComplex:
    """Row sum of d/dx terms at x = k for the twisted Whitehead link."""
    N = ctx.N
    h = (N - 1) // 2
    C1 = ctx.cot_prefix
    l_rep, s_rep = _ragged_sl(ctx, k)
    logmag = _log_xi(ctx, k, l_rep, s_rep)

    # d/dx log of the four squared falling products, at the integer point
    zx = (PI / N) * (C1[s_rep] + C1[s_rep - k] - C1[s_rep - l_rep]
                     - C1[k + l_rep - s_rep])
    ax = 2j * PI * p * (k - h) / N            # d/dx log q^{p(x-h)^2}
    bx = 2j * math.sin(PI * (2 * k + 1) / N)  # {2x+1} at x=k
    bxp = 4j * PI * math.cos(PI * (2 * k + 1) / N) / N
    bracket = bxp + bx * (ax + zx)

    phase_a = _reduced_q_phase(ctx, 4 * p * (k - h) ** 2)
    shift = float(logmag.max())
    acc = complex(np.sum(np.exp(logmag - shift) * bracket)) * cmath.exp(1j * phase_a)
    if acc == 0:
        return LogComplex.zero()
    return LogComplex(shift + math.log(abs(acc)), cmath.phase(acc))


def _row_double(ctx: RootOfUnityCtx, p: int, r: int, k: int) -> LogComplex:
    """Row sum of d^2/dxdy terms at (x, y) = (k, l) for double twist knots."""
    N = ctx.N
    h = (N - 1) // 2
    C1 = ctx.cot_prefix
    C2 = ctx.csc2_prefix
    l_rep, s_rep = _ragged_sl(ctx, k)
    logmag = _log_xi(ctx, k, l_rep, s_rep)

    t1 = C1[s_rep]
    t2 = C1[s_rep - k]
    t3 = C1[s_rep - l_rep]
    t4 = C1[k + l_rep - s_rep]
    cx = (PI / N) * (t1 + t2 - t3 - t4)
    cy = (PI / N) * (t1 - t2 + t3 - t4)
    u1 = C2[s_rep]
    u2 = C2[s_rep - k]
    u3 = C2[s_rep - l_rep]
    u4 = C2[k + l_rep - s_rep]
    # mixed log-derivative of the pre-squared product kernel: the factorial
    # half of each squared factor carries no (x, y) dependence, so the
    # cross term is twice what a naive squared-kernel reading would give
    gxy = (PI / N) ** 2 * (-u1 - u2 - u3 + u4)

    gx = cx + 2j * PI * p * (k - h) / N
    gy = cy - 2j * PI * r * (l_rep - h) / N

    bx = 2j * math.sin(PI * (2 * k + 1) / N)
    bxp = 4j * PI * math.cos(PI * (2 * k + 1) / N) / N
    by = 2j * np.sin(PI * (2 * l_rep + 1) / N)
    byp = 4j * PI * np.cos(PI * (2 * l_rep + 1) / N) / N

    bracket = ((gx * gy + gxy) * bx * by + gy * bxp * by
               + gx * bx * byp + bxp * byp)

    expo = 4 * p * (k - h) ** 2 - 4 * r * (l_rep - h) ** 2
    phases = PI * (expo % (8 * N)) / (4.0 * N)

    shift = float(logmag.max())
    acc = complex(np.sum(np.exp(logmag - shift + 1j * phases) * bracket))
    if acc == 0:
        return LogComplex.zero()
    return LogComplex(shift + math.log(abs(acc)), cmath.phase(acc))


def required_digits(ctx: RootOfUnityCtx, signal_logmag: float) -> int | None:
    """Decimal digits needed to resolve a sum whose answer has the given
    natural-log magnitude against the largest kernel term.

    The W/D state sums cancel from exp(N vB/2pi)-sized terms down to the
    exp(N vol/2pi)-sized invariant, so plain doubles drown beyond small N.
    Returns None when double precision suffices.
    """
    N = ctx.N
    h = (N - 1) // 2
    L = ctx.log2sin_prefix
    smax = 0.0
    for s in range(h, N):
        val = 2.0 * (L[s] - 2 * L[s - h] - L[2 * h - s])
        smax = max(smax, float(val))
    deficit_digits = (smax + 3.0 * math.log(N) - signal_logmag) / math.log(10.0)
    if deficit_digits <= 9.0:
        return None
    return int(math.ceil(deficit_digits)) + 12


def _mp_tables(ctx: RootOfUnityCtx, digits: int) -> dict:
    """Precision-dependent tables for the high-accuracy row evaluators.

    P[m] = prod_{a<=m} 2 sin(pi a/N) (and inverses), cot / 1/sin^2 prefix
    sums, and a phase table for q to quarter-integer exponents.
    """
    key = ("mp", digits)
    tab = ctx._tables.get(key)
    if tab is not None:
        return tab
    N = ctx.N
    prec = int(digits * 3.33) + 24
    if _HAVE_GMPY2:
        with gmpy2.context(precision=prec):
            pi = gmpy2.const_pi()
            one = gmpy2.mpfr(1)
            sin = gmpy2.sin
            cos = gmpy2.cos
    else:  # pragma: no cover - exercised only without gmpy2
        import mpmath
        mpmath.mp.prec = prec
        pi = mpmath.pi
        one = mpmath.mpf(1)
        sin, cos = mpmath.sin, mpmath.cos

    def build():
        P = [one] * N
        Pinv = [one] * N
        C1 = [one * 0] * N
        C2 = [one * 0] * N
        for m in range(1, N):
            s = sin(pi * m / N)
            c = cos(pi * m / N)
            P[m] = P[m - 1] * (2 * s)
            Pinv[m] = 1 / P[m]
            C1[m] = C1[m - 1] + c / s
            C2[m] = C2[m - 1] + 1 / (s * s)
        cs = [cos(pi * j / (4 * N)) for j in range(8 * N)]
        sn = [sin(pi * j / (4 * N)) for j in range(8 * N)]
        return {"prec": prec, "pi": pi, "P": P, "Pinv": Pinv,
                "C1": C1, "C2": C2, "cs": cs, "sn": sn}

    if _HAVE_GMPY2:
        with gmpy2.context(precision=prec):
            tab = build()
    else:  # pragma: no cover
        tab = build()
    ctx._tables[key] = tab
    return tab


def _mp_to_logcomplex(re, im) -> LogComplex:
    if _HAVE_GMPY2:
        mag2 = re * re + im * im
        if mag2 == 0:
            return LogComplex.zero()
        logmag = float(gmpy2.log(mag2)) / 2.0
        phase = float(gmpy2.atan2(im, re))
    else:  # pragma: no cover
        import mpmath
        mag2 = re * re + im * im
        if mag2 == 0:
            return LogComplex.zero()
        logmag = float(mpmath.log(mag2)) / 2.0
        phase = float(mpmath.atan2(im, re))
    return LogComplex(logmag, _wrap_phase(phase))


def _sum_rows_whitehead_mp(ctx: RootOfUnityCtx, p: int, digits: int) -> LogComplex:
    N = ctx.N
    h = (N - 1) // 2
    tab = _mp_tables(ctx, digits)
    P, Pinv, C1 = tab["P"], tab["Pinv"], tab["C1"]
    cs, sn = tab["cs"], tab["sn"]

    def run():
        pi = tab["pi"]
        pin = pi / N
        tot_re = 0 * pi
        tot_im = 0 * pi
        for k in range(N):
            bxi = 2 * sn[(2 * k + 1) * 4 % (8 * N)]
            bxpi = (4 * pin) * cs[(2 * k + 1) * 4 % (8 * N)]
            axi = 2 * pin * p * (k - h)
            s0 = 0 * pi
            s1 = 0 * pi
            for l in range(N):
                lo = k if k > l else l
                hi = k + l if k + l < N - 1 else N - 1
                for s in range(lo, hi + 1):
                    xi = (P[s] * Pinv[s - k] * Pinv[s - l] * Pinv[k + l - s]) ** 2
                    zx = C1[s] + C1[s - k] - C1[s - l] - C1[k + l - s]
                    s0 += xi
                    s1 += xi * zx
            row_re = -bxi * axi * s0
            row_im = bxpi * s0 + bxi * pin * s1
            j = (4 * p * (k - h) ** 2) % (8 * N)
            tot_re += row_re * cs[j] - row_im * sn[j]
            tot_im += row_re * sn[j] + row_im * cs[j]
        return tot_re, tot_im

    if _HAVE_GMPY2:
        with gmpy2.context(precision=tab["prec"]):
            re, im = run()
    else:  # pragma: no cover
        re, im = run()
    return _mp_to_logcomplex(re, im)


def _sum_rows_double_mp(ctx: RootOfUnityCtx, p: int, r: int, digits: int) -> LogComplex:
    N = ctx.N
    h = (N - 1) // 2
    tab = _mp_tables(ctx, digits)
    P, Pinv, C1, C2 = tab["P"], tab["Pinv"], tab["C1"], tab["C2"]
    cs, sn = tab["cs"], tab["sn"]

    def run():
        pi = tab["pi"]
        pin = pi / N
        pin2 = pin * pin
        zero = 0 * pi
        tot_re = zero
        tot_im = zero
        byi = [2 * sn[(2 * l + 1) * 4 % (8 * N)] for l in range(N)]
        bypi = [(4 * pin) * cs[(2 * l + 1) * 4 % (8 * N)] for l in range(N)]
        ayl = [-2 * pin * r * (l - h) for l in range(N)]
        for k in range(N):
            bxi = 2 * sn[(2 * k + 1) * 4 % (8 * N)]
            bxpi = (4 * pin) * cs[(2 * k + 1) * 4 % (8 * N)]
            axk = 2 * pin * p * (k - h)
            for l in range(N):
                lo = k if k > l else l
                hi = k + l if k + l < N - 1 else N - 1
                s0 = zero; s1x = zero; s1y = zero; sxy = zero; sg = zero
                for s in range(lo, hi + 1):
                    xi = (P[s] * Pinv[s - k] * Pinv[s - l] * Pinv[k + l - s]) ** 2
                    t1 = C1[s]; t2 = C1[s - k]; t3 = C1[s - l]; t4 = C1[k + l - s]
                    zx = t1 + t2 - t3 - t4
                    zy = t1 - t2 + t3 - t4
                    gm = C2[k + l - s] - C2[s] - C2[s - k] - C2[s - l]
                    s0 += xi
                    xzx = xi * zx
                    s1x += xzx
                    s1y += xi * zy
                    sxy += xzx * zy
                    sg += xi * gm
                # assemble sum_s xi * bracket with per-(k,l) constants
                # gx gy + gxy summed against xi:
                re_gg = pin2 * sxy - axk * ayl[l] * s0 + pin2 * sg
                im_gg = pin * s1x * ayl[l] + axk * pin * s1y
                bxy = -bxi * byi[l]
                br_re = re_gg * bxy
                br_im = im_gg * bxy
                # gy * Bx' By  (Bx'By = -bxpi*byi, real)
                c2 = -bxpi * byi[l]
                br_re += c2 * pin * s1y
                br_im += c2 * ayl[l] * s0
                # gx * Bx By'  (BxBy' = -bxi*bypi, real)
                c3 = -bxi * bypi[l]
                br_re += c3 * pin * s1x
                br_im += c3 * axk * s0
                # Bx' By' = -bxpi*bypi, real
                br_re += -bxpi * bypi[l] * s0
                j = (4 * p * (k - h) ** 2 - 4 * r * (l - h) ** 2) % (8 * N)
                tot_re += br_re * cs[j] - br_im * sn[j]
                tot_im += br_re * sn[j] + br_im * cs[j]
        return tot_re, tot_im

    if _HAVE_GMPY2:
        with gmpy2.context(precision=tab["prec"]):
            re, im = run()
    else:  # pragma: no cover
        re, im = run()
    return _mp_to_logcomplex(re, im)


def _map_rows(fn, ctx: RootOfUnityCtx, threads: int) -> list[LogComplex]:
    ks = list(range(ctx.N))
    if threads <= 1:
        return [fn(k) for k in ks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, ks))


def _tree_reduce(rows: list[LogComplex]) -> LogComplex:
    """Deterministic fixed-shape pairwise reduction over row sums."""
    items = rows[:]
    if not items:
        return LogComplex.zero()
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            a, b = items[i], items[i + 1]
            if a.is_zero:
                nxt.append(b)
                continue
            if b.is_zero:
                nxt.append(a)
                continue
            shift = max(a.logmag, b.logmag)
            z = (cmath.exp(complex(a.logmag - shift, a.phase))
                 + cmath.exp(complex(b.logmag - shift, b.phase)))
            nxt.append(LogComplex.zero() if z == 0 else
                       LogComplex(shift + math.log(abs(z)), cmath.phase(z)))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def jones_borromean(ctx: RootOfUnityCtx, threads: int = 1) -> JonesValue:
    """J_{N-1} of the Borromean rings: N^2 times the positive triple sum."""
    total = _tree_reduce(_map_rows(
        lambda k: _row_borromean(ctx, k, 0, False), ctx, threads))
    value = total.scaled(ctx.N ** 2)
    return JonesValue(value, ctx.N, KnotSpec.borromean(), "direct_sum",
                      unreduced_phase=value.phase)


def _jones_b_variant(ctx: RootOfUnityCtx, knot: KnotSpec, threads: int) -> JonesValue:
    phase_l = knot.family is Family.B11
    total = _tree_reduce(_map_rows(
        lambda k: _row_borromean(ctx, k, 1, phase_l), ctx, threads))
    # global twist prefactor: one factor q^{-(N-1)^2/4} per half twist
    halves = 2 if phase_l else 1
    pref_expo = -halves * (ctx.N - 1) ** 2
    pref_phase_exact = PI * pref_expo / (4.0 * ctx.N)
    value = LogComplex(total.logmag + 2 * math.log(ctx.N),
                       _wrap_phase(total.phase + _reduced_q_phase(ctx, pref_expo)))
    return JonesValue(value, ctx.N, knot, "direct_sum",
                      unreduced_phase=total.phase + pref_phase_exact)


def jones_b1(ctx: RootOfUnityCtx, threads: int = 1) -> JonesValue:
    """J_{N-1} of the first Borromean variant (one half-twisted clasp)."""
    return _jones_b_variant(ctx, KnotSpec.b1(), threads)


def jones_b11(ctx: RootOfUnityCtx, threads: int = 1) -> JonesValue:
    """J_{N-1} of the second Borromean variant (two half-twisted clasps)."""
    return _jones_b_variant(ctx, KnotSpec.b11(), threads)


def jones_whitehead(ctx: RootOfUnityCtx, p: int, threads: int = 1,
                    precision: int | None = None) -> JonesValue:
    """J_{N-1}(W_p) by the analytic-derivative state sum.

    ``precision`` (decimal digits) switches to the high-accuracy scalar
    path; required once the structural cancellation between kernel terms
    exceeds double precision (see :func:`required_digits`).
    """
    knot = KnotSpec.whitehead(p)
    if precision is not None:
        total = _sum_rows_whitehead_mp(ctx, p, precision)
    else:
        total = _tree_reduce(_map_rows(
            lambda k: _row_whitehead(ctx, p, k), ctx, threads))
    pref_expo = p * (ctx.N - 1) ** 2
    pref_phase_exact = PI * pref_expo / (4.0 * ctx.N) - PI / 2
    logmag = total.logmag + math.log(ctx.N) - math.log(4 * PI)
    phase = _wrap_phase(total.phase + _reduced_q_phase(ctx, pref_expo) - PI / 2)
    value = LogComplex(logmag, phase)
    return JonesValue(value, ctx.N, knot, "analytic_derivative",
                      unreduced_phase=total.phase + pref_phase_exact)


def jones_double_twist(ctx: RootOfUnityCtx, p: int, r: int,
                       threads: int = 1,
                       precision: int | None = None) -> JonesValue:
    """J_{N-1}(D_{p,r}) by the mixed analytic-derivative state sum."""
    knot = KnotSpec.double_twist(p, r)
    if precision is not None:
        total = _sum_rows_double_mp(ctx, p, r, precision)
    else:
        total = _tree_reduce(_map_rows(
            lambda k: _row_double(ctx, p, r, k), ctx, threads))
    pref_expo = (p - r) * (ctx.N - 1) ** 2
    # -N^2/(16 pi^2) carries phase pi
    pref_phase_exact = PI * pref_expo / (4.0 * ctx.N) + PI
    logmag = total.logmag + 2 * math.log(ctx.N) - math.log(16 * PI ** 2)
    phase = _wrap_phase(total.phase + _reduced_q_phase(ctx, pref_expo) + PI)
    value = LogComplex(logmag, phase)
    return JonesValue(value, ctx.N, knot, "analytic_derivative",
                      unreduced_phase=total.phase + pref_phase_exact)


def jones_value(ctx: RootOfUnityCtx, knot: KnotSpec, threads: int = 1,
                precision: int | None = None) -> JonesValue:
    """Evaluate J_{N-1} for any supported knot.

    The Borromean family ignores ``precision``: its sums carry no
    exponential cancellation, so doubles are always adequate there.
    """
    if knot.family is Family.BORROMEAN:
        return jones_borromean(ctx, threads)
    if knot.family is Family.B1:
        return jones_b1(ctx, threads)
    if knot.family is Family.B11:
        return jones_b11(ctx, threads)
    if knot.family is Family.WHITEHEAD:
        return jones_whitehead(ctx, knot.p, threads, precision=precision)
    if knot.family is Family.DOUBLE_TWIST:
        return jones_double_twist(ctx, knot.p, knot.r, threads,
                                  precision=precision)
    raise DomainError(f"unsupported knot {knot!r}")  # pragma: no cover
