"""Potential functions for the saddle-point analysis of the state sums.

The inner maximizer w0/gamma0, the one-variable potential of the twisted
Whitehead family, the two-variable potential of the double twist family,
their twist-term extensions, exact gradients, damped complex Newton
solvers for the saddle equations, contour-grid emission and the region
checks that certify a unique interior critical point.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qnum import DomainError
from .specfun import li2_array

PI = math.pi
TWO_PI_I = 2j * PI
FOUR_PI2 = 4 * PI * PI


class SaddleError(RuntimeError):
    """Newton failed to converge or converged off the wanted branch."""


@dataclass(frozen=True)
class PotentialParams:
    """Twist parameters selecting a family potential.

    family "W": one twist region p (r unused).  family "D": regions p, r.
    """

    family: str
    p: int
    r: int = 0

    def __post_init__(self):
        if self.family not in ("W", "D"):
            raise DomainError(f"family must be 'W' or 'D', got {self.family!r}")


@dataclass(frozen=True)
class SaddleSolution:
    """A converged saddle of the shifted potential.

    ``value`` is 4 pi^2 alpha0 (+ 4 pi^2 beta0) + Phi at the saddle, the
    combination whose imaginary part is the growth rate.
    """

    alpha0: complex
    beta0: complex | None
    u: complex
    v: complex
    w0: complex
    value: complex
    grad_residual: float


def _w0_path(alpha, beta, steps: int = 256):
    """Branch-track w0 along the straight line from (1/2, 1/2) in (alpha,
    beta) to the target, starting from w0 = -i at the anchor.

    Vectorised over numpy arrays; returns (w0, sqrtD) with sqrtD the
    discriminant root consistent with the tracked branch.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    shape = np.broadcast(alpha, beta).shape
    a_t = np.broadcast_to(alpha, shape).ravel()
    b_t = np.broadcast_to(beta, shape).ravel()

    for attempt in range(4):
        n = steps * (2 ** attempt)
        t = np.linspace(0.0, 1.0, n + 1)[1:]
        w = np.full(a_t.shape, -1j, dtype=complex)
        ok = True
        for tt in t:
            aa = 0.5 + tt * (a_t - 0.5)
            bb = 0.5 + tt * (b_t - 0.5)
            u = np.exp(TWO_PI_I * aa)
            v = np.exp(TWO_PI_I * bb)
            s = (u + 1) * (v + 1)
            disc = s * s - 16 * u * v
            rt = np.sqrt(disc)
            w_plus = (s + rt) / 4
            w_minus = (s - rt) / 4
            pick_minus = np.abs(w_minus - w) <= np.abs(w_plus - w)
            w = np.where(pick_minus, w_minus, w_plus)
            if np.any(np.abs(w_plus - w_minus) < 1e-8 * (1 + np.abs(w))):
                ok = False
                break
        if ok:
            sqrtD = s - 4 * w
            return w.reshape(shape), sqrtD.reshape(shape)
    raise DomainError("degenerate discriminant along the branch-tracking path")


def w0_gamma0(u: complex, v: complex) -> tuple[complex, complex]:
    """Inner maximizer w0 and its logarithm gamma0 for holonomies (u, v).

    w0 = ((u+1)(v+1) - sqrt(D))/4 with the discriminant branch selected by
    continuity from (u, v) = (-1, -1) where w0 = -i; gamma0 = log(w0) /
    (2 pi i) with the argument taken in [0, 2 pi), so Re gamma0 in [0, 1).
    """
    alpha = _alpha_of(u)
    beta = _alpha_of(v)
    w, _ = _w0_path(alpha, beta)
    w = complex(w)
    return w, _gamma_of(w)


def _alpha_of(u: complex) -> complex:
    """log(u)/(2 pi i) normalised to Re in [0, 1)."""
    u = complex(u)
    if u == 0:
        raise DomainError("holonomy eigenvalue must be nonzero")
    th = cmath.phase(u) % (2 * PI)
    return th / (2 * PI) - 1j * math.log(abs(u)) / (2 * PI)


def _gamma_of(w: complex) -> complex:
    th = cmath.phase(w) % (2 * PI)
    return th / (2 * PI) - 1j * math.log(abs(w)) / (2 * PI)


def _gamma_of_arr(w: np.ndarray) -> np.ndarray:
    th = np.angle(w) % (2 * PI)
    return th / (2 * PI) - 1j * np.log(np.abs(w)) / (2 * PI)


def psi_b_array(alpha, beta, li2_branches=(0, 0, 0, 0)):
    """Two-variable potential (vectorised), with its exact gradient.

    Returns (psi, dpsi_dalpha, dpsi_dbeta, w0).  ``li2_branches`` adds
    sheet corrections 2*k*(2 pi i)*log(z) to the four dilogarithms for
    evaluations continued across the cut.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    w, _ = _w0_path(alpha, beta)
    gamma = _gamma_of_arr(np.atleast_1d(w)).reshape(np.shape(w))
    u = np.exp(TWO_PI_I * alpha)
    v = np.exp(TWO_PI_I * beta)

    z1 = np.atleast_1d(w)
    z2 = np.atleast_1d(w / u)
    z3 = np.atleast_1d(w / v)
    z4 = np.atleast_1d(u * v / w)
    li = [li2_array(z) for z in (z1, z2, z3, z4)]
    for i, (k, z) in enumerate(zip(li2_branches, (z1, z2, z3, z4))):
        if k:
            li[i] = li[i] + k * TWO_PI_I * np.log(z)
    quad = -FOUR_PI2 * (gamma ** 2 - 2 * (alpha + beta) * gamma
                        + alpha ** 2 + alpha * beta + beta ** 2)
    psi = (quad - 2 * li[0].reshape(np.shape(w)) + 2 * li[1].reshape(np.shape(w))
           + 2 * li[2].reshape(np.shape(w)) + 2 * li[3].reshape(np.shape(w))
           - 2 * PI ** 2 / 3)

    log1m = lambda z: np.log(1 - z)
    dpa = (-FOUR_PI2 * (2 * alpha + beta - 2 * gamma)
           + 4j * PI * (log1m(w / u) - log1m(u * v / w)))
    dpb = (-FOUR_PI2 * (alpha + 2 * beta - 2 * gamma)
           + 4j * PI * (log1m(w / v) - log1m(u * v / w)))
    return psi, dpa, dpb, w


def psi_b(alpha: complex, beta: complex,
          li2_branches=(0, 0, 0, 0)) -> complex:
    """Two-variable potential at a point."""
    psi, _, _, _ = psi_b_array(np.array([alpha]), np.array([beta]), li2_branches)
    return complex(psi[0])


def grad_psi_b(alpha: complex, beta: complex) -> tuple[complex, complex]:
    _, da, db, _ = psi_b_array(np.array([alpha]), np.array([beta]))
    return complex(da[0]), complex(db[0])


def psi_w(alpha: complex, li2_branches=(0, 0, 0, 0)) -> complex:
    """One-variable potential of the Whitehead family.

    Closed form with gamma0 = (alpha + 1)/2 (the beta = 1/2 inner
    maximizer); agrees with psi_b(alpha, 1/2).
    """
    a = complex(alpha)
    g = (a + 1) / 2
    w = -cmath.exp(1j * PI * a)
    u = cmath.exp(TWO_PI_I * a)
    zs = (w, w / u, -w, -u / w)
    li = [complex(li2_array(np.array([z]))[0]) for z in zs]
    for i, (k, z) in enumerate(zip(li2_branches, zs)):
        if k:
            li[i] += k * TWO_PI_I * cmath.log(z)
    quad = -FOUR_PI2 * (g * g - 2 * (a + 0.5) * g + a * a + 0.5 * a + 0.25)
    return (quad - 2 * li[0] + 2 * li[1] + 2 * li[2] + 2 * li[3]
            - 2 * PI ** 2 / 3)


def grad_psi_w(alpha: complex) -> complex:
    """Exact d psi_w / d alpha (gamma0 stationarity removes the chain term)."""
    a = complex(alpha)
    return (-FOUR_PI2 * (a - 0.5)
            + 4j * PI * (cmath.log(1 + cmath.exp(-1j * PI * a))
                         - cmath.log(1 - cmath.exp(1j * PI * a))))


def phi_wp(p: int, alpha: complex, li2_branches=(0, 0, 0, 0)) -> complex:
    """Twisted Whitehead potential: quadratic twist term plus psi_w."""
    a = complex(alpha)
    return -2 * PI ** 2 * p * (a - 0.5) ** 2 + psi_w(a, li2_branches)


def grad_phi_wp(p: int, alpha: complex) -> complex:
    a = complex(alpha)
    return -FOUR_PI2 * p * (a - 0.5) + grad_psi_w(a)


def phi_dpr(p: int, r: int, alpha: complex, beta: complex,
            li2_branches=(0, 0, 0, 0)) -> complex:
    """Double twist potential: -2 pi^2 p (a-1/2)^2 + 2 pi^2 r (b-1/2)^2 + psi_b.

    The r-quadratic carries half the printed coefficient, mirroring the
    p-term; this is what reproduces the known holonomies (see tests).
    """
    a, b = complex(alpha), complex(beta)
    return (-2 * PI ** 2 * p * (a - 0.5) ** 2
            + 2 * PI ** 2 * r * (b - 0.5) ** 2
            + psi_b(a, b, li2_branches))


def grad_phi_dpr(p: int, r: int, alpha: complex, beta: complex):
    da, db = grad_psi_b(alpha, beta)
    return (da - FOUR_PI2 * p * (complex(alpha) - 0.5),
            db + FOUR_PI2 * r * (complex(beta) - 0.5))


def _newton1(f, z0: complex, tol: float = 1e-12, maxit: int = 100) -> complex:
    """Damped complex Newton in one variable with numeric derivative."""
    z = complex(z0)
    fz = f(z)
    for _ in range(maxit):
        if abs(fz) < tol:
            return z
        h = 1e-7
        df = (f(z + h) - f(z - h)) / (2 * h)
        if df == 0:
            raise SaddleError("vanishing derivative in Newton")
        step = -fz / df
        lam = 1.0
        for _ in range(40):
            z_new = z + lam * step
            f_new = f(z_new)
            if abs(f_new) < abs(fz):
                z, fz = z_new, f_new
                break
            lam /= 2
        else:
            raise SaddleError("Newton step could not reduce the residual")
    if abs(fz) < tol:
        return z
    raise SaddleError(f"Newton did not converge; residual {abs(fz):.3e}")


def _newton2(g, z0, tol: float = 1e-12, maxit: int = 100):
    """Damped Newton for a C^2 -> C^2 system, numeric Jacobian."""
    z = np.array(z0, dtype=complex)
    gz = np.array(g(z), dtype=complex)
    for _ in range(maxit):
        res = np.linalg.norm(gz)
        if res < tol:
            return z
        h = 1e-7
        J = np.zeros((2, 2), dtype=complex)
        for j in range(2):
            dz = np.zeros(2, dtype=complex)
            dz[j] = h
            J[:, j] = (np.array(g(z + dz)) - np.array(g(z - dz))) / (2 * h)
        try:
            step = np.linalg.solve(J, -gz)
        except np.linalg.LinAlgError as exc:
            raise SaddleError("singular Jacobian in Newton") from exc
        lam = 1.0
        for _ in range(40):
            z_new = z + lam * step
            g_new = np.array(g(z_new), dtype=complex)
            if np.linalg.norm(g_new) < res:
                z, gz = z_new, g_new
                break
            lam /= 2
        else:
            raise SaddleError("Newton step could not reduce the residual")
    if np.linalg.norm(gz) < tol:
        return z
    raise SaddleError(f"Newton did not converge; residual {np.linalg.norm(gz):.3e}")


def saddle_whitehead(p: int, seed: complex | None = None) -> SaddleSolution:
    """Saddle of 4 pi^2 alpha + Phi_{W_p} with the principal-log branch.

    A converged root of the principal-branch gradient automatically
    satisfies the branch condition (the potential derivative equals
    -4 pi^2 exactly, not modulo log jumps).
    """
    if seed is None and p in _WHITEHEAD_CACHE:
        return _WHITEHEAD_CACHE[p]
    if abs(p) < 2:
        raise DomainError("twisted Whitehead link needs |p| >= 2")

    def f(a):
        return FOUR_PI2 + grad_phi_wp(p, a)

    use_cache = seed is None
    if seed is None:
        if abs(p) <= 4:
            seed = 0.85 - 0.17j if p > 0 else 0.15 - 0.17j
        else:
            seed = 0.5 + (1.0 - 0.55j) / p
    a0 = _newton1(f, seed)
    if not (0.0 < a0.real < 1.0):
        raise SaddleError(f"saddle {a0} escaped the strip; wrong branch")
    u = cmath.exp(TWO_PI_I * a0)
    w0 = -cmath.exp(1j * PI * a0)
    value = FOUR_PI2 * a0 + phi_wp(p, a0)
    sol = SaddleSolution(a0, None, u, -1.0 + 0j, w0, value, abs(f(a0)))
    if use_cache:
        _WHITEHEAD_CACHE[p] = sol
    return sol


_DOUBLE_SEEDS = [0.50 - 0.02j, 0.62 - 0.05j, 0.74 - 0.09j, 0.57 - 0.14j,
                 0.86 - 0.17j]

_WHITEHEAD_CACHE: dict = {}
_DOUBLE_CACHE: dict = {}


def saddle_double(p: int, r: int, seeds=None,
                  require_completeness: bool = True) -> SaddleSolution:
    """Saddle of the double twist potential via 2D damped Newton.

    Seeds run over a 5 x 5 lattice of (alpha, beta) pairs; converged roots
    are deduplicated and the geometric one is selected by the completeness
    condition (principal-log holonomy sums equal to +/- 2 pi).
    """
    cache_key = (p, r, require_completeness)
    if seeds is None and cache_key in _DOUBLE_CACHE:
        return _DOUBLE_CACHE[cache_key]

    def g(z):
        da, db = grad_phi_dpr(p, r, z[0], z[1])
        return (da + FOUR_PI2, db + FOUR_PI2)

    if seeds is None:
        seeds = [(a, b) for a in _DOUBLE_SEEDS for b in _DOUBLE_SEEDS]
    roots = []
    best = None
    for s in seeds:
        try:
            z = _newton2(g, s)
        except (SaddleError, DomainError):
            continue
        if not (0.0 < z[0].real < 1.0 and 0.0 < z[1].real < 1.0):
            continue
        if any(abs(z[0] - rr[0]) + abs(z[1] - rr[1]) < 1e-8 for rr in roots):
            continue
        a0, b0 = complex(z[0]), complex(z[1])
        roots.append((a0, b0))
        try:
            comp = completeness_sums(p, r, a0, b0)
        except (DomainError, ZeroDivisionError):
            continue
        ok = all(abs(abs(c) - 2 * PI) < 1e-6 for c in comp)
        plus = all(abs(c - 2 * PI) < 1e-6 for c in comp)
        score = (0 if plus else (1 if ok else 2), abs(a0.imag) + abs(b0.imag))
        if best is None or score < best[0]:
            best = (score, a0, b0, ok)
        if plus:
            break
    if best is None:
        raise SaddleError(f"no saddle found for (p, r) = ({p}, {r})")
    _, a0, b0, ok = best
    if require_completeness and not ok:
        raise SaddleError(
            f"no root satisfied the completeness condition; roots: {roots}")
    u = cmath.exp(TWO_PI_I * a0)
    v = cmath.exp(TWO_PI_I * b0)
    w0, _ = w0_gamma0(u, v)
    value = FOUR_PI2 * (a0 + b0) + phi_dpr(p, r, a0, b0)
    da, db = g((a0, b0))
    sol = SaddleSolution(a0, b0, u, v, w0,
                         value, math.hypot(abs(da), abs(db)))
    if seeds is None:
        _DOUBLE_CACHE[cache_key] = sol
    return sol


def completeness_sums(p: int, r: int, alpha: complex, beta: complex):
    """Principal-log holonomy sums (p log(-u) + log p3, -r log(-v) + log p3').

    At a geometric saddle both are +/- 2 pi i; returned divided by i so the
    caller compares real numbers against +/- 2 pi.
    """
    from .holonomy import dpr_fixed_points

    u = cmath.exp(TWO_PI_I * alpha)
    v = cmath.exp(TWO_PI_I * beta)
    _, sqrtD = _w0_path(np.array([alpha]), np.array([beta]))
    fp = dpr_fixed_points(u, v, complex(sqrtD[0]))
    s1 = p * cmath.log(-u) + cmath.log(fp["p3"])
    s2 = -r * cmath.log(-v) + cmath.log(fp["p3p"])
    return ((s1 / 1j).real, (s2 / 1j).real)


def hessian_det_double(p: int, r: int, alpha: complex, beta: complex,
                       h: float = 1e-6) -> complex:
    """Determinant of the potential Hessian at a point (numeric)."""
    def grad(a, b):
        return grad_phi_dpr(p, r, a, b)

    daa = (grad(alpha + h, beta)[0] - grad(alpha - h, beta)[0]) / (2 * h)
    dab = (grad(alpha, beta + h)[0] - grad(alpha, beta - h)[0]) / (2 * h)
    dbb = (grad(alpha, beta + h)[1] - grad(alpha, beta - h)[1]) / (2 * h)
    return daa * dbb - dab * dab


def shifted_value_whitehead(p: int, alpha) -> np.ndarray:
    """(1/2 pi i)(4 pi^2 alpha + Phi_{W_p}(alpha)) on an array of alpha."""
    alpha = np.asarray(alpha, dtype=complex)
    psi, _, _, _ = psi_b_array(alpha, np.full(alpha.shape, 0.5 + 0j))
    phi = -2 * PI ** 2 * p * (alpha - 0.5) ** 2 + psi
    return (FOUR_PI2 * alpha + phi) / TWO_PI_I


def shifted_value_double(p: int, r: int, alpha, beta) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    psi, _, _, _ = psi_b_array(alpha, beta)
    phi = (-2 * PI ** 2 * p * (alpha - 0.5) ** 2
           + 2 * PI ** 2 * r * (beta - 0.5) ** 2 + psi)
    return (FOUR_PI2 * (alpha + beta) + phi) / TWO_PI_I


def contour_grid(params: PotentialParams, out_path: str,
                 re_range=(0.0, 1.0), second_range=(-0.3, 0.1),
                 imag_shift=(0.0, 0.0), resolution=(120, 120)) -> list[dict]:
    """Sample the shifted potential on a grid and write the CSV report.

    Family W grids scan the complex alpha plane: x = Re alpha over
    ``re_range``, y = Im alpha over ``second_range``.  Family D grids scan
    (Re alpha, Re beta) at fixed imaginary shifts.  Samples within 1e-9 of
    a singular point are flagged ``near_pole``, never fatal.
    """
    nx, ny = resolution
    xs = np.linspace(re_range[0], re_range[1], nx)
    ys = np.linspace(second_range[0], second_range[1], ny)
    rows = []
    for y in ys:
        if params.family == "W":
            alpha = xs + 1j * y
            beta = np.full(alpha.shape, 0.5 + 0j)
        else:
            alpha = xs + 1j * imag_shift[0]
            beta = np.full(xs.shape, y + 1j * imag_shift[1])
        flags = _pole_flags(alpha, beta)
        with np.errstate(all="ignore"):
            if params.family == "W":
                f = shifted_value_whitehead(params.p, alpha)
            else:
                f = shifted_value_double(params.p, params.r, alpha, beta)
        bad = ~np.isfinite(f.real) | ~np.isfinite(f.imag)
        for i in range(nx):
            flag = "near_pole" if (flags[i] or bad[i]) else "ok"
            rows.append({
                "re_alpha": float(alpha[i].real), "im_alpha": float(alpha[i].imag),
                "re_beta": float(beta[i].real), "im_beta": float(beta[i].imag),
                "re_f": float(f[i].real), "im_f": float(f[i].imag),
                "flag": flag,
            })
    if out_path:
        with open(out_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=[
                "re_alpha", "im_alpha", "re_beta", "im_beta",
                "re_f", "im_f", "flag"])
            writer.writeheader()
            writer.writerows(rows)
    return rows


def _pole_flags(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Mark samples whose dilogarithm arguments graze the cut [1, oo)."""
    try:
        w, _ = _w0_path(alpha, beta)
    except DomainError:
        return np.ones(alpha.shape, dtype=bool)
    u = np.exp(TWO_PI_I * alpha)
    v = np.exp(TWO_PI_I * beta)
    flags = np.zeros(alpha.shape, dtype=bool)
    for z in (w, w / u, w / v, u * v / w):
        on_cut = (np.abs(z.imag) < 1e-9) & (z.real >= 1.0 - 1e-9)
        flags |= on_cut
    return flags


class Region(Enum):
    E = "E"
    E_PRIME = "Eprime"
    E_DOUBLE_PRIME = "Edoubleprime"


_REGION_BOXES = {
    Region.E: ((0.45, 0.88, -0.12, 0.01), (0.12, 0.55, -0.12, 0.01)),
    Region.E_PRIME: ((0.45, 0.88, -0.12, 0.01), (0.45, 0.88, -0.12, 0.01)),
    Region.E_DOUBLE_PRIME: ((0.45, 0.70, -0.04, 0.01), (0.12, 0.55, -0.18, 0.01)),
}


@dataclass(frozen=True)
class RegionReport:
    min_grad_on_boundary: float
    interior_critical_points: tuple


def boundary_gradient_check(p: int, r: int,
                            region: Region | str | tuple = Region.E,
                            boundary_samples: int = 400,
                            newton_seeds: int = 25) -> RegionReport:
    """Sample |grad f_{p,r}| on the box boundary and enumerate interior
    critical points by Newton from a seed lattice.

    f_{p,r} is the shifted double twist potential 4 pi^2 (alpha + beta) +
    Phi_{D_{p,r}} (the branch whose critical point carries the +2 pi
    completeness sums and sits inside the stated boxes); its critical
    points are the saddle solutions.
    """
    if isinstance(region, str):
        region = Region(region)
    if isinstance(region, Region):
        abox, bbox = _REGION_BOXES[region]
    else:
        abox, bbox = region

    def rect_points(box, n):
        x0, x1, y0, y1 = box
        per = max(n // 4, 2)
        top = [complex(x, y1) for x in np.linspace(x0, x1, per)]
        bot = [complex(x, y0) for x in np.linspace(x0, x1, per)]
        lef = [complex(x0, y) for y in np.linspace(y0, y1, per)]
        rig = [complex(x1, y) for y in np.linspace(y0, y1, per)]
        return top + bot + lef + rig

    def center(box):
        x0, x1, y0, y1 = box
        return complex((x0 + x1) / 2, (y0 + y1) / 2)

    def grad_f(a, b):
        da, db = grad_phi_dpr(p, r, a, b)
        return (da + FOUR_PI2, db + FOUR_PI2)

    half = boundary_samples // 2
    samples = []
    for a in rect_points(abox, half // 2):
        for b in (center(bbox), complex(bbox[0] + 0.7 * (bbox[1] - bbox[0]),
                                        bbox[2] + 0.3 * (bbox[3] - bbox[2]))):
            samples.append((a, b))
    for b in rect_points(bbox, half // 2):
        for a in (center(abox), complex(abox[0] + 0.7 * (abox[1] - abox[0]),
                                        abox[2] + 0.3 * (abox[3] - abox[2]))):
            samples.append((a, b))
    min_grad = math.inf
    for a, b in samples:
        try:
            da, db = grad_f(a, b)
            min_grad = min(min_grad, math.hypot(abs(da), abs(db)))
        except DomainError:
            continue

    side = int(round(math.sqrt(newton_seeds)))
    a_seeds = np.linspace(abox[0] + 0.08, abox[1] - 0.08, side) + \
        1j * np.linspace(abox[2] + 0.02, abox[3] - 0.005, side)
    b_seeds = np.linspace(bbox[0] + 0.08, bbox[1] - 0.08, side) + \
        1j * np.linspace(bbox[2] + 0.02, bbox[3] - 0.005, side)
    found = []
    in_abox = lambda z: abox[0] <= z.real <= abox[1] and abox[2] <= z.imag <= abox[3]
    in_bbox = lambda z: bbox[0] <= z.real <= bbox[1] and bbox[2] <= z.imag <= bbox[3]
    for a_s in a_seeds:
        for b_s in b_seeds:
            try:
                z = _newton2(lambda zz: grad_f(zz[0], zz[1]), (a_s, b_s))
            except (SaddleError, DomainError):
                continue
            a0, b0 = complex(z[0]), complex(z[1])
            if not (in_abox(a0) and in_bbox(b0)):
                continue
            if any(abs(a0 - fa) + abs(b0 - fb) < 1e-7 for fa, fb in found):
                continue
            found.append((a0, b0))
    return RegionReport(min_grad, tuple(found))
