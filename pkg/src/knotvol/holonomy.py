"""Parabolic SL(2,C) representations for the supported knot families.

Borromean solutions from the primitive trace constraints, the twisted
Whitehead trace-field equation with geometric root selection, the coupled
double-twist system, explicit representation matrices, fixed points,
group-relation residuals and fundamental-domain vertex export.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .jones import KnotSpec
from .qnum import DomainError

PI = math.pi
TWO_PI_I = 2j * PI

INF = complex(math.inf, 0.0)


def mat(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)

I2 = np.eye(2, dtype=complex)


def mat_inv(m: np.ndarray) -> np.ndarray:
    # SL(2) inverse; det is 1 up to round-off for all representation images
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def sup_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def fixed_point(m: np.ndarray) -> complex:
    """Fixed point(s) of a Moebius map; for parabolic m the double point.

    Returns inf (encoded as a complex with infinite real part) when the
    lower-left entry vanishes.
    """
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if abs(c) < 1e-13:
        return INF
    tr = a + d
    disc = tr * tr - 4.0  # det = 1
    if abs(disc) < 1e-10:
        # parabolic: the double point (a-d)/2c, avoiding the sqrt of a
        # rounding-level discriminant
        return (a - d) / (2 * c)
    return ((a - d) + cmath.sqrt(disc)) / (2 * c)


def mobius(m: np.ndarray, z: complex) -> complex:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if z == INF or (isinstance(z, complex) and math.isinf(z.real)):
        return INF if abs(c) < 1e-13 else a / c
    den = c * z + d
    if abs(den) < 1e-14:
        return INF
    return (a * z + b) / den


@dataclass
class HolonomyData:
    knot: KnotSpec
    u: complex
    v: complex
    matrices: dict = field(default_factory=dict)
    fixed_points: dict = field(default_factory=dict)
    relation_residuals: dict = field(default_factory=dict)
    axes: list = field(default_factory=list)


def _conj_solve(x: np.ndarray, y: np.ndarray, extra=None):
    """Solve h x h^{-1} = +/- y (plus optional extra pairs) in SL(2,C).

    The conjugation equations h x = y h are linear in the entries of h;
    since the representation only matters in PSL(2,C) each target is
    allowed an independent sign, and the combination with the smallest
    residual wins.  The kernel vector is rescaled to determinant one with
    the sign fixed so trace(h) has negative real part (eigenvalue -1
    convention for parabolics).
    """
    pairs = [(x, y)] + list(extra or [])

    def solve_for(signs):
        rows = []
        for (xx, yy), s in zip(pairs, signs):
            yy = s * yy
            for i in range(2):
                for j in range(2):
                    row = np.zeros(4, dtype=complex)
                    for k in range(2):
                        row[2 * i + k] += xx[k, j]
                        row[2 * k + j] -= yy[i, k]
                    rows.append(row)
        A = np.array(rows)
        _, sv, vh = np.linalg.svd(A)
        return float(sv[-1]), vh[-1].conj().reshape(2, 2)

    import itertools
    best = None
    for signs in itertools.product((1, -1), repeat=len(pairs)):
        res, h = solve_for(signs)
        if best is None or res < best[0]:
            best = (res, h)
    h = best[1]
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    if abs(det) < 1e-13:
        raise DomainError("conjugating matrix is singular")
    h = h / cmath.sqrt(det)
    if (h[0, 0] + h[1, 1]).real > 0:
        h = -h
    return h


def _conj_solve_parabolic(x: np.ndarray, y: np.ndarray):
    """Solve h x h^{-1} = +/- y with h parabolic (trace -2, det 1).

    A single conjugation pair leaves a two-parameter family h = A + t B
    (B from the centralizer direction); parabolicity trace(h)^2 = 4 det(h)
    pins t up to the centralizer, which does not affect the relation.
    """

    def polar_det(A, B):
        return (A[0, 0] * B[1, 1] + B[0, 0] * A[1, 1]
                - A[0, 1] * B[1, 0] - B[0, 1] * A[1, 0])

    best = None
    for sign in (1, -1):
        yy = sign * y
        rows = []
        for i in range(2):
            for j in range(2):
                row = np.zeros(4, dtype=complex)
                for k in range(2):
                    row[2 * i + k] += x[k, j]
                    row[2 * k + j] -= yy[i, k]
                rows.append(row)
        _, sv, vh = np.linalg.svd(np.array(rows))
        A = vh[-1].conj().reshape(2, 2)
        B = vh[-2].conj().reshape(2, 2)
        tauA, tauB = np.trace(A), np.trace(B)
        detA = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        detB = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
        m = polar_det(A, B)
        # (tauA + t tauB)^2 = 4 (detA + t m + t^2 detB)
        qa = tauB * tauB - 4 * detB
        qb = 2 * tauA * tauB - 4 * m
        qc = tauA * tauA - 4 * detA
        ts = []
        if abs(qa) > 1e-14:
            disc = cmath.sqrt(qb * qb - 4 * qa * qc)
            ts = [(-qb + disc) / (2 * qa), (-qb - disc) / (2 * qa)]
        elif abs(qb) > 1e-14:
            ts = [-qc / qb]
        for t in ts:
            h = A + t * B
            det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
            if abs(det) < 1e-10:
                continue
            h = h / cmath.sqrt(det)
            if (h[0, 0] + h[1, 1]).real > 0:
                h = -h
            res = _pm_residual(h @ x @ mat_inv(h), y)
            if best is None or res < best[0]:
                best = (res, h)
    if best is None:
        raise DomainError("no parabolic conjugator found")
    return best[1]


def borromean_solutions():
    """The two nonabelian parabolic solutions for the Borromean rings.

    Imposes xy = 4, yz = 4 and trace(g1 g2 g3) = -2 on the parametrised
    parabolic matrices; returns [(x, y, z, data), ...] with the fixed
    points and relation residuals filled in.
    """

    def g_matrices(x, y, z):
        g1 = mat(-1, x, 0, -1)
        g2 = mat(-1 + y, y, -y, -1 - y)
        g3 = mat(-1, 0, -z, -1)
        return g1, g2, g3

    # trace(g1 g2 g3) + 2, with y = 4/x and z = x, times x is a polynomial
    def f(x):
        g1, g2, g3 = g_matrices(x, 4 / x, x)
        return (np.trace(g1 @ g2 @ g3) + 2) * x

    xs = np.array([1.0 + 0.3j, 2.0 - 1.0j, -1.5 + 0.5j, 0.5 + 2.0j,
                   -2.0 - 0.7j, 3.0 + 1.1j])
    vals = np.array([f(x) for x in xs])
    coeffs = np.polyfit(xs, vals, 5)
    coeffs = np.trim_zeros(np.where(np.abs(coeffs) < 1e-9, 0, coeffs), "f")
    roots = np.roots(coeffs)
    roots = [complex(r) for r in roots if abs(r) > 1e-8]

    out = []
    for x in sorted(roots, key=lambda z: z.imag):
        y, z = 4 / x, x
        g1, g2, g3 = g_matrices(x, y, z)
        g4 = mat_inv(g1 @ g2 @ g3)
        g12 = g1 @ g2
        g23 = g2 @ g3
        data = HolonomyData(KnotSpec.borromean(), u=x, v=y)
        data.matrices = {"g1": g1, "g2": g2, "g3": g3, "g4": g4,
                         "g12": g12, "g23": g23}
        data.fixed_points = {
            "p1": fixed_point(g1), "p2": fixed_point(g2),
            "p3": fixed_point(g3), "p4": fixed_point(g4),
            "p12": fixed_point(g12), "p23": fixed_point(g23),
        }
        data.relation_residuals = verify_relations(data)
        out.append((x, y, z, data))
    return out


def _borromean_variant_matrices(which: str):
    """Geometric matrices for B, B1, B11 in the common normalisation
    (g23 upper triangular), plus h1 solved from the relation set."""
    x, y, z = 2j, -2j, 2j
    g23 = mat(-1, x, 0, -1)
    g1 = mat(-1 + y, y, -y, -1 - y)
    g2 = mat(-1, 0, -z, -1)
    g3 = mat_inv(g2) @ g23
    g4 = mat_inv(g1 @ g2 @ g3)
    g12 = g1 @ g2
    if which == "borromean":
        # g2 = h1 g1^{-1} h1^{-1},  g3 = h1 g4^{-1} h1^{-1}
        h1 = _conj_solve(mat_inv(g1), g2, extra=[(mat_inv(g4), g3)])
        h2 = _conj_solve_parabolic(g2, mat_inv(g3))
    else:
        # g2 = h1 g4^{-1} h1^{-1},  g3 = h1 g4 g1^{-1} g4^{-1} h1^{-1}
        # (the second word carries g1^{-1}: only that reading is satisfied
        # by the geometric matrices, with the expected parabolic h1)
        h1 = _conj_solve(mat_inv(g4), g2,
                         extra=[(g4 @ mat_inv(g1) @ mat_inv(g4), g3)])
        if which == "b1":
            h2 = _conj_solve_parabolic(g2, mat_inv(g3))
        else:
            h2 = _conj_solve_parabolic(mat_inv(g2) @ g1 @ g2, mat_inv(g3))
    return {"g1": g1, "g2": g2, "g3": g3, "g4": g4,
            "g12": g12, "g23": g23, "h1": h1, "h2": h2}


def borromean_variant(which: str) -> HolonomyData:
    """Holonomy data for B, B1 or B11 in the octahedral normalisation."""
    knot = {"borromean": KnotSpec.borromean(), "b1": KnotSpec.b1(),
            "b11": KnotSpec.b11()}[which]
    mats = _borromean_variant_matrices(which)
    data = HolonomyData(knot, u=2j, v=-2j, matrices=mats)
    data.fixed_points = {
        "r1": fixed_point(mats["g1"]), "r2": fixed_point(mats["g2"]),
        "r3": fixed_point(mats["g3"]), "r4": fixed_point(mats["g4"]),
        "r23": fixed_point(mats["g23"]), "r12": fixed_point(mats["g12"]),
    }
    data.relation_residuals = verify_relations(data)
    return data


def wp_polynomial(p: int) -> np.ndarray:
    """Coefficients (highest first) of the trace-field polynomial in
    t = sqrt(u): (-1)^{p+1} t^{2p}(t-1)^2 - (t+1)^2."""
    n = 2 * p + 2
    coeffs = np.zeros(n + 1, dtype=complex)
    s = (-1) ** (p + 1)
    coeffs[0] += s          # t^{2p+2}
    coeffs[1] += -2 * s     # t^{2p+1}
    coeffs[2] += s          # t^{2p}
    coeffs[n - 2] += -1     # t^2
    coeffs[n - 1] += -2     # t
    coeffs[n] += -1
    if coeffs[0].real < 0:
        coeffs = -coeffs
    return coeffs


def wp_geometric_u(p: int):
    """All holonomy roots of the W_p trace-field equation and the geometric
    one, selected by the angle condition p arg(-u) + arg(p3) = +2 pi.

    Returns (u_geometric, roots) where roots lists (t, u) pairs; the
    selected root is cross-checked against the saddle of the potential.
    """
    if abs(p) < 2:
        raise DomainError("twisted Whitehead link needs |p| >= 2")
    coeffs = wp_polynomial(p)
    ts = np.roots(coeffs)
    # one Newton polish per root
    dcoeffs = np.polyder(coeffs)
    for _ in range(3):
        ts = ts - np.polyval(coeffs, ts) / np.polyval(dcoeffs, ts)
    roots = [(complex(t), complex(t) ** 2) for t in ts]

    best = None
    for t, u in roots:
        if abs(t - 1) < 1e-8 or abs(t + 1) < 1e-8:
            continue
        p3 = -((t - 1) ** 2) / ((t + 1) ** 2)
        angle = p * cmath.phase(-u) + cmath.phase(p3)
        err = abs(angle - 2 * PI)
        if best is None or err < best[0]:
            best = (err, u)
    if best is None or best[0] > 1e-6:
        raise DomainError(f"no root of the W_{p} equation passed the "
                          f"angle condition (best residual {best})")
    u_geom = best[1]

    from .potential import saddle_whitehead
    sol = saddle_whitehead(p)
    if abs(u_geom - sol.u) > 1e-6 * (1 + abs(sol.u)):
        raise DomainError(
            f"geometric root {u_geom} disagrees with the saddle holonomy "
            f"{sol.u}")
    return u_geom, roots


def build_rep_whitehead(u: complex, p: int = 2,
                        sqrt_u: complex | None = None) -> HolonomyData:
    """Representation matrices and fixed points for W_p at holonomy u.

    Both square-root branches are tried against the trace conditions; the
    passing branch is recorded in the data (key "sqrt_u").
    """
    u = complex(u)
    if abs(u) < 1e-12 or abs(u - 1) < 1e-12 or abs(u + 1) < 1e-12:
        raise DomainError(f"degenerate holonomy u = {u}")
    if sqrt_u is None:
        sqrt_u = cmath.sqrt(u)

    def build(su):
        g1 = mat(-2 / (u + 1), u * (u - 1) / (u + 1),
                 -(u - 1) / (u * (u + 1)), -2 * u / (u + 1))
        g2 = mat(-2 * u / (u + 1),
                 u * (su - 1) ** 3 / ((su + 1) * (u + 1)),
                 -(su + 1) ** 3 / (u * (su - 1) * (u + 1)),
                 -2 / (u + 1))
        g3 = mat(-2 * u / (u + 1),
                 -(su - 1) ** 3 / ((su + 1) * (u + 1)),
                 (su + 1) ** 3 / ((su - 1) * (u + 1)),
                 -2 / (u + 1))
        g4 = mat(-2 / (u + 1), -(u - 1) / (u + 1),
                 (u - 1) / (u + 1), -2 * u / (u + 1))
        g23 = mat(u, 0, 0, 1 / u)
        return {"g1": g1, "g2": g2, "g3": g3, "g4": g4, "g23": g23,
                "g12": g1 @ g2}

    chosen = None
    for su in (sqrt_u, -sqrt_u):
        mats = build(su)
        data = HolonomyData(KnotSpec.whitehead(p), u=u, v=-1.0 + 0j,
                            matrices=dict(mats))
        data.matrices["sqrt_u"] = su
        data.fixed_points = {
            "p1": -u,
            "p2": u * (su - 1) ** 2 / (su + 1) ** 2,
            "p3": -((su - 1) ** 2) / (su + 1) ** 2,
            "p4": 1.0 + 0j,
            "p12": (su - 1) * su / (su + 1),
            "p23_0": 0j,
            "p23_1": INF,
        }
        data.axes = [("g23", 0j, INF)]
        try:
            data.relation_residuals = verify_relations(data)
            score = max(data.relation_residuals.values())
        except DomainError:
            score = math.inf
        if chosen is None or score < chosen[0]:
            chosen = (score, data)
    return chosen[1]


def dpr_fixed_points(u: complex, v: complex, sqrtD: complex) -> dict:
    """Closed-form fixed points for the double twist representation.

    ``sqrtD`` selects the discriminant branch; use the continuation-
    consistent value from the potential module for geometric data.
    """
    D_num = (u + 1) ** 2 * (v ** 2 + 1) - 8 * u * v
    W = D_num - (u + 1) * (v - 1) * sqrtD
    Wp = (u ** 2 + 1) * (v + 1) ** 2 - 8 * u * v - (u - 1) * (v + 1) * sqrtD
    return {
        "p1": -u,
        "p2": -u * W / (2 * v * (u - 1) ** 2),
        "p3": W / (2 * v * (u - 1) ** 2),
        "p4": 1.0 + 0j,
        "p12_0": -((u + 1) ** 2 * (v + 1) - 8 * u - (u + 1) * sqrtD) / (4 * (u - 1)),
        "p12_1": -((u + 1) ** 2 * (v + 1) - 8 * u * v + (u + 1) * sqrtD) / (4 * (u - 1) * v),
        "p1p": -v,
        "p2p": 1.0 + 0j,
        "p3p": Wp / (2 * u * (v - 1) ** 2),
        "p4p": -v * Wp / (2 * u * (v - 1) ** 2),
        "p23_0p": -((u + 1) * (v + 1) ** 2 - 8 * v - (v + 1) * sqrtD) / (4 * (v - 1)),
        "p23_1p": -((u + 1) * (v + 1) ** 2 - 8 * u * v + (v + 1) * sqrtD) / (4 * u * (v - 1)),
    }


def _dpr_matrices(u: complex, v: complex, sqrtD: complex):
    D_num = (u + 1) ** 2 * (v ** 2 + 1) - 8 * u * v
    K2 = D_num - (u + 1) * (v - 1) * sqrtD
    K3 = D_num + (u + 1) * (v - 1) * sqrtD
    g1 = mat(-2 / (u + 1), u * (u - 1) / (u + 1),
             -(u - 1) / (u * (u + 1)), -2 * u / (u + 1))
    g2 = mat(-2 * u / (u + 1),
             -u * K2 / (2 * v * (u - 1) * (u + 1)),
             K3 / (2 * u * v * (u - 1) * (u + 1)),
             -2 / (u + 1))
    g3 = mat(-2 * u / (u + 1),
             K2 / (2 * v * (u - 1) * (u + 1)),
             -K3 / (2 * v * (u - 1) * (u + 1)),
             -2 / (u + 1))
    g4 = mat(-2 / (u + 1), -(u - 1) / (u + 1),
             (u - 1) / (u + 1), -2 * u / (u + 1))
    g23 = mat(u, 0, 0, 1 / u)
    # transition matrix to the frame where g12 is diagonal: columns are
    # the g12 eigenvectors through the axis endpoints, with the relative
    # column scale pinned so the conjugated g2 takes its reference form
    # (off-diagonal entries +/- (v-1)/(v+1))
    fp = dpr_fixed_points(u, v, sqrtD)
    E = mat(fp["p12_1"], fp["p12_0"], 1, 1)
    detE = E[0, 0] * E[1, 1] - E[0, 1] * E[1, 0]
    Einv = np.array([[E[1, 1], -E[0, 1]], [-E[1, 0], E[0, 0]]],
                    dtype=complex) / detE
    g2d = Einv @ g2 @ E
    s = g2d[0, 1] * (v + 1) / (v - 1)
    Q = E @ mat(s, 0, 0, 1)
    detQ = Q[0, 0] * Q[1, 1] - Q[0, 1] * Q[1, 0]
    Q = Q / cmath.sqrt(detQ)
    return {"g1": g1, "g2": g2, "g3": g3, "g4": g4, "g23": g23,
            "g12": g1 @ g2, "Q": Q}


def dpr_solve(p: int, r: int, newton_tol: float = 1e-13) -> HolonomyData:
    """Solve the coupled holonomy system (-u)^{-p} = p3, (-v)^r = p3'.

    Seeded from the saddle of the double twist potential; polishes with
    damped Newton on the algebraic system, verifies the completeness sums
    and builds both representations with all fixed points.
    """
    from .potential import (SaddleError, _w0_path, completeness_sums,
                            saddle_double)

    sol = saddle_double(p, r)
    a0, b0 = sol.alpha0, sol.beta0

    def system(z):
        a, b = z
        u = cmath.exp(TWO_PI_I * a)
        v = cmath.exp(TWO_PI_I * b)
        _, sD = _w0_path(np.array([a]), np.array([b]))
        fp = dpr_fixed_points(u, v, complex(sD[0]))
        return ((-u) ** (-p) - fp["p3"], (-v) ** r - fp["p3p"])

    from .potential import _newton2
    z = _newton2(system, (a0, b0), tol=newton_tol)
    a0, b0 = complex(z[0]), complex(z[1])
    u = cmath.exp(TWO_PI_I * a0)
    v = cmath.exp(TWO_PI_I * b0)
    comp = completeness_sums(p, r, a0, b0)
    if not all(abs(abs(c) - 2 * PI) < 1e-8 for c in comp):
        raise SaddleError(
            f"completeness condition failed at (p,r)=({p},{r}): {comp}")

    _, sD = _w0_path(np.array([a0]), np.array([b0]))
    sqrtD = complex(sD[0])
    mats = _dpr_matrices(u, v, sqrtD)
    Q = mats["Q"]
    Qi = mat_inv(Q)
    for name in ("g1", "g2", "g3", "g4", "g12", "g23"):
        mats[name + "p"] = Qi @ mats[name] @ Q

    data = HolonomyData(KnotSpec.double_twist(p, r), u=u, v=v, matrices=mats)
    data.fixed_points = dpr_fixed_points(u, v, sqrtD)
    data.fixed_points["completeness"] = (complex(comp[0]), complex(comp[1]))
    data.axes = [("g23", 0j, INF),
                 ("g12", data.fixed_points["p12_0"], data.fixed_points["p12_1"])]
    data.relation_residuals = verify_relations(data)
    return data


def _int_power(m: np.ndarray, k: int) -> np.ndarray:
    if k >= 0:
        return np.linalg.matrix_power(m, k)
    return np.linalg.matrix_power(mat_inv(m), -k)


def _half_power(g23: np.ndarray, n2: int) -> np.ndarray:
    """g23^{n2/2} for diagonal g23 = diag(u, 1/u), using the diagonal
    square root diag(i sqrt(u), -i/sqrt(u)) for odd n2."""
    u = g23[0, 0]
    half = mat(1j * cmath.sqrt(u), 0, 0, -1j / cmath.sqrt(u))
    whole = mat(u, 0, 0, 1 / u)
    k, odd = divmod(n2, 2)
    out = np.linalg.matrix_power(whole, abs(k)) if k >= 0 else \
        np.linalg.matrix_power(mat_inv(whole), -k)
    if odd:
        out = out @ half
    return out


def _pm_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Residual of a relation in PSL(2): distance to +/- identity match."""
    return min(sup_norm(lhs - rhs), sup_norm(lhs + rhs))


def verify_relations(data: HolonomyData) -> dict:
    """Sup-norm residuals of the defining group relations.

    Half-integer conjugating powers use the diagonal square root of g23
    (or g12 after conjugation); both signs of intermediate square roots are
    accepted because the target group is PSL(2,C).
    """
    m = data.matrices
    res = {}
    fam = data.knot.family.value

    if fam in ("borromean", "b1", "b11") and "h1" in m:
        g1, g2, g3, g4 = m["g1"], m["g2"], m["g3"], m["g4"]
        h1, h2 = m["h1"], m["h2"]
        if fam == "borromean":
            res["rel1"] = _pm_residual(g2, h1 @ mat_inv(g1) @ mat_inv(h1))
            res["rel2"] = _pm_residual(g3, h1 @ mat_inv(g4) @ mat_inv(h1))
            res["rel3"] = _pm_residual(mat_inv(g3), h2 @ g2 @ mat_inv(h2))
        else:
            res["rel1"] = _pm_residual(g2, h1 @ mat_inv(g4) @ mat_inv(h1))
            res["rel2"] = _pm_residual(
                g3, h1 @ g4 @ mat_inv(g1) @ mat_inv(g4) @ mat_inv(h1))
            if fam == "b1":
                res["rel3"] = _pm_residual(mat_inv(g3), h2 @ g2 @ mat_inv(h2))
            else:
                res["rel3"] = _pm_residual(
                    mat_inv(g3), h2 @ mat_inv(g2) @ g1 @ g2 @ mat_inv(h2))
        res["identity"] = sup_norm(m["g1"] @ m["g2"] @ m["g3"] @ m["g4"] - I2)
        return res

    if fam == "borromean":
        g1, g2, g3, g4 = m["g1"], m["g2"], m["g3"], m["g4"]
        h1 = _conj_solve(mat_inv(g1), g2, extra=[(mat_inv(g4), g3)])
        h2 = _conj_solve_parabolic(g2, mat_inv(g3))
        res["rel1"] = _pm_residual(g2, h1 @ mat_inv(g1) @ mat_inv(h1))
        res["rel2"] = _pm_residual(g3, h1 @ mat_inv(g4) @ mat_inv(h1))
        res["rel3"] = _pm_residual(mat_inv(g3), h2 @ g2 @ mat_inv(h2))
        res["identity"] = sup_norm(g1 @ g2 @ g3 @ g4 - I2)
        return res

    if fam == "whitehead":
        g1, g2, g3, g4, g23 = m["g1"], m["g2"], m["g3"], m["g4"], m["g23"]
        p = data.knot.p
        res["identity"] = sup_norm(g1 @ g2 @ g3 @ g4 - I2)
        # each clasp relation is realised by its own parabolic conjugator
        # (no single parabolic element satisfies both; see notes)
        h1 = _conj_solve_parabolic(g1, g4)
        h2 = _conj_solve_parabolic(g2, mat_inv(g3))
        res["rel_h1"] = _pm_residual(g4, h1 @ g1 @ mat_inv(h1))
        res["rel_h2"] = _pm_residual(mat_inv(g3), h2 @ g2 @ mat_inv(h2))
        if p % 2 == 0:
            c = _half_power(g23, p)
            res["rel_twist1"] = _pm_residual(
                mat_inv(g4), c @ g3 @ mat_inv(c))
            res["rel_twist2"] = _pm_residual(
                mat_inv(g1), c @ g2 @ mat_inv(c))
        else:
            c1 = _half_power(g23, p - 1)
            c2 = _half_power(g23, p + 1)
            res["rel_twist1"] = _pm_residual(
                mat_inv(g4), c1 @ g2 @ mat_inv(c1))
            res["rel_twist2"] = _pm_residual(
                mat_inv(g1), c2 @ g3 @ mat_inv(c2))
        return res

    if fam == "double":
        g1, g2, g3, g4 = m["g1"], m["g2"], m["g3"], m["g4"]
        g12, g23 = m["g12"], m["g23"]
        p, r = data.knot.p, data.knot.r
        res["identity"] = sup_norm(g1 @ g2 @ g3 @ g4 - I2)
        res["g12_def"] = sup_norm(g12 - g1 @ g2)
        res["g23_def"] = sup_norm(g23 - g2 @ g3)
        if p % 2 == 0:
            c = _half_power(g23, p)
            res["rel_p1"] = _pm_residual(mat_inv(g1), c @ g2 @ mat_inv(c))
            res["rel_p2"] = _pm_residual(mat_inv(g4), c @ g3 @ mat_inv(c))
        else:
            c1 = _half_power(g23, p + 1)
            c2 = _half_power(g23, p - 1)
            res["rel_p1"] = _pm_residual(mat_inv(g1), c1 @ g3 @ mat_inv(c1))
            res["rel_p2"] = _pm_residual(mat_inv(g4), c2 @ g2 @ mat_inv(c2))
        # the r relations involve only integer powers of g12, so they can
        # be checked directly in the original frame
        if r % 2 == 0:
            c = _int_power(g12, r // 2)
            res["rel_r1"] = _pm_residual(mat_inv(g4), c @ g1 @ mat_inv(c))
            res["rel_r2"] = _pm_residual(mat_inv(g3), c @ g2 @ mat_inv(c))
        else:
            c1 = _int_power(g12, (r + 1) // 2)
            c2 = _int_power(g12, (r - 1) // 2)
            res["rel_r1"] = _pm_residual(mat_inv(g4), c1 @ g2 @ mat_inv(c1))
            res["rel_r2"] = _pm_residual(mat_inv(g3), c2 @ g1 @ mat_inv(c2))
        return res

    raise DomainError(f"no relation set for {data.knot}")  # pragma: no cover


def _encode_point(z: complex):
    if isinstance(z, complex) and (math.isinf(z.real) or math.isinf(z.imag)):
        return None
    z = complex(z)
    return [z.real, z.imag]


def export_domain(data: HolonomyData, path: str | None = None) -> dict:
    """Fundamental-domain vertex dataset as a versioned JSON document.

    Labeled boundary points, axis endpoints and relation residuals;
    infinity is encoded as null coordinates.  Faces are not triangulated.
    """
    doc = {
        "format": "knotvol-domain/1",
        "knot": data.knot.label(),
        "u": _encode_point(data.u),
        "v": _encode_point(data.v),
        "fixed_points": {},
        "octahedra": {},
        "axes": [],
        "relation_residuals": {k: float(v)
                               for k, v in data.relation_residuals.items()},
    }
    for label, z in data.fixed_points.items():
        if label == "completeness":
            continue
        doc["fixed_points"][label] = (
            {"label": "inf", "coords": None} if _encode_point(z) is None
            else {"label": label, "coords": _encode_point(z)})
    fam = data.knot.family.value
    if fam in ("borromean", "b1", "b11"):
        fp = data.fixed_points
        if "p1" in fp:
            o1 = [fp["p1"], fp["p2"], fp["p3"], fp["p4"], fp["p12"], fp["p23"]]
            shift = 1 + 1j
        else:
            o1 = [fp["r1"], fp["r2"], fp["r3"], fp["r4"], fp["r12"], fp["r23"]]
            shift = data.matrices["g23"][0, 1] / (-data.matrices["g23"][1, 1])
            shift = shift / 2
        o2 = [z if _encode_point(z) is None else z + shift for z in o1]
        doc["octahedra"]["O1"] = [_encode_point(z) for z in o1]
        doc["octahedra"]["O2"] = [_encode_point(z) for z in o2]
    for name, a, b in data.axes:
        doc["axes"].append({"element": name,
                            "endpoints": [_encode_point(a), _encode_point(b)]})
    if path:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
    return doc
