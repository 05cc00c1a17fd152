import cmath
import math

import pytest

from knotvol.ado import (DegenerateForm, SixJColors, admissible,
                         degenerate_colors, sixj_degenerate, sixj_eps,
                         sixj_general, sixj_half, xi, xi_analytic)
from knotvol.qnum import DomainError, RootOfUnityCtx

H = lambda N: (N - 1) // 2


def test_admissible_third_case():
    ctx = RootOfUnityCtx(5)
    assert admissible(ctx, 2, 2, 4, kind=3)
    assert admissible(ctx, 2, 2, 0, kind=3)        # boundary a+b-c = N-1
    assert not admissible(ctx, 2, 2, -1, kind=3)   # a+b-c = 5 > N-1
    assert admissible(ctx, -2, -2, 0, kind=2)
    assert admissible(ctx, 2, 2, 2, kind=4)        # 6 in [N-1, 2N-2]
    assert not admissible(ctx, 0, 0, 0, kind=4)


def test_sixj_half_base_cases():
    ctx = RootOfUnityCtx(5)
    assert abs(sixj_half(ctx, 0, 0).to_complex() - 1) < 1e-14
    with pytest.raises(DomainError):
        sixj_half(ctx, 5, 1)


def test_sixj_half_term_enumeration():
    # direct three-term sum at N=5, k=l=2
    ctx = RootOfUnityCtx(5)
    direct = sum(xi(ctx, 2, 2, s).to_complex() for s in (2, 3, 4))
    v = sixj_half(ctx, 2, 2).to_complex()
    assert abs(v - direct) < 1e-12 * abs(direct)
    assert v.real > 0 and abs(v.imag) < 1e-12 * v.real


def test_sixj_half_positive_terms():
    # every summand is a positive real
    for N in (3, 7, 11):
        ctx = RootOfUnityCtx(N)
        for k in range(N):
            for l in range(N):
                for s in range(max(k, l), min(k + l, N - 1) + 1):
                    t = xi(ctx, k, l, s)
                    assert abs(t.phase) < 1e-10
                    assert t.logmag > -math.inf


@pytest.mark.parametrize("N", [3, 5, 7, 9, 11])
def test_dual_formula_general_vs_half(N):
    ctx = RootOfUnityCtx(N)
    h = H(N)
    for k in range(N):
        for l in range(N):
            g = sixj_general(ctx, SixJColors(h, h, h, h, l, k)).to_complex()
            s = sixj_half(ctx, k, l).to_complex()
            assert abs(g - s) <= 1e-9 * abs(s)


@pytest.mark.parametrize("N", [3, 5, 7, 9, 11, 21])
def test_fourfold_symmetry(N):
    ctx = RootOfUnityCtx(N)
    for k in range(N):
        for l in range(N):
            v = sixj_half(ctx, k, l).to_complex()
            for kk, ll in ((N - 1 - k, l), (k, N - 1 - l), (N - 1 - k, N - 1 - l)):
                w = sixj_half(ctx, kk, ll).to_complex()
                assert abs(v - w) <= 1e-10 * abs(v)


@pytest.mark.parametrize("N", [5, 9, 21])
def test_xi_symmetry_term_level_bijection(N):
    # each symmetry maps the valid s-range bijectively with equal terms
    ctx = RootOfUnityCtx(N)
    for k in range(N):
        for l in range(N):
            lo, hi = max(k, l), min(k + l, N - 1)
            maps = [
                (N - 1 - k, l, lambda s: N - 1 - s + l),
                (k, N - 1 - l, lambda s: N - 1 - s + k),
                (N - 1 - k, N - 1 - l, lambda s: N - 1 - k - l + s),
            ]
            for kk, ll, smap in maps:
                lo2, hi2 = max(kk, ll), min(kk + ll, N - 1)
                images = sorted(smap(s) for s in range(lo, hi + 1))
                assert images == list(range(lo2, hi2 + 1))
                for s in range(lo, hi + 1):
                    a = xi(ctx, k, l, s).to_complex()
                    b = xi(ctx, kk, ll, smap(s)).to_complex()
                    assert abs(a - b) <= 1e-10 * abs(a)


def test_xi_base_and_analytic_restriction():
    ctx = RootOfUnityCtx(7)
    assert abs(xi(ctx, 0, 0, 0).to_complex() - 1) < 1e-14
    for (k, l, s) in ((1, 2, 3), (2, 2, 2), (3, 1, 3)):
        a = xi(ctx, k, l, s).to_complex()
        b = xi_analytic(ctx, k, l, s).to_complex()
        assert abs(a - b) <= 1e-12 * abs(a)


def test_xi_analytic_perturbed_matches_products():
    ctx = RootOfUnityCtx(7)
    k, l, s = 2, 3, 4
    x, y = k + 0.01j, l - 0.02
    got = xi_analytic(ctx, x, y, s + (x - k) / 2 + (y - l) / 2).to_complex()
    assert got != 0 and cmath.isfinite(got)


def test_sixj_eps_reduces_to_half():
    ctx = RootOfUnityCtx(5)
    for k in range(5):
        for l in range(5):
            a = sixj_eps(ctx, k, l, 0, 0).to_complex()
            b = sixj_half(ctx, k, l).to_complex()
            assert abs(a - b) <= 1e-12 * abs(b)


def test_sixj_eps_derivative_is_finite():
    # difference quotient in eps matches a centered derivative estimate
    ctx = RootOfUnityCtx(5)
    e = 1e-4
    f = lambda t: sixj_eps(ctx, 1, 1, t, 0).to_complex()
    d1 = (f(e) - f(-e)) / (2 * e)
    d2 = (f(2 * e) - f(-2 * e)) / (4 * e)
    assert abs(d1 - d2) <= 1e-6 * max(1.0, abs(d1))


def test_sixj_eps_term_enumeration():
    # independent product evaluation of the printed perturbed sum
    import cmath as cm
    N = 5
    ctx = RootOfUnityCtx(N)
    k, l, eps, delta = 1, 2, 1e-3, 1e-3

    def qp(a, n):
        out = 1 + 0j
        for j in range(n):
            out *= 2j * cm.sin(math.pi * (a - j) / N)
        return out

    pref = qp(N - 1 - 2 * delta, N - 1) / qp(N - 1, N - 1)
    tot = 0j
    for s in range(max(k, l), min(k + l, N - 1) + 1):
        t = qp(s, s) / (qp(s - k, s - k) * qp(s - l, s - l)
                        * qp(k + l - s, k + l - s))
        t *= qp(s + 2 * eps, s) / qp(s - k + 2 * delta, s - k)
        t /= qp(s - l - 2 * delta, s - l) * qp(k + l - s + 2 * eps, k + l - s)
        tot += t
    want = pref * tot
    got = sixj_eps(ctx, k, l, eps, delta).to_complex()
    assert abs(got - want) <= 1e-12 * abs(want)


def test_degenerate_forms_at_zero():
    ctx = RootOfUnityCtx(5)
    v = sixj_degenerate(ctx, DegenerateForm.EDGE_PLUS, l=2, eps=0).to_complex()
    assert abs(v - 1) < 1e-13
    v = sixj_degenerate(ctx, DegenerateForm.L_RATIO, l=3, eps=0, delta=0).to_complex()
    assert abs(v - 1) < 1e-13


@pytest.mark.parametrize("form", [DegenerateForm.EDGE_PLUS,
                                  DegenerateForm.EDGE_MINUS,
                                  DegenerateForm.K_RATIO])
def test_degenerate_vs_general(form):
    # these closed forms agree with the general symbol at finite
    # perturbation (the other two differ beyond leading order; see
    # test_degenerate_discrepancy)
    ctx = RootOfUnityCtx(5)
    v1 = sixj_degenerate(ctx, form, k=1, l=2, eps=0.01, delta=0.003).to_complex()
    cols = degenerate_colors(ctx, form, k=1, l=2, eps=0.01, delta=0.003)
    v2 = sixj_general(ctx, cols).to_complex()
    assert abs(v1 - v2) <= 1e-8 * max(1.0, abs(v1))


def test_degenerate_discrepancy_structure():
    # the cap form differs from the general symbol by exactly the ratio
    # {l+e, l}/{l-e, l}; pinning the discrepancy keeps both readings honest
    import cmath as cm
    N, l, e = 5, 2, 0.01
    ctx = RootOfUnityCtx(N)
    cols = degenerate_colors(ctx, DegenerateForm.CAP, l=l, eps=e)
    gen = sixj_general(ctx, cols).to_complex()
    cap = sixj_degenerate(ctx, DegenerateForm.CAP, l=l, eps=e).to_complex()

    def qp(a, n):
        out = 1 + 0j
        for j in range(n):
            out *= 2j * cm.sin(math.pi * (a - j) / N)
        return out

    ratio = qp(l + e, l) / qp(l - e, l)
    assert abs(gen / cap - ratio) < 1e-10


def test_general_symbol_rejects_bad_colors():
    ctx = RootOfUnityCtx(5)
    h = H(5)
    with pytest.raises(DomainError):
        sixj_general(ctx, SixJColors(h, h, h, h, 1.3, 2))
    with pytest.raises(DomainError):
        sixj_general(ctx, SixJColors(h, h, h, h, 6, 2))
