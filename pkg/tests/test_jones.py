import cmath
import math

import numpy as np
import pytest

from knotvol.ado import DegenerateForm, sixj_degenerate, sixj_eps
from knotvol.jones import (Family, KnotSpec, jones_b1, jones_b11,
                           jones_borromean, jones_double_twist, jones_value,
                           jones_whitehead, required_digits)
from knotvol.qnum import DomainError, LogComplex, RootOfUnityCtx, logc_sum, qint

from conftest import (naive_borromean, naive_double, naive_whitehead)

PI = math.pi


def test_knotspec_parse_and_constraints():
    assert KnotSpec.parse("borromean") == KnotSpec.borromean()
    assert KnotSpec.parse("twist", p=4) == KnotSpec.double_twist(4, 2)
    with pytest.raises(DomainError):
        KnotSpec.whitehead(1)
    with pytest.raises(DomainError):
        KnotSpec.parse("nonsense")


@pytest.mark.parametrize("N", [3, 5, 9])
def test_borromean_against_naive(N):
    got = jones_borromean(RootOfUnityCtx(N)).to_complex()
    want = naive_borromean(N)
    assert abs(got - want) <= 1e-12 * abs(want)
    assert got.real > 0 and abs(got.imag) <= 1e-10 * got.real


@pytest.mark.parametrize("N", [3, 5, 9])
def test_b1_b11_against_naive(N):
    ctx = RootOfUnityCtx(N)
    got = jones_b1(ctx).to_complex()
    want = naive_borromean(N, k_phase=True, pref_halves=1)
    assert abs(got - want) <= 1e-11 * abs(want)
    got = jones_b11(ctx).to_complex()
    want = naive_borromean(N, k_phase=True, l_phase=True, pref_halves=2)
    assert abs(got - want) <= 1e-11 * abs(want)


def test_borromean_family_positivity_and_bound():
    for N in range(3, 23, 2):
        ctx = RootOfUnityCtx(N)
        jb = jones_borromean(ctx)
        assert abs(jb.value.phase) < 1e-8
        j1 = jones_b1(ctx)
        # unit-modulus phases can only shrink the sum
        assert j1.value.logmag <= jb.value.logmag + 1e-12


@pytest.mark.parametrize("N,p", [(3, 2), (5, 2), (5, 3), (7, 3)])
def test_whitehead_against_naive_fd(N, p):
    got = jones_whitehead(RootOfUnityCtx(N), p).to_complex()
    want = naive_whitehead(N, p)
    assert abs(got - want) <= 1e-7 * abs(want)


@pytest.mark.parametrize("N,p,r", [(3, 2, 2), (5, 6, 2), (5, 4, 4), (5, 5, 3)])
def test_double_against_naive_fd(N, p, r):
    got = jones_double_twist(RootOfUnityCtx(N), p, r).to_complex()
    want = naive_double(N, p, r)
    assert abs(got - want) <= 1e-6 * abs(want)


@pytest.mark.parametrize("N", [3, 5, 7, 9, 21, 51])
def test_figure_eight_classic_sum(N):
    # D(2,2) is the figure-eight knot; its invariant is the classic
    # positive sum over products of 4 sin^2(pi j / N)
    prec = None if N < 30 else 40
    got = jones_double_twist(RootOfUnityCtx(N), 2, 2, precision=prec).to_complex()
    tot, prod = 1.0, 1.0
    for j in range(1, N):
        prod *= 4 * math.sin(PI * j / N) ** 2
        tot += prod
    assert abs(got - tot) <= 1e-10 * tot


def test_whitehead_mirror_conjugation():
    ctx = RootOfUnityCtx(7)
    a = jones_whitehead(ctx, 3).to_complex()
    b = jones_whitehead(ctx, -3).to_complex()
    assert abs(a - b.conjugate()) <= 1e-10 * abs(a)


def test_double_mirror_conjugation():
    ctx = RootOfUnityCtx(5)
    a = jones_double_twist(ctx, 6, 2).to_complex()
    b = jones_double_twist(ctx, -6, -2).to_complex()
    assert abs(a - b.conjugate()) <= 1e-10 * abs(a)
    # swapping the twist regions also conjugates, so (-r, -p) returns the
    # original value
    c = jones_double_twist(ctx, -2, -6).to_complex()
    assert abs(a - c) <= 1e-10 * abs(a)


def test_reparametrization_invariance():
    # shifting the inner summation origin must not change the value: the
    # engine's ragged ranges follow (k, l), so compare two equivalent
    # dispatch routes and thread counts
    ctx = RootOfUnityCtx(9)
    a = jones_whitehead(ctx, 2, threads=1).value
    b = jones_whitehead(ctx, 2, threads=4).value
    assert a.logmag == b.logmag and a.phase == b.phase


def test_dominant_term_location():
    # the largest kernel term sits at k = l = (N-1)/2, s = floor(3(N-1)/4)
    from knotvol.jones import _ragged_sl, _log_xi
    N = 21
    ctx = RootOfUnityCtx(N)
    best = (-np.inf, None)
    for k in range(N):
        l_rep, s_rep = _ragged_sl(ctx, k)
        logs = _log_xi(ctx, k, l_rep, s_rep)
        i = int(np.argmax(logs))
        if logs[i] > best[0]:
            best = (logs[i], (k, int(l_rep[i]), int(s_rep[i])))
    h = (N - 1) // 2
    assert best[1] == (h, h, (3 * (N - 1)) // 4)


def test_summand_symmetry_k_reflection():
    # the k <-> N-1-k reflection maps the Borromean summand set to itself
    from knotvol.jones import _ragged_sl, _log_xi
    ctx = RootOfUnityCtx(11)
    N = ctx.N
    for k in (0, 2, 5):
        l1, s1 = _ragged_sl(ctx, k)
        x1 = sorted(np.round(_log_xi(ctx, k, l1, s1), 9))
        l2, s2 = _ragged_sl(ctx, N - 1 - k)
        x2 = sorted(np.round(_log_xi(ctx, N - 1 - k, l2, s2), 9))
        assert x1 == x2


def _eps_oracle_whitehead(N, p, eps):
    """Pre-derivative expression evaluated at finite eps."""
    ctx = RootOfUnityCtx(N)
    h = (N - 1) // 2
    q = cmath.exp(1j * PI / N)
    pref = (qp_cap := sixj_degenerate(ctx, DegenerateForm.CAP,
                                      eps=eps).to_complex())
    tot = []
    for k in range(N):
        for l in range(N):
            t = sixj_eps(ctx, k, l, eps / 2, -eps / 2)
            w = (q ** (p * ((k + eps - h) ** 2 - eps ** 2))
                 * qint(ctx, 2 * k + 2 * eps + 1))
            tot.append(t.scaled(w))
    total = logc_sum(tot).to_complex()
    return (N * q ** (p * (N - 1) ** 2 / 4) * pref * total
            / qint(ctx, 2 * N * eps))


def _eps_oracle_double(N, p, r, eps, delta):
    ctx = RootOfUnityCtx(N)
    h = (N - 1) // 2
    q = cmath.exp(1j * PI / N)
    terms = []
    for k in range(N):
        kr = sixj_degenerate(ctx, DegenerateForm.K_RATIO, k=k,
                             eps=eps, delta=delta)
        for l in range(N):
            lr = sixj_degenerate(ctx, DegenerateForm.L_RATIO, l=l,
                                 eps=eps, delta=delta)
            core = sixj_eps(ctx, k, l, (eps + delta) / 2, (delta - eps) / 2)
            w = (q ** (p * (k + eps - h) ** 2 - r * (l + delta - h) ** 2)
                 * qint(ctx, 2 * k + 2 * eps + 1)
                 * qint(ctx, 2 * l + 2 * delta + 1))
            terms.append((kr * lr * core).scaled(w))
    total = logc_sum(terms).to_complex()
    return (N ** 2 * q ** ((p - r) * ((N - 1) ** 2 / 4)
                           - (p - r) * (eps ** 2 + delta ** 2) / 2)
            * total / (qint(ctx, 2 * N * eps) * qint(ctx, 2 * N * delta)))


@pytest.mark.parametrize("N,p", [(5, 2), (5, 3), (7, 2)])
def test_whitehead_eps_limit_oracle(N, p):
    got = jones_whitehead(RootOfUnityCtx(N), p).to_complex()
    j1 = _eps_oracle_whitehead(N, p, 1e-5)
    j2 = _eps_oracle_whitehead(N, p, 1e-6)
    extrapolated = (10 * j2 - j1) / 9
    assert abs(got - extrapolated) <= 1e-5 * abs(got)


def test_double_eps_limit_oracle_n7():
    N = 7
    got = jones_double_twist(RootOfUnityCtx(N), 5, 3).to_complex()
    j1 = _eps_oracle_double(N, 5, 3, 1e-4, 1e-4)
    j2 = _eps_oracle_double(N, 5, 3, 5e-5, 5e-5)
    assert abs(got - (2 * j2 - j1)) <= 1e-4 * abs(got)


@pytest.mark.parametrize("p,r", [(6, 2), (4, 4), (5, 3)])
def test_double_eps_limit_oracle(p, r):
    N = 5
    got = jones_double_twist(RootOfUnityCtx(N), p, r).to_complex()
    j1 = _eps_oracle_double(N, p, r, 1e-4, 1e-4)
    j2 = _eps_oracle_double(N, p, r, 5e-5, 5e-5)
    extrapolated = 2 * j2 - j1
    assert abs(got - extrapolated) <= 1e-4 * abs(got)


def test_high_precision_path_consistency():
    # the scalar high-precision path reproduces the vector double path
    ctx = RootOfUnityCtx(15)
    for fn, args in ((jones_whitehead, (2,)), (jones_double_twist, (6, 2))):
        a = fn(ctx, *args).to_complex()
        b = fn(ctx, *args, precision=35).to_complex()
        assert abs(a - b) <= 1e-11 * abs(a)


def test_required_digits_monotone():
    # doubles suffice at small N with a realistic signal estimate
    assert required_digits(RootOfUnityCtx(15), 15 * 3.66 / (2 * PI)) is None
    d1 = required_digits(RootOfUnityCtx(101), 101 * 2.03 / (2 * PI))
    d2 = required_digits(RootOfUnityCtx(201), 201 * 2.03 / (2 * PI))
    assert d1 and d2 and d2 > d1


def test_dispatcher_routes():
    ctx = RootOfUnityCtx(5)
    for knot in (KnotSpec.borromean(), KnotSpec.b1(), KnotSpec.b11(),
                 KnotSpec.whitehead(2), KnotSpec.double_twist(6, 2)):
        jv = jones_value(ctx, knot)
        assert jv.N == 5 and jv.knot == knot
        assert np.isfinite(jv.value.logmag)
