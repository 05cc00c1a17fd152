"""Arithmetic at the 2N-th root of unity q = exp(i*pi/N).

Quantum integers {a} = q^a - q^{-a}, their factorials, falling products
(Pochhammer-style) and binomials.  Everything that can grow or shrink over
hundreds of orders of magnitude is carried as a :class:`LogComplex`
(log-magnitude plus phase), so ratios such as {s}!^2 / ({s-k}!^2 ...) stay
representable up to N of several hundred in ordinary doubles.

All functions here are pure; a :class:`RootOfUnityCtx` carries N together
with precomputed prefix tables used by the bulk state-sum evaluators.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Argument outside the domain of a quantum-arithmetic operation."""


def _wrap_phase(phi: float) -> float:
    """Reduce a phase to (-pi, pi]."""
    phi = math.fmod(phi, TWO_PI)
    if phi > math.pi:
        phi -= TWO_PI
    elif phi <= -math.pi:
        phi += TWO_PI
    return phi


@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as (log of magnitude, phase in radians).

    ``logmag = -inf`` encodes an exact zero, which absorbs under
    multiplication.  Phases are kept reduced to (-pi, pi].
    """

    logmag: float
    phase: float

    @staticmethod
    def zero() -> "LogComplex":
        return LogComplex(float("-inf"), 0.0)

    @staticmethod
    def one() -> "LogComplex":
        return LogComplex(0.0, 0.0)

    @staticmethod
    def from_complex(z: complex) -> "LogComplex":
        z = complex(z)
        if z == 0:
            return LogComplex.zero()
        return LogComplex(math.log(abs(z)), cmath.phase(z))

    def to_complex(self) -> complex:
        if self.logmag == float("-inf"):
            return 0j
        return cmath.exp(complex(self.logmag, self.phase))

    @property
    def is_zero(self) -> bool:
        return self.logmag == float("-inf")

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.logmag + other.logmag,
                          _wrap_phase(self.phase + other.phase))

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by LogComplex zero")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(self.logmag - other.logmag,
                          _wrap_phase(self.phase - other.phase))

    def __pow__(self, n: int) -> "LogComplex":
        if self.is_zero:
            if n == 0:
                return LogComplex.one()
            if n < 0:
                raise ZeroDivisionError("negative power of LogComplex zero")
            return LogComplex.zero()
        return LogComplex(n * self.logmag, _wrap_phase(n * self.phase))

    def scaled(self, z: complex) -> "LogComplex":
        """Multiply by an ordinary complex number."""
        return self * LogComplex.from_complex(z)


def logc_sum(items) -> LogComplex:
    """Sum LogComplex values with max-shifted accumulation.

    The largest log-magnitude is factored out so the residual sum is an
    ordinary complex accumulation of O(1) terms.  Summation order follows
    the input order.
    """
    items = list(items)
    if not items:
        return LogComplex.zero()
    shift = max(x.logmag for x in items)
    if shift == float("-inf"):
        return LogComplex.zero()
    acc = 0j
    for x in items:
        if not x.is_zero:
            acc += cmath.exp(complex(x.logmag - shift, x.phase))
    if acc == 0:
        return LogComplex.zero()
    return LogComplex(shift + math.log(abs(acc)), cmath.phase(acc))


def logc_sum_arrays(logmags: np.ndarray, phases: np.ndarray) -> LogComplex:
    """Vector form of :func:`logc_sum` for parallel-friendly bulk sums."""
    if logmags.size == 0:
        return LogComplex.zero()
    shift = float(np.max(logmags))
    if shift == float("-inf"):
        return LogComplex.zero()
    acc = complex(np.sum(np.exp(logmags - shift + 1j * phases)))
    if acc == 0:
        return LogComplex.zero()
    return LogComplex(shift + math.log(abs(acc)), cmath.phase(acc))


@dataclass(frozen=True)
class RootOfUnityCtx:
    """The integer N (odd, >= 3) and tables derived from q = exp(i*pi/N).

    Prefix tables (cached on first access through properties) give
    log(2 sin(pi a / N)), cot(pi a / N) and 1/sin^2(pi a / N) accumulated
    over a = 1..m; they back the vectorised state-sum engines.
    """

    N: int
    pi_over_n: float = field(init=False, repr=False)
    _tables: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise DomainError(f"N must be an odd integer >= 3, got {self.N}")
        object.__setattr__(self, "pi_over_n", math.pi / self.N)

    def _table(self, name: str) -> np.ndarray:
        tab = self._tables.get(name)
        if tab is None:
            a = np.arange(1, self.N) * self.pi_over_n
            if name == "log2sin":
                vals = np.log(2.0 * np.sin(a))
            elif name == "cot":
                vals = 1.0 / np.tan(a)
            elif name == "csc2":
                vals = 1.0 / np.sin(a) ** 2
            else:  # pragma: no cover
                raise KeyError(name)
            tab = np.concatenate(([0.0], np.cumsum(vals)))
            self._tables[name] = tab
        return tab

    @property
    def log2sin_prefix(self) -> np.ndarray:
        """log2sin_prefix[m] = sum_{a=1}^{m} log(2 sin(pi a/N)), m in 0..N-1."""
        return self._table("log2sin")

    @property
    def cot_prefix(self) -> np.ndarray:
        return self._table("cot")

    @property
    def csc2_prefix(self) -> np.ndarray:
        return self._table("csc2")


def qint(ctx: RootOfUnityCtx, a: complex) -> complex:
    """{a} = q^a - q^{-a} = 2i sin(pi a / N), holomorphic in a.

    Exact zeros are produced only by integer cancellation: an integer ``a``
    that is a multiple of N yields exactly 0j rather than a rounding-level
    residue.
    """
    a = complex(a)
    if a.imag == 0.0 and float(a.real).is_integer() and int(round(a.real)) % ctx.N == 0:
        return 0j
    return 2j * cmath.sin(ctx.pi_over_n * a)


def qfact(ctx: RootOfUnityCtx, k: int) -> LogComplex:
    """{k}! = {k}{k-1}...{1}, with {0}! = 1.  Requires 0 <= k <= N-1."""
    if not isinstance(k, (int, np.integer)) or k < 0 or k > ctx.N - 1:
        raise DomainError(f"qfact needs integer k in [0, N-1], got {k!r}")
    # every factor is 2i sin(pi a/N) with sin > 0, so phase is k * pi/2
    return LogComplex(float(ctx.log2sin_prefix[k]), _wrap_phase(k * math.pi / 2))


def qpoch(ctx: RootOfUnityCtx, a: complex, k: int) -> LogComplex:
    """Falling product {a, k} = prod_{j=0}^{k-1} {a - j}; {a, 0} = 1."""
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"qpoch needs integer k >= 0, got {k!r}")
    out = LogComplex.one()
    for j in range(int(k)):
        out = out * LogComplex.from_complex(qint(ctx, a - j))
        if out.is_zero:
            break
    return out


def qbinom(ctx: RootOfUnityCtx, a: complex, b: complex) -> LogComplex:
    """The bracket binomial: prod_{j=0}^{a-b-1} {a-j} / {a-b-j}.

    ``a - b`` must lie within 1e-6 of an integer in [0, N-1]; the product
    length is that integer, so holomorphic perturbations of the entries are
    allowed as long as their difference stays integral.
    """
    d = complex(a) - complex(b)
    m = int(round(d.real))
    if abs(d - m) > 1e-6 or m < 0 or m > ctx.N - 1:
        raise DomainError(
            f"qbinom needs a-b within 1e-6 of an integer in [0, N-1], got {d}")
    return qpoch(ctx, a, m) / qpoch(ctx, d, m)


def log_deriv_qint(ctx: RootOfUnityCtx, a: complex) -> complex:
    """d/da log {a} = (pi/N) cot(pi a / N).

    Poles sit at integer multiples of N; hitting one (within 1e-12 of the
    sine zero) is a domain error.
    """
    a = complex(a)
    s = cmath.sin(ctx.pi_over_n * a)
    if abs(s) < 1e-12:
        raise DomainError(f"log_deriv_qint pole at a = {a}")
    return ctx.pi_over_n * cmath.cos(ctx.pi_over_n * a) / s


def t_twist(ctx: RootOfUnityCtx, a: complex) -> complex:
    """Twist exponent t_a = a (a + 1 - N)."""
    a = complex(a)
    return a * (a + 1 - ctx.N)
