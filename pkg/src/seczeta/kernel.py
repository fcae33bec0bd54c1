"""Arbitrary-precision special functions used by every other module.

Scalars are ``mpmath.mpf`` / ``mpmath.mpc``.  Every public function takes a
:class:`PrecisionContext` and evaluates inside ``mpmath.workdps`` at
``ctx.digits + ctx.guard`` decimal digits, so results do not depend on the
caller's global mpmath precision.

The Hurwitz zeta function is computed by Euler--Maclaurin summation

    zeta(s, a) = sum_{n<N} (n+a)^-s + (N+a)^(1-s)/(s-1) + (N+a)^-s/2
                 + sum_{k=1}^{K} B_2k/(2k)! (s)_(2k-1) (N+a)^(-s-2k+1) + R_K

with the remainder bounded by the first omitted term times
``|s+2K+1| / (Re s + 2K + 1)``.  ``zeta(s)`` is ``zeta(s, 1)`` through the
same code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import mpmath
from mpmath import mpc, mpf

from .errors import (
    InvalidShift,
    NonConvergentQuadrature,
    PoleAtNonPositiveInteger,
    PoleAtOne,
    PrecisionExhausted,
    UsageError,
)

MAX_IMAG = 10_000
"""Largest supported ``|Im s|`` for the zeta family."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits plus internal guard digits."""

    digits: int = 50
    guard: int = 10

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 30:
            raise UsageError(f"digits must be an integer >= 30, got {self.digits!r}")
        if int(self.guard) != self.guard or self.guard < 10:
            raise UsageError(f"guard must be an integer >= 10, got {self.guard!r}")

    @property
    def working(self) -> int:
        return self.digits + self.guard

    def workdps(self, extra: int = 0):
        return mpmath.workdps(self.working + extra)

    @property
    def eps(self) -> mpf:
        return mpf(10) ** (-self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(max(30, int(digits)), self.guard)

    def raised(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits + int(extra), self.guard)


@dataclass
class SeriesResult:
    value: mpf | mpc
    error: mpf
    terms: int = 0
    corrections: int = 0
    extra: dict = field(default_factory=dict)


def to_mp(x):
    """Convert ints, strings, Fractions and floats to mpmath numbers exactly."""
    if isinstance(x, (mpf, mpc)):
        return x
    if isinstance(x, complex):
        return mpc(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, str) and "/" in x:
        num, den = x.split("/")
        return mpf(num) / mpf(den)
    return mpmath.mpmathify(x)


def _real_if_exact(z):
    if isinstance(z, mpc) and z.imag == 0:
        return z.real
    return z


@lru_cache(maxsize=4096)
def _bernoulli_ratio(k: int, prec: int) -> mpf:
    """B_{2k} / (2k)! at binary precision ``prec``."""
    with mpmath.workprec(prec):
        return mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)


@lru_cache(maxsize=64)
def _log_table(a: mpf, n: int, prec: int) -> tuple:
    with mpmath.workprec(prec):
        return tuple(mpmath.log(j + a) for j in range(n))


def _initial_cutoff(s, digits: int) -> int:
    return int(0.5 * digits + abs(s) / math.pi) + 8


@lru_cache(maxsize=16)
def _smallest_factors(N: int) -> tuple:
    spf = list(range(N + 1))
    for p in range(2, int(N ** 0.5) + 1):
        if spf[p] == p:
            for q in range(p * p, N + 1, p):
                if spf[q] == q:
                    spf[q] = p
    return tuple(spf)


def _multiplicative_head(neg_s, N: int, prec: int):
    """sum_{n=1..N} n^-s with exponentials only at primes."""
    spf = _smallest_factors(N)
    logs = _log_table(mpf(1), N, prec)
    pw = [mpf(0), mpf(1)] + [None] * (N - 1)
    for n in range(2, N + 1):
        p = spf[n]
        pw[n] = mpmath.exp(neg_s * logs[n - 1]) if p == n else pw[p] * pw[n // p]
    return mpmath.fsum(pw[1:])


def _em_single(s, a, N: int, tol: mpf, prec: int):
    """Euler--Maclaurin pieces for one shift.

    Returns ``(value, err, pole_part, diverged, k)``.  ``pole_part`` is the
    ``(N+a)^(1-s)/(s-1)`` term, returned separately so a zero-sum combination
    can cancel it analytically at ``s == 1``.
    """
    neg_s = -s
    if a == 1:
        head = _multiplicative_head(neg_s, N, prec)
    else:
        logs = _log_table(a, N, prec)
        head = mpmath.fsum(mpmath.exp(neg_s * L) for L in logs)
    x = N + a
    logx = mpmath.log(x)
    xms = mpmath.exp(neg_s * logx)
    if s == 1:
        pole = -logx
    else:
        pole = x * xms / (s - 1)
    total = head + xms / 2
    poch = s
    xp = xms / x
    inv_x2 = 1 / (x * x)
    prev = None
    sigma = mpmath.re(s)
    k = 1
    scale = abs(total) + abs(pole)
    while True:
        term = _bernoulli_ratio(k, prec) * poch * xp
        mag = abs(term)
        if prev is not None and mag > prev and k > abs(s) + 2:
            return total, mag, pole, True, k
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        xp *= inv_x2
        if mag <= tol * scale:
            nxt = abs(_bernoulli_ratio(k + 1, prec) * poch * xp)
            denom = sigma + 2 * k + 1
            if denom > 0:
                bound = nxt * abs(s + 2 * k + 1) / denom
            else:
                bound = nxt * abs(s + 2 * k + 1)
            total += term
            return total, bound + mag, pole, False, k
        total += term
        prev = mag
        k += 1
        if k > 40 * (prec // 3 + 10):
            return total, mag, pole, True, k


def hurwitz_combination(s, shifts: Sequence[tuple], ctx: PrecisionContext) -> SeriesResult:
    """``sum_j c_j * zeta(s, a_j)`` for ``shifts = [(c_j, a_j), ...]``.

    When the coefficients sum to zero the poles at ``s = 1`` cancel and the
    combination is evaluated there directly.
    """
    with ctx.workdps():
        s = _real_if_exact(to_mp(s))
        shifts = [(to_mp(c), to_mp(a)) for c, a in shifts]
        for _, a in shifts:
            if a <= 0:
                raise InvalidShift(f"Hurwitz shift must be positive, got {a}")
        if abs(mpmath.im(s)) > MAX_IMAG:
            raise UsageError(f"|Im s| exceeds supported maximum {MAX_IMAG}")
        near_one = abs(s - 1) < ctx.eps
        if near_one:
            if sum(c for c, _ in shifts) != 0:
                raise PoleAtOne("zeta(s, a) has a pole at s = 1")
            s = mpf(1)
        prec = mpmath.mp.prec
        tol = mpf(2) ** (-prec)
        N = _initial_cutoff(s, ctx.working)
        for _attempt in range(8):
            value = mpf(0)
            err = mpf(0)
            pole_sum = mpf(0)
            scale = mpf(0)
            diverged = False
            kmax = 0
            for c, a in shifts:
                v, e, pole, div, k = _em_single(s, a, N, tol, prec)
                if div:
                    diverged = True
                    break
                value += c * v
                pole_sum += c * pole
                err += abs(c) * e
                scale += abs(c) * (abs(v) + abs(pole))
                kmax = max(kmax, k)
            if not diverged:
                break
            N *= 2
        else:
            raise PrecisionExhausted(f"Euler-Maclaurin failed to converge at s={s}")
        value = _real_if_exact(value + pole_sum)
        err = err + scale * N * mpf(2) ** (-prec)
        # relative to the size of the summands, so values at a zero are fine
        limit = ctx.eps * max(abs(value), scale)
        if err > limit:
            raise PrecisionExhausted(
                f"Euler-Maclaurin error estimate {mpmath.nstr(err, 3)} exceeds 1e-{ctx.digits}"
            )
        return SeriesResult(value, err, terms=N, corrections=kmax, extra={"scale": scale})


def hurwitz_zeta(s, a, ctx: PrecisionContext):
    """Hurwitz zeta ``zeta(s, a)`` for ``a > 0``, ``s != 1``."""
    return hurwitz_combination(s, [(1, a)], ctx).value


def zeta(s, ctx: PrecisionContext):
    """Riemann zeta, analytically continued, via the ``a = 1`` Hurwitz sum."""
    return hurwitz_combination(s, [(1, 1)], ctx).value


def dirichlet_beta(s, ctx: PrecisionContext):
    """Dirichlet beta ``4^-s [zeta(s,1/4) - zeta(s,3/4)]``; finite at s = 1."""
    with ctx.workdps():
        s = _real_if_exact(to_mp(s))
        diff = hurwitz_combination(s, [(1, mpf(1) / 4), (-1, mpf(3) / 4)], ctx).value
        return _real_if_exact(mpmath.power(4, -s) * diff)


def gamma(s, ctx: PrecisionContext):
    with ctx.workdps():
        s = _real_if_exact(to_mp(s))
        if mpmath.im(s) == 0 and mpmath.re(s) <= 0 and mpmath.isint(mpmath.re(s)):
            raise PoleAtNonPositiveInteger(f"Gamma has a pole at {s}")
        return mpmath.gamma(s)


def integrate_semiline(
    f: Callable,
    ctx: PrecisionContext,
    *,
    limit_at_zero=None,
    breakpoints: Iterable | None = None,
    error: bool = False,
):
    """Integral of a real integrand over ``(0, inf)`` by tanh-sinh quadrature.

    ``limit_at_zero`` is returned for arguments below ``10**-(working/2)`` so a
    removable singularity at the origin never has to be evaluated as 0/0.
    """
    with ctx.workdps():
        cutoff = mpf(10) ** (-(ctx.working // 2))
        if limit_at_zero is not None:
            lim = to_mp(limit_at_zero)

            def g(u):
                return lim if u < cutoff else f(u)
        else:
            g = f
        points = [mpf(0)]
        points += [to_mp(b) for b in (breakpoints or (1, 4, 16, 64))]
        points.append(mpmath.inf)
        target = ctx.eps
        for degree in (None, 10, 14):
            kwargs = {} if degree is None else {"maxdegree": degree}
            value, err = mpmath.quad(g, points, error=True, **kwargs)
            if err <= target * max(1, abs(value)):
                break
        else:
            raise NonConvergentQuadrature(
                f"quadrature error {mpmath.nstr(err, 3)} above 1e-{ctx.digits}"
            )
        return (value, err) if error else value


def pi(ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return +mpmath.pi


def euler_gamma(ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return +mpmath.euler
