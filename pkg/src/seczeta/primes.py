"""Primes, the von Mangoldt function, and the zero -> prime direction.

Sums of the form ``sum_{2<=k<=K} Lambda(k) w(k)`` are computed in two tiers.
Every prime power up to ``exact_limit`` (and every higher power ``p^j``,
``j >= 2``) is summed in mpmath at the working precision.  Primes between
``exact_limit`` and ``K`` come from a segmented numpy sieve and are summed
in float64 on a log scale; their contribution carries a relative error of a
few ulps, which is added to the reported error.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
import numpy as np
import sympy
from mpmath import mpf

from .errors import (
    AmbiguousRounding,
    PoleAtOne,
    TruncationDominates,
    UsageError,
)
from .kernel import PrecisionContext, hurwitz_combination, to_mp

EXACT_LIMIT = 10**6
SEGMENT = 1 << 23
FLOAT_REL_ERR = 1e-13

__all__ = [
    "PrimeList",
    "von_mangoldt",
    "primes_up_to",
    "mangoldt_sum",
    "euler_partial",
    "golomb_next_prime_exact",
    "hadamard_zeta",
    "next_prime_from_zeros",
    "feasible_hadamard_s",
]


@dataclass(frozen=True)
class PrimeList:
    primes: tuple

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", ps)
        for a, b in zip(ps, ps[1:]):
            if b <= a:
                raise UsageError("primes must be strictly increasing")
        for p in ps:
            if not sympy.isprime(p):
                raise UsageError(f"{p} is not prime")

    @classmethod
    def first(cls, n: int) -> "PrimeList":
        return cls(tuple(sympy.prime(k) for k in range(1, n + 1)))

    def __len__(self):
        return len(self.primes)

    def is_initial_segment(self) -> bool:
        return all(p == sympy.prime(k + 1) for k, p in enumerate(self.primes))


def von_mangoldt(n: int) -> mpf:
    """log p if n = p^k, else 0."""
    n = int(n)
    if n < 1:
        raise UsageError("von_mangoldt needs n >= 1")
    if n == 1:
        return mpf(0)
    f = sympy.factorint(n)
    if len(f) == 1:
        (p,) = f
        return mpmath.log(p)
    return mpf(0)


@lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    """Primes <= limit by a plain sieve of Eratosthenes."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(limit + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mark[p]:
            mark[p * p:: p] = False
    return np.nonzero(mark)[0].astype(np.int64)


def primes_up_to(n: int) -> list[int]:
    return [int(p) for p in _base_primes(int(n))]


def _segment_primes(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi) given all primes up to sqrt(hi)."""
    mark = np.ones(hi - lo, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        mark[start - lo:: p] = False
    if lo <= 1:
        mark[: 2 - lo] = False
    return np.nonzero(mark)[0].astype(np.int64) + lo


_sum_lock = threading.Lock()


@lru_cache(maxsize=64)
def _mangoldt_sum_cached(K: int, key, mp_logw, np_logw, dps: int, exact_limit: int):
    with mpmath.workdps(dps):
        E = min(K, exact_limit)
        small = _base_primes(max(E, math.isqrt(K)))
        terms = []
        for p in small:
            p = int(p)
            logp = mpmath.log(p)
            k, j = p, 1
            while k <= K:
                if k <= E or j >= 2:
                    L = j * logp
                    terms.append(logp * mpmath.exp(mp_logw(L)))
                k *= p
                j += 1
        exact = mpmath.fsum(terms)
        float_part = mpf(0)
        float_err = mpf(0)
        if K > E:
            base = _base_primes(math.isqrt(K) + 1)
            shifts, sums = [], []
            lo = E + 1
            while lo <= K:
                hi = min(K + 1, lo + SEGMENT)
                ps = _segment_primes(lo, hi, base)
                if len(ps):
                    L = np.log(ps.astype(np.float64))
                    x = np_logw(L) + np.log(L)
                    shift = float(x.max())
                    shifts.append(shift)
                    sums.append(float(np.sum(np.exp(x - shift))))
                lo = hi
            # deterministic reduction in segment order
            parts = [mpmath.exp(sh) * mpf(sm) for sh, sm in zip(shifts, sums)]
            float_part = mpmath.fsum(parts)
            float_err = FLOAT_REL_ERR * abs(float_part)
        return exact + float_part, float_err


def mangoldt_sum(
    K: int,
    mp_logw: Callable,
    np_logw: Callable,
    ctx: PrecisionContext,
    *,
    key=None,
    exact_limit: int = EXACT_LIMIT,
):
    """``(sum_{k=2..K} Lambda(k) exp(logw(log k)), rounding_error)``.

    ``mp_logw`` and ``np_logw`` give ``log w`` as a function of ``log k`` for
    mpmath scalars and float64 arrays respectively.  ``key`` identifies the
    weight for caching (defaults to the callables themselves).
    """
    K = int(K)
    if K < 2:
        return mpf(0), mpf(0)
    key = key if key is not None else (mp_logw, np_logw)
    with _sum_lock:
        return _mangoldt_sum_cached(K, key, mp_logw, np_logw, ctx.working, int(exact_limit))


def euler_partial(n: int, s, ctx: PrecisionContext, primes: Sequence[int] | None = None):
    """Q_n(s) = prod_{k<=n} (1 - p_k^-s)^-1, with Q_0 = 1."""
    if n < 0:
        raise UsageError("n must be non-negative")
    ps = list(primes) if primes is not None else [sympy.prime(k) for k in range(1, n + 1)]
    if len(ps) < n:
        raise UsageError("not enough primes supplied")
    with ctx.workdps():
        s = to_mp(s)
        if s <= 1:
            raise UsageError("euler_partial needs s > 1")
        q = mpf(1)
        for p in ps[:n]:
            q /= 1 - mpmath.power(p, -s)
        return q


def _round_prime(x, after) -> int:
    """Nearest integer to x, required to be within 1/4, prime and > after."""
    n = int(mpmath.nint(x))
    if abs(x - n) > mpf(1) / 4:
        raise AmbiguousRounding(f"value {mpmath.nstr(x, 12)} is not within 0.25 of an integer")
    if not sympy.isprime(n) or n <= after:
        raise AmbiguousRounding(f"rounded value {n} is not the next prime after {after}")
    return n


def _golomb_working(primes: PrimeList, s, ctx: PrecisionContext) -> PrecisionContext:
    # zeta(s) - Q_n(s) ~ p_(n+1)^-s sits below 1 by about s*log10(p_(n+1))
    # digits; carry that many extra so the difference keeps ctx.digits
    nxt = 2 * (primes.primes[-1] if primes.primes else 1) + 1
    extra = int(float(to_mp(s)) * math.log10(nxt)) + 10
    return ctx.raised(extra)


def golomb_next_prime_exact(primes: PrimeList, s, ctx: PrecisionContext) -> int:
    """round([zeta(s) - Q_n(s)]^(-1/s)) with zeta from the kernel."""
    if not isinstance(primes, PrimeList):
        primes = PrimeList(tuple(primes))
    if not primes.is_initial_segment():
        raise UsageError("primes must be the first n primes")
    work = _golomb_working(primes, s, ctx)
    with work.workdps():
        s = to_mp(s)
        z = hurwitz_combination(s, [(1, 1)], work).value
        q = euler_partial(len(primes), s, work, primes.primes)
        diff = z - q
        if diff <= 0:
            raise AmbiguousRounding("zeta(s) - Q_n(s) is not positive at this precision")
        x = diff ** (-1 / s)
    return _round_prime(x, primes.primes[-1] if primes.primes else 1)


# ---------------------------------------------------------------------------
# Hadamard product


def _zero_count(t):
    """Smooth Riemann--von Mangoldt count N0(t) = theta(t)/pi + 1."""
    return mpmath.siegeltheta(t) / mpmath.pi + 1


def _pair_factor(s, t):
    return 1 + s * (s - 1) / (mpf(1) / 4 + t * t)


def _tail_log(s, T):
    """Smooth estimate of sum_{t_k > T} log(1 + s(s-1)/(1/4+t_k^2)).

    Replaces the zero sum by an integral against dN0 and integrates by
    parts: -phi(T) N0(T) - int_T^inf N0(t) phi'(t) dt, which converges
    because phi(t) = O(t^-2) while N0(t) = O(t log t).
    """
    c = s * (s - 1)

    def phi(t):
        return mpmath.log(1 + c / (mpf(1) / 4 + t * t))

    def dphi(t):
        q = mpf(1) / 4 + t * t
        return -2 * t * c / (q * (q + c))

    integral = mpmath.quad(lambda t: _zero_count(t) * dphi(t), [T, 2 * T, 10 * T, mpmath.inf])
    return -phi(T) * _zero_count(T) - integral


@dataclass
class HadamardResult:
    value: mpf
    error_estimate: mpf
    zeros_used: int
    tail_corrected: bool


def hadamard_zeta(s, zeros, ctx: PrecisionContext, *, tail: bool = True) -> HadamardResult:
    """zeta(s) from the zeros in conjugate pairs.

    zeta(s) = pi^(s/2) / (2 (s-1) Gamma(1+s/2)) prod_k (1 + s(s-1)/(1/4+t_k^2)).

    The product over the stored zeros is multiplied by ``exp`` of a smooth
    estimate for the omitted zeros (``tail=True``).  The error estimate is
    ``2 phi(T)`` in the log of the product, ``T`` the last stored ordinate,
    which covers the fluctuation of the true zero count around its smooth
    approximation.  Without the tail correction the estimate is the whole
    omitted log-sum.
    """
    ords = [r.ordinate for r in zeros.records] if hasattr(zeros, "records") else list(zeros)
    with ctx.workdps():
        s = to_mp(s)
        if abs(s - 1) < ctx.eps:
            raise PoleAtOne("hadamard_zeta has a pole at s = 1")
        # 1/Gamma(1+s/2) vanishes at negative even s: the trivial zeros
        half = 1 + s / 2
        if half <= 0 and mpmath.isint(half):
            return HadamardResult(mpf(0), mpf(0), len(ords), tail)
        pref = mpmath.power(mpmath.pi, s / 2) * mpmath.rgamma(half) / (2 * (s - 1))
        logprod = mpmath.fsum(mpmath.log(_pair_factor(s, to_mp(t))) for t in ords)
        if ords:
            T = to_mp(ords[-1])
            omitted = _tail_log(s, T)
            phi_T = mpmath.log(_pair_factor(s, T))
            if tail:
                logprod += omitted
                err_log = 2 * abs(phi_T)
            else:
                err_log = abs(omitted) + 2 * abs(phi_T)
        else:
            err_log = mpf(0) if s * (s - 1) == 0 else mpmath.inf
        value = pref * mpmath.exp(logprod)
        err = abs(value) * (mpmath.expm1(err_log)) if err_log != mpmath.inf else mpmath.inf
        err += abs(value) * ctx.eps
        return HadamardResult(value, err, len(ords), tail)


def next_prime_from_zeros(primes: PrimeList, zeros, s, ctx: PrecisionContext, *,
                          tail: bool = True) -> int:
    """Golomb's recurrence with zeta(s) replaced by the Hadamard product.

    The truncation error of the product is checked against the rounding
    margin: the candidate ``x = D^(-1/s)`` moves by ``|dD| x / (s D)``, which
    must stay under 1/4.
    """
    if not isinstance(primes, PrimeList):
        primes = PrimeList(tuple(primes))
    if not primes.is_initial_segment():
        raise UsageError("primes must be the first n primes")
    work = _golomb_working(primes, s, ctx)
    with work.workdps():
        s = to_mp(s)
        h = hadamard_zeta(s, zeros, work, tail=tail)
        q = euler_partial(len(primes), s, work, primes.primes)
        diff = h.value - q
        if diff <= h.error_estimate:
            raise TruncationDominates(
                f"Hadamard truncation error {mpmath.nstr(h.error_estimate, 3)} swamps "
                f"zeta(s) - Q_n(s) = {mpmath.nstr(diff, 3)} at s={s}"
            )
        x = diff ** (-1 / s)
        shift = x * h.error_estimate / (s * (diff - h.error_estimate))
        if shift >= mpf(1) / 4:
            raise TruncationDominates(
                f"Hadamard truncation moves the candidate by up to {mpmath.nstr(shift, 3)} at s={s}"
            )
    return _round_prime(x, primes.primes[-1] if primes.primes else 1)


def feasible_hadamard_s(primes: PrimeList, zeros, ctx: PrecisionContext,
                        candidates: Sequence = tuple(range(2, 41))):
    """Smallest s in ``candidates`` for which :func:`next_prime_from_zeros` succeeds."""
    last = None
    for s in candidates:
        try:
            return s, next_prime_from_zeros(primes, zeros, s, ctx)
        except (TruncationDominates, AmbiguousRounding) as exc:
            last = exc
    raise TruncationDominates(f"no feasible s among candidates: {last}")
