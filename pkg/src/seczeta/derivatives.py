"""High-order logarithmic derivatives by Cauchy contour quadrature.

For an analytic ``f`` with no zeros near the expansion point ``c``, the Taylor
coefficients of ``g = log f`` are

    g_n = 1/(2 pi i) \\oint g(z) (z - c)^(-n-1) dz ,

and ``g^(n)(c) = n! g_n``.  On a circle of radius ``r`` the trapezoidal rule
with ``N`` equispaced nodes converges geometrically, with aliasing error of
order ``(r/R)^N`` where ``R`` is the distance to the nearest singularity of
``g``.  One set of samples serves every order, and the samples for ``N/2``
nodes are a subset of those for ``N``, so the refinement check is free.

The pole of zeta at s = 1 is divided out before differentiating: the
library works with ``log((s-1) zeta(s))`` and adds the exact contribution
of ``-log(s-1)`` afterwards.  This moves the nearest singularity from the
pole (distance 1/2 from the point 1/2) to the trivial zero at -2.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mpc, mpf

from .errors import (
    BranchWindingDetected,
    ImaginaryResidueTooLarge,
    NonConvergentQuadrature,
    PrecisionExhausted,
    TableTooShort,
    UsageError,
)
from .kernel import (
    PrecisionContext,
    dirichlet_beta,
    hurwitz_combination,
    to_mp,
    zeta,
)

MAX_NODES = 1 << 15

__all__ = [
    "ContourSpec",
    "StieltjesTable",
    "log_deriv_at",
    "log_taylor_coefficient",
    "deflated_zeta_coefficient",
    "beta_coefficient",
    "log_zeta_deriv_half",
    "log_zeta_deriv_zero",
    "log_beta_deriv_half",
    "stieltjes_constants",
    "z2_from_cumulants",
]


@dataclass(frozen=True)
class ContourSpec:
    """Integration contour around an expansion point.

    ``extent`` is the radius of a circle or the half-side of a square.
    ``nodes`` is the initial node count (total for a circle, per side for a
    square); it is doubled until the refinement check passes.
    """

    shape: str = "circle"
    extent: object = mpf(1) / 4
    nodes: int | None = None

    def __post_init__(self):
        if self.shape not in ("circle", "square"):
            raise UsageError(f"unknown contour shape {self.shape!r}")
        if to_mp(self.extent) <= 0:
            raise UsageError("contour extent must be positive")
        if self.nodes is not None and self.nodes < 4:
            raise UsageError("contour needs at least 4 nodes")


def _wrap(x):
    """Reduce an angle difference to (-pi, pi]."""
    two_pi = 2 * mpmath.pi
    x = x - two_pi * mpmath.floor(x / two_pi)
    return x - two_pi if x > mpmath.pi else x


def _unwrapped_logs(values):
    """Continuous-branch logs along an ordered list of non-zero samples.

    Returns the logs and the total accumulated argument.
    """
    out = []
    prev_arg = None
    acc = mpf(0)
    for v in values:
        if v == 0:
            raise BranchWindingDetected("function vanishes on the contour")
        arg = mpmath.arg(v)
        if prev_arg is None:
            acc = arg
        else:
            acc += _wrap(arg - prev_arg)
        prev_arg = arg
        out.append(mpc(mpmath.log(abs(v)), acc))
    return out, acc


@lru_cache(maxsize=32)
def _roots(N: int, dps: int) -> tuple:
    with mpmath.workdps(dps):
        return tuple(mpmath.expjpi(mpf(-2 * j) / N) for j in range(N))


class _CircleSampler:
    """Nested trapezoid samples of ``log f`` on a circle.

    With ``symmetric=True`` the function is assumed real on the real axis and
    only the closed upper half circle is evaluated; the lower half follows by
    conjugation.  The sign of ``f`` at the rightmost node is normalised away
    so that this reflection is exact for the chosen branch.
    """

    def __init__(self, f: Callable, center, radius, dps: int, symmetric: bool):
        self.f = f
        self.center = center
        self.radius = radius
        self.dps = dps
        self.symmetric = symmetric
        self._raw: dict[int, list] = {}
        self._logs: dict[int, tuple] = {}
        self._lock = threading.Lock()

    def _nodes(self, N):
        count = N // 2 + 1 if self.symmetric else N
        return count

    def _evaluate(self, N, indices):
        out = {}
        with mpmath.workdps(self.dps):
            for k in indices:
                z = self.center + self.radius * mpmath.expjpi(mpf(2 * k) / N)
                if self.symmetric and (k == 0 or 2 * k == N):
                    z = mpmath.re(z)
                out[k] = mpmath.mpmathify(self.f(z))
        return out

    def raw(self, N: int) -> list:
        """Function values at the first ``_nodes(N)`` nodes, reusing coarser grids."""
        with self._lock:
            if N in self._raw:
                return self._raw[N]
            finer = [M for M in self._raw if M > N and M % N == 0]
            if finer:
                M = min(finer)
                step = M // N
                vals = self._raw[M][:: step][: self._nodes(N)]
                self._raw[N] = vals
                return vals
            coarse = [M for M in self._raw if N % M == 0 and M < N]
            known = {}
            if coarse:
                M = max(coarse)
                step = N // M
                for j, v in enumerate(self._raw[M]):
                    known[j * step] = v
        todo = [k for k in range(self._nodes(N)) if k not in known]
        known.update(self._evaluate(N, todo))
        vals = [known[k] for k in range(self._nodes(N))]
        with self._lock:
            self._raw[N] = vals
        return vals

    def logs(self, N: int):
        if N in self._logs:
            return self._logs[N]
        vals = self.raw(N)
        with mpmath.workdps(self.dps):
            if self.symmetric:
                v0 = mpmath.re(vals[0])
                sign = -1 if v0 < 0 else 1
                logs, acc = _unwrapped_logs([sign * v for v in vals])
                # arg at the leftmost node must come back to 0 (mod nothing):
                # any multiple of pi there is half a winding of the full circle
                if abs(acc) > 1:
                    raise BranchWindingDetected(
                        f"argument of f changes by {mpmath.nstr(2 * acc, 5)} around the contour"
                    )
            else:
                logs, acc = _unwrapped_logs(list(vals) + [vals[0]])
                logs = logs[:-1]
                if abs(acc - mpmath.im(logs[0])) > 1:
                    raise BranchWindingDetected(
                        f"argument of f changes by {mpmath.nstr(acc - mpmath.im(logs[0]), 5)} "
                        "around the contour"
                    )
            M = max(abs(g) for g in logs)
        self._logs[N] = (logs, M)
        return logs, M

    def coefficient(self, N: int, n: int):
        """Trapezoid estimate of the n-th Taylor coefficient of log f."""
        logs, M = self.logs(N)
        roots = _roots(N, self.dps)
        with mpmath.workdps(self.dps):
            if self.symmetric:
                half = N // 2
                acc = logs[0] + (-1) ** n * logs[half]
                inner = mpmath.fsum(
                    (logs[k] * roots[(n * k) % N] for k in range(1, half)), absolute=False
                )
                total = mpmath.re(acc) + 2 * mpmath.re(inner)
            else:
                total = mpmath.fsum(logs[k] * roots[(n * k) % N] for k in range(N))
            return total / (N * self.radius ** n), M


def _initial_nodes(n: int, digits: int, rate_digits: float | None) -> int:
    """Node count as a multiple of 8, large enough for order ``n``."""
    if rate_digits:
        guess = int(digits / rate_digits) + 8
    else:
        guess = 4 * n + 2 * digits
    guess = max(guess, 2 * n + 16)
    return 8 * math.ceil(guess / 8)


def _circle_coefficient(sampler_for, n: int, digits: int, guard: int, N0: int):
    """Converged coefficient ``g_n`` with error estimate.

    ``sampler_for(dps)`` returns a sampler at that internal precision.  The
    trapezoid result at ``N`` nodes is compared with ``N/2``; because the
    error decays geometrically the error at ``N`` is about the square of the
    difference, relative to the coefficient size.  A separate roundoff term
    ``10^-dps * max|log f| * sqrt(N) / r^n`` triggers a precision increase
    when the coefficient is much smaller than the samples.
    """
    tol = mpf(10) ** (-digits)
    dps = digits + guard
    for _precision_attempt in range(4):
        sampler = sampler_for(dps)
        N = N0
        while N <= MAX_NODES:
            if N // 2 <= n + 1:
                N *= 2
                continue
            with mpmath.workdps(dps):
                full, M = sampler.coefficient(N, n)
                half, _ = sampler.coefficient(N // 2, n)
                diff = abs(full - half)
                size = abs(full)
                roundoff = mpf(10) ** (-dps) * M * mpmath.sqrt(N) / sampler.radius ** n
                if size <= 100 * roundoff:
                    if _precision_attempt == 0:
                        break
                    # numerically zero even at raised precision
                    if diff <= 100 * roundoff:
                        return full, 100 * roundoff
                    N *= 2
                    continue
                if roundoff > tol * size / 10:
                    break
                est = diff * diff / max(size, diff) if diff < size / 1000 else diff
                if est <= tol * size:
                    return full, est + roundoff
            N *= 2
        else:
            raise NonConvergentQuadrature(
                f"contour quadrature for order {n} did not converge with {MAX_NODES} nodes"
            )
        # precision increase driven by the measured amplification
        with mpmath.workdps(dps):
            if size <= 100 * roundoff:
                need = digits
            else:
                need = min(digits, int(mpmath.log10(roundoff / (tol * size))) + 5)
        dps += need + guard
    raise PrecisionExhausted(f"contour quadrature for order {n} lost all significant digits")


def _square_integral(f, center, half, n: int, nodes: int, dps: int):
    """Gauss--Legendre on each side of a square, counter-clockwise."""
    with mpmath.workdps(dps):
        gl = mpmath.calculus.quadrature.GaussLegendre(mpmath.mp)
        degree = max(1, math.ceil(math.log2(max(nodes, 3) / 3)) + 1)
        pts = gl.calc_nodes(degree, mpmath.mp.prec)
        corners = [
            center + mpc(half, -half),
            center + mpc(half, half),
            center + mpc(-half, half),
            center + mpc(-half, -half),
        ]
        zs, ws = [], []
        for j in range(4):
            a, b = corners[j], corners[(j + 1) % 4]
            mid, hw = (a + b) / 2, (b - a) / 2
            for x, w in pts:
                zs.append(mid + hw * x)
                ws.append(w * hw)
        vals = [mpmath.mpmathify(f(z)) for z in zs]
        logs, acc = _unwrapped_logs(vals + [vals[0]])
        if abs(acc - mpmath.im(logs[0])) > 1:
            raise BranchWindingDetected(
                f"argument of f changes by {mpmath.nstr(acc - mpmath.im(logs[0]), 5)} around the contour"
            )
        logs = logs[:-1]
        total = mpmath.fsum(
            w * g / (z - center) ** (n + 1) for z, w, g in zip(zs, ws, logs)
        )
        M = max(abs(g) for g in logs)
        return total / (2j * mpmath.pi), M, len(zs)


def log_taylor_coefficient(
    f: Callable,
    center,
    order: int,
    ctx: PrecisionContext,
    spec: ContourSpec | None = None,
    *,
    real_symmetric: bool = False,
    singularity_distance=None,
):
    """``(g_n, error)`` for the n-th Taylor coefficient of ``log f`` at ``center``.

    ``f`` is called with an mpmath number at the internal precision.  If the
    distance to the nearest zero or singularity of ``f`` is known, passing it
    as ``singularity_distance`` lets the initial node count be predicted.
    """
    if order < 0:
        raise UsageError("order must be non-negative")
    spec = spec or ContourSpec()
    with ctx.workdps():
        center = to_mp(center)
        radius = to_mp(spec.extent)
    if spec.shape == "square":
        return _square_coefficient(f, center, radius, order, ctx, spec)
    if real_symmetric and mpmath.im(center) != 0:
        raise UsageError("real symmetry needs a real expansion point")
    rate = None
    if singularity_distance is not None:
        rate = math.log10(float(to_mp(singularity_distance) / radius))
    amplification = max(0, int(order * math.log10(max(1.0, 1 / float(radius)))))
    N0 = spec.nodes or _initial_nodes(order, ctx.working + amplification, rate)
    N0 = 8 * math.ceil(N0 / 8)

    def sampler_for(dps):
        return _CircleSampler(f, center, radius, dps, real_symmetric)

    return _circle_coefficient(sampler_for, order, ctx.digits, ctx.guard + amplification, N0)


def _square_coefficient(f, center, half, n, ctx, spec):
    tol = mpf(10) ** (-ctx.digits)
    dps = ctx.working + max(0, int(n * math.log10(max(1.0, 1 / float(half)))))
    nodes = spec.nodes or (4 * n + 2 * ctx.digits)
    prev = None
    while nodes <= MAX_NODES:
        value, M, used = _square_integral(f, center, half, n, nodes, dps)
        if prev is not None:
            with mpmath.workdps(dps):
                diff = abs(value - prev)
                if diff <= tol * max(abs(value), mpf(10) ** (-dps + 5) * M / half ** n):
                    return value, diff
        prev = value
        nodes = 2 * used // 4
    raise NonConvergentQuadrature(f"square contour for order {n} did not converge")


def log_deriv_at(f: Callable, center, order: int, spec: ContourSpec, ctx: PrecisionContext,
                 *, real_symmetric: bool = False):
    """n-th derivative of ``log f`` at ``center`` by contour quadrature.

    >>> ctx = PrecisionContext(30)
    >>> v = log_deriv_at(lambda z: 1 / (1 - z), 0, 4, ContourSpec(), ctx)
    >>> mpmath.nstr(mpmath.re(v), 10)
    '6.0'
    """
    if order < 1:
        raise UsageError("order must be a positive integer")
    value, _ = log_taylor_coefficient(f, center, order, ctx, spec, real_symmetric=real_symmetric)
    with ctx.workdps():
        return +(value * mpmath.factorial(order))


# ---------------------------------------------------------------------------
# zeta and beta at their canonical points

# Nearest singularity of log((s-1) zeta(s)) from 1/2 and from 0 is the
# trivial zero at -2; for log beta(s) from 1/2 it is the trivial zero at -1.
_ZETA_HALF = (mpf(1) / 2, mpf(9) / 20, mpf(5) / 2)
_ZETA_ZERO = (mpf(0), mpf(1) / 2, mpf(2))
_BETA_HALF = (mpf(1) / 2, mpf(1) / 2, mpf(3) / 2)


def _deflated_zeta(dps):
    inner = PrecisionContext(max(30, dps - 10), 10)

    def f(z):
        if z == 1:
            return mpf(1)
        return (z - 1) * hurwitz_combination(z, [(1, 1)], inner).value

    return f


def _beta(dps):
    inner = PrecisionContext(max(30, dps - 10), 10)
    return lambda z: dirichlet_beta(z, inner)


_SAMPLERS: dict = {}
_SAMPLERS_LOCK = threading.Lock()


def _shared_sampler(kind: str, dps: int):
    key = (kind, dps)
    with _SAMPLERS_LOCK:
        s = _SAMPLERS.get(key)
        if s is None:
            if len(_SAMPLERS) > 16:
                _SAMPLERS.clear()
            center, radius, _ = {"zeta_half": _ZETA_HALF, "zeta_zero": _ZETA_ZERO,
                                 "beta_half": _BETA_HALF}[kind]
            f = _beta(dps) if kind == "beta_half" else _deflated_zeta(dps)
            s = _CircleSampler(f, center, radius, dps, symmetric=True)
            _SAMPLERS[key] = s
        return s


def _round_dps(dps: int) -> int:
    # coarse buckets so nearby requests share samples
    return 25 * math.ceil(dps / 25)


def _named_coefficient(kind: str, n: int, ctx: PrecisionContext):
    center, radius, R = {"zeta_half": _ZETA_HALF, "zeta_zero": _ZETA_ZERO,
                         "beta_half": _BETA_HALF}[kind]
    rate = math.log10(float(R / radius))
    amplification = max(0, math.ceil(n * math.log10(float(1 / radius))))
    base = _round_dps(ctx.working + amplification)
    N0 = _initial_nodes(n, base, rate)

    def sampler_for(dps):
        return _shared_sampler(kind, _round_dps(dps))

    return _circle_coefficient(sampler_for, n, ctx.digits, base - ctx.digits, N0)


def _check_real(value, ctx):
    if isinstance(value, mpc):
        if abs(value.imag) > mpf(10) ** (-(ctx.digits // 2)) * max(1, abs(value.real)):
            raise ImaginaryResidueTooLarge(f"imaginary part {mpmath.nstr(value.imag, 3)}")
        return value.real
    return value


def deflated_zeta_coefficient(n: int, ctx: PrecisionContext, at: str = "half"):
    """``(c_n, err)``: Taylor coefficient of ``log((s-1) zeta(s))`` at 1/2 or 0."""
    kind = {"half": "zeta_half", "zero": "zeta_zero"}[at]
    value, err = _named_coefficient(kind, n, ctx)
    return _check_real(value, ctx), err


def beta_coefficient(n: int, ctx: PrecisionContext):
    """``(c_n, err)``: Taylor coefficient of ``log beta(s)`` at 1/2."""
    value, err = _named_coefficient("beta_half", n, ctx)
    return _check_real(value, ctx), err


def log_zeta_deriv_half(m2: int, ctx: PrecisionContext):
    """``(log|zeta|)^(m2)(1/2)``.

    Equal to ``m2! c_m2 + 2^m2 (m2-1)!`` where ``c`` are the coefficients of
    the deflated function; the second term is the pole's share.
    """
    if m2 < 2 or m2 % 2:
        raise UsageError("m2 must be an even integer >= 2")
    c, _ = deflated_zeta_coefficient(m2, ctx, "half")
    with ctx.workdps():
        return mpmath.factorial(m2) * c + mpf(2) ** m2 * mpmath.factorial(m2 - 1)


def log_zeta_deriv_zero(m: int, ctx: PrecisionContext):
    """``(log|zeta|)^(m)(0)``; the pole contributes ``(m-1)!``."""
    if m < 2:
        raise UsageError("m must be an integer >= 2")
    c, _ = deflated_zeta_coefficient(m, ctx, "zero")
    with ctx.workdps():
        return mpmath.factorial(m) * c + mpmath.factorial(m - 1)


def log_beta_deriv_half(m2: int, ctx: PrecisionContext):
    """``(log|beta|)^(m2)(1/2)``."""
    if m2 < 2 or m2 % 2:
        raise UsageError("m2 must be an even integer >= 2")
    c, _ = beta_coefficient(m2, ctx)
    with ctx.workdps():
        return mpmath.factorial(m2) * c


# ---------------------------------------------------------------------------
# Stieltjes constants and cumulants


@dataclass
class StieltjesTable:
    """Stieltjes constants with the derived eta and cumulant chains.

    ``gammas[n]`` and ``etas[n]`` for n = 0..N, ``cumulants[n-1]`` holds
    ``g_n^c`` for n = 1..N.
    """

    gammas: list
    etas: list
    cumulants: list
    context: PrecisionContext

    @property
    def order(self) -> int:
        return len(self.gammas) - 1

    def cumulant(self, n: int):
        if n < 1 or n > len(self.cumulants):
            raise TableTooShort(f"cumulant g_{n} not in table of order {self.order}")
        return self.cumulants[n - 1]

    def to_json(self) -> str:
        d = self.context.working
        enc = lambda xs: [mpmath.nstr(x, d, strip_zeros=False) for x in xs]  # noqa: E731
        return json.dumps({
            "order": self.order,
            "digits": self.context.digits,
            "guard": self.context.guard,
            "gammas": enc(self.gammas),
            "etas": enc(self.etas),
            "cumulants": enc(self.cumulants),
        })

    @classmethod
    def from_json(cls, text: str) -> "StieltjesTable":
        d = json.loads(text)
        ctx = PrecisionContext(int(d["digits"]), int(d.get("guard", 10)))
        with ctx.workdps():
            conv = lambda xs: [mpf(x) for x in xs]  # noqa: E731
            return cls(conv(d["gammas"]), conv(d["etas"]), conv(d["cumulants"]), ctx)


def eta_chain(gammas: list, ctx: PrecisionContext) -> list:
    """Coefficients of ``-zeta'/zeta`` about s = 1 from the Stieltjes constants.

    eta_n = (-1)^(n+1) [ (n+1)/n! gamma_n
                         + sum_{k<n} (-1)^(k-1)/(n-k-1)! eta_k gamma_(n-k-1) ]
    """
    etas = []
    with ctx.workdps():
        fact = [mpmath.factorial(j) for j in range(len(gammas) + 1)]
        for n in range(len(gammas)):
            acc = (n + 1) * gammas[n] / fact[n]
            for k in range(n):
                acc += (-1) ** (k - 1) * etas[k] * gammas[n - k - 1] / fact[n - k - 1]
            etas.append((-1) ** (n + 1) * acc)
    return etas


def cumulants_from_etas(etas: list, ctx: PrecisionContext) -> list:
    """``g_n^c = (-1)^n (n-1)! eta_(n-1)`` for n = 1..len(etas)."""
    with ctx.workdps():
        return [(-1) ** n * mpmath.factorial(n - 1) * etas[n - 1] for n in range(1, len(etas) + 1)]


def _regular_zeta(dps):
    inner = PrecisionContext(max(30, dps - 10), 10)

    def h(z):
        if z == 1:
            return +mpmath.euler
        return hurwitz_combination(z, [(1, 1)], inner).value - 1 / (z - 1)

    return h


def stieltjes_constants(N: int, ctx: PrecisionContext) -> StieltjesTable:
    """gamma_0..gamma_N from Taylor coefficients of ``zeta(s) - 1/(s-1)`` at 1.

    zeta(s) = 1/(s-1) + sum_n (-1)^n gamma_n / n! (s-1)^n, so
    gamma_n = (-1)^n n! c_n.  The regular part is entire, so the trapezoid
    rule on the unit circle about 1 converges faster than geometrically.
    """
    if N < 0:
        raise UsageError("N must be non-negative")
    samplers: dict = {}
    extra = N // 2 + 10

    def sampler_for(dps):
        if dps not in samplers:
            samplers[dps] = _PlainCircleSampler(_regular_zeta(dps), mpf(1), mpf(1), dps)
        return samplers[dps]

    gammas = []
    N0 = _initial_nodes(N, ctx.working, 1.0)
    for n in range(N + 1):
        c, _ = _circle_coefficient(sampler_for, n, ctx.digits, ctx.guard + extra, N0)
        with ctx.workdps():
            gammas.append((-1) ** n * mpmath.factorial(n) * mpmath.re(c))
    etas = eta_chain(gammas, ctx)
    return StieltjesTable(gammas, etas, cumulants_from_etas(etas, ctx), ctx)


class _PlainCircleSampler(_CircleSampler):
    """Same nested sampling, but Taylor coefficients of f itself (no log)."""

    def __init__(self, f, center, radius, dps):
        super().__init__(f, center, radius, dps, symmetric=True)

    def logs(self, N: int):
        if N in self._logs:
            return self._logs[N]
        vals = self.raw(N)
        with mpmath.workdps(self.dps):
            vals = [mpc(v) for v in vals]
            M = max(abs(v) for v in vals)
        self._logs[N] = (vals, M)
        return vals, M


def z2_from_cumulants(m: int, table: StieltjesTable):
    """Z2(m) = 1 - (1 - 2^-m) zeta(m) + g_m^c / (m-1)!."""
    if m < 2:
        raise UsageError("m must be an integer >= 2")
    g = table.cumulant(m)
    ctx = table.context
    z = zeta(m, ctx)
    with ctx.workdps():
        return 1 - (1 - mpf(2) ** (-m)) * z + g / mpmath.factorial(m - 1)
