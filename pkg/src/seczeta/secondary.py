"""Secondary zeta functions: sums over the non-trivial zeros themselves.

    Z1(s) = sum t_n^-s                     Z2(s)   = sum rho^-s + conj(rho)^-s
    Z3(s) = sum (1/4 + t_n^2)^-s           Z2(s|a) = sum (a + i t_n)^-s + (a - i t_n)^-s
    Z4(s) = sum exp(-t_n^2 s)              B(s)    = sum r_n^-s   (zeros of beta)

Closed forms at even (Z1, B) or integer (Z2) arguments need one high-order
log-derivative.  All values come back as :class:`SecondaryValue` carrying an
absolute error estimate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mpf

from . import derivatives as D
from .errors import (
    InsufficientZeroPrecision,
    InvalidShift,
    NegativeResult,
    NotAFixture,
    UsageError,
)
from .kernel import PrecisionContext, hurwitz_zeta, integrate_semiline, to_mp, zeta
from .primes import mangoldt_sum

FAMILIES = ("Z1", "Z2", "Z2shifted", "Z3", "Z4", "B")
METHODS = ("closed_form", "direct_sum", "stieltjes", "asymptotic", "fixture")

# Published odd values of Z1, used read-only.
_Z1_ODD = {
    3: "0.000729548272709704215875518569",
    5: "0.000002231188699502103328640628",
    7: "0.000000009675344542702350408719",
    9: "0.000000000045991912392894862969",
    11: "0.00000000000022556506251559664",
}


@dataclass
class SecondaryValue:
    family: str
    method: str
    params: dict
    value: mpf
    error_estimate: mpf
    digits: int = 50
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.error_estimate < 0:
            raise UsageError("error estimate must be non-negative")

    def to_json(self) -> str:
        with mpmath.workdps(self.digits + 10):
            params = {k: (mpmath.nstr(v, self.digits) if isinstance(v, mpf) else v)
                      for k, v in self.params.items()}
            return json.dumps({
                "family": self.family,
                "method": self.method,
                "params": params,
                "value": mpmath.nstr(self.value, self.digits, strip_zeros=False),
                "error_estimate": mpmath.nstr(self.error_estimate, 5),
                "digits": self.digits,
            }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SecondaryValue":
        d = json.loads(text)
        with mpmath.workdps(int(d["digits"]) + 10):
            return cls(d["family"], d["method"], d["params"], mpf(d["value"]),
                       mpf(d["error_estimate"]), int(d["digits"]))


def _positive(value, err, what):
    if value <= 0 or err >= abs(value):
        raise NegativeResult(
            f"{what} = {mpmath.nstr(value, 5)} with error {mpmath.nstr(err, 3)}: "
            "cancellation exceeded the working precision"
        )


# ---------------------------------------------------------------------------
# Z1


def z1_even(m: int, ctx: PrecisionContext) -> SecondaryValue:
    """Z1(2m) from the log-derivative of zeta at 1/2.

    Z1(2m) = (-1)^m/2 [2^2m - (log|zeta|)^(2m)(1/2)/(2m-1)! - 2^-2m zeta(2m, 5/4)].
    The pole part of the derivative cancels 2^2m exactly, leaving
    Z1(2m) = (-1)^(m+1)/2 [2m c_2m + 2^-2m zeta(2m, 5/4)]
    with c the Taylor coefficients of log((s-1) zeta(s)) at 1/2.
    """
    if int(m) != m or m < 1:
        raise UsageError("m must be a positive integer")
    m = int(m)
    c, err_c = D.deflated_zeta_coefficient(2 * m, ctx, "half")
    h = hurwitz_zeta(2 * m, mpf(5) / 4, ctx)
    with ctx.workdps():
        tail = mpf(2) ** (-2 * m) * h
        value = (-1) ** (m + 1) * (2 * m * c + tail) / 2
        err = m * err_c + (abs(tail) + abs(2 * m * c)) * ctx.eps / 2
    _positive(value, err, f"Z1({2 * m})")
    return SecondaryValue("Z1", "closed_form", {"m": m, "s": 2 * m}, value, err, ctx.digits)


def z1_fixture_odd(m: int) -> mpf:
    """Published Z1(m) for odd m in 3..11 (30 decimals)."""
    try:
        text = _Z1_ODD[int(m)]
        with mpmath.workdps(len(text) + 10):
            v = mpf(text)
        return +v
    except (KeyError, ValueError, TypeError):
        raise NotAFixture(f"Z1({m}) is not a stored fixture; odd values 3..11 only") from None


# ---------------------------------------------------------------------------
# Z2, Z3


def z2_closed(m: int, ctx: PrecisionContext) -> SecondaryValue:
    """Z2(m) = 1 - (-1)^m 2^-m zeta(m) - (log|zeta|)^(m)(0)/(m-1)!.

    The leading 1 cancels the pole's share ``(m-1)!`` of the derivative, so
    Z2(m) = -(-1)^m 2^-m zeta(m) - m c_m, c from log((s-1) zeta(s)) at 0.
    m = 1 is given by the classical value 1 + gamma/2 - log(4 pi)/2.
    """
    if int(m) != m or m < 1:
        raise UsageError("m must be a positive integer")
    m = int(m)
    if m == 1:
        with ctx.workdps():
            value = 1 + mpmath.euler / 2 - mpmath.log(4 * mpmath.pi) / 2
            return SecondaryValue("Z2", "closed_form", {"m": 1}, value, ctx.eps, ctx.digits)
    c, err_c = D.deflated_zeta_coefficient(m, ctx, "zero")
    z = zeta(m, ctx)
    with ctx.workdps():
        head = (-1) ** m * mpf(2) ** (-m) * z
        value = -head - m * c
        err = m * err_c + (abs(head) + abs(m * c)) * ctx.eps
    return SecondaryValue("Z2", "closed_form", {"m": m}, value, err, ctx.digits)


def z2_stieltjes(m: int, table: D.StieltjesTable) -> SecondaryValue:
    """Z2(m) through the Stieltjes cumulants."""
    value = D.z2_from_cumulants(m, table)
    ctx = table.context
    with ctx.workdps():
        err = ctx.eps * (1 + abs(zeta(m, ctx)))
    return SecondaryValue("Z2", "stieltjes", {"m": m}, value, err, ctx.digits)


def z3_asymptotic(s: int, ctx: PrecisionContext, *, table: D.StieltjesTable | None = None
                  ) -> SecondaryValue:
    """Z3(s) ~ (Z2(s)^2 - Z2(2s)) / 2 for large s.

    The omitted cross terms are of relative size ``2 (|rho_1|/|rho_2|)^s``;
    they are a property of the limit, not of this evaluation, and are not in
    the error estimate.  With ``table`` both Z2 values come from the
    Stieltjes cumulants instead of log-derivatives.
    """
    if int(s) != s or s < 2:
        raise UsageError("s must be an integer >= 2")
    s = int(s)
    if table is not None:
        a, b = z2_stieltjes(s, table), z2_stieltjes(2 * s, table)
        method = "stieltjes"
    else:
        a, b = z2_closed(s, ctx), z2_closed(2 * s, ctx)
        method = "asymptotic"
    with ctx.workdps():
        value = (a.value ** 2 - b.value) / 2
        err = abs(a.value) * a.error_estimate + b.error_estimate / 2
    return SecondaryValue("Z3", method, {"s": s}, value, err, ctx.digits)


def _shift_weight(a, s):
    """log of k^(-1/2-a) (log k)^(s-1) as a function of L = log k."""
    ea = mpf(a) + mpf(1) / 2
    fa = float(ea)

    def mp_logw(L):
        return -ea * L + (s - 1) * mpmath.log(L)

    def np_logw(L):
        return -fa * L + (s - 1) * np.log(L)

    return mp_logw, np_logw


def shifted_tail_bound(s: int, a, K: int, ctx: PrecisionContext):
    """Bound on sum_{k>K} Lambda(k) k^(-1/2-a) (log k)^(s-1) / Gamma(s).

    Lambda(k) <= log k turns the summand into g(k) = k^(-1/2-a) (log k)^s, and
    the sum is at most int_K^inf g + max_{x>=K} g.  In u = log x the integral
    is Gamma(s+1, (a-1/2) log K) / (a-1/2)^(s+1).
    """
    with ctx.workdps():
        a = to_mp(a)
        lam = a - mpf(1) / 2
        LK = mpmath.log(K)
        integral = mpmath.gammainc(s + 1, lam * LK) / lam ** (s + 1)
        peak_L = max(LK, s / (a + mpf(1) / 2))
        g_max = mpmath.exp(-(a + mpf(1) / 2) * peak_L) * peak_L ** s
        return (integral + g_max) / mpmath.gamma(s)


def z2_shifted(s: int, a, K: int, ctx: PrecisionContext, *, exact_limit: int | None = None
               ) -> SecondaryValue:
    """Z2(s|a) = (a-1/2)^-s - 2^-s zeta(s, 5/4 + a/2) - S_K / Gamma(s),

    S_K = sum_{k=2..K} Lambda(k) k^(-1/2-a) (log k)^(s-1).  The error estimate
    is the tail bound plus the float64 tier's rounding.
    """
    if int(s) != s or s < 2:
        raise UsageError("s must be an integer >= 2")
    if int(K) != K or K < 2:
        raise UsageError("K must be an integer >= 2")
    s, K = int(s), int(K)
    with ctx.workdps():
        a = to_mp(a)
        if a <= mpf(1) / 2:
            raise InvalidShift("the shifted closed form needs a > 1/2")
    mp_logw, np_logw = _shift_weight(a, s)
    kw = {} if exact_limit is None else {"exact_limit": exact_limit}
    S, s_err = mangoldt_sum(K, mp_logw, np_logw, ctx, key=("shift", str(a), s), **kw)
    h = hurwitz_zeta(s, mpf(5) / 4 + a / 2, ctx)
    with ctx.workdps():
        g = mpmath.gamma(s)
        lead = (a - mpf(1) / 2) ** (-s)
        hz = mpf(2) ** (-s) * h
        value = lead - hz - S / g
        tail = shifted_tail_bound(s, a, K, ctx)
        err = tail + s_err / g + (abs(lead) + abs(hz) + abs(S / g)) * ctx.eps
    return SecondaryValue("Z2shifted", "closed_form", {"s": s, "a": a, "K": K}, value, err,
                          ctx.digits, extra={"truncation": tail})


# ---------------------------------------------------------------------------
# Z4


def z4_direct(s, zeros, ctx: PrecisionContext) -> SecondaryValue:
    """Z4(s) = sum exp(-t_k^2 s) over a stored list of zeros.

    The tail beyond the last zero is estimated from the last term ratio as a
    geometric series.  Each ordinate must be accurate enough that its term is
    known to ``ctx.digits`` relative to the sum: a relative error delta in t
    moves its term by ``2 t^2 s delta``.
    """
    records = list(zeros.records) if hasattr(zeros, "records") else list(zeros)
    if not records:
        raise UsageError("z4_direct needs at least one zero")
    with ctx.workdps():
        s = to_mp(s)
        if s <= 0:
            raise UsageError("z4_direct needs s > 0")
        ts = [to_mp(getattr(r, "ordinate", r)) for r in records]
        terms = [mpmath.exp(-t * t * s) for t in ts]
        value = mpmath.fsum(terms)
        for r, t, term in zip(records, ts, terms):
            digits = getattr(r, "claimed_digits", None)
            if digits is None or term < ctx.eps * value:
                continue
            rel = 2 * t * t * s * mpf(10) ** (-digits)
            if term * rel > ctx.eps * value:
                raise InsufficientZeroPrecision(
                    f"zero {mpmath.nstr(t, 10)} has {digits} digits; the sum needs "
                    f"{ctx.digits + math.ceil(float(mpmath.log10(2 * t * t * s)))}"
                )
        if len(ts) >= 2:
            ratio = mpmath.exp(-(ts[-1] ** 2 - ts[-2] ** 2) * s)
            tail = terms[-1] * ratio / (1 - ratio)
        else:
            tail = terms[-1]
        err = tail + value * ctx.eps
    return SecondaryValue("Z4", "direct_sum", {"s": s, "zeros": len(ts)}, value, err, ctx.digits)


def _z4_weight(s):
    fs = float(s)

    def mp_logw(L):
        return -L / 2 - L * L / (4 * s)

    def np_logw(L):
        return -L / 2 - L * L / (4 * fs)

    return mp_logw, np_logw


def z4_a_tail_bound(s, K: int, ctx: PrecisionContext):
    """Bound on the omitted part of the von Mangoldt sum in A(s), scaled.

    With Lambda(k) <= log k the omitted sum is at most
    int_{log K}^inf u exp(u/2 - u^2/(4s)) du (plus one summand), divided by
    2 sqrt(pi s).
    """
    with ctx.workdps():
        s = to_mp(s)
        LK = mpmath.log(K)
        f = lambda u: u * mpmath.exp(u / 2 - u * u / (4 * s))  # noqa: E731
        integral = mpmath.quad(f, [LK, LK + 10 * mpmath.sqrt(s), mpmath.inf])
        return (integral + f(max(LK, s))) / (2 * mpmath.sqrt(mpmath.pi * s))


def _z4_integrand(s):
    def f(u):
        # 1/u - e^(3u/4)/(e^u - 1) cancels like 1/u near 0; carry extra digits
        extra = max(0, int(-mpmath.log10(u))) + 5 if u < 1 else 0
        with mpmath.extradps(extra):
            g = 1 / u - mpmath.exp(3 * u / 4) / mpmath.expm1(u)
            return mpmath.exp(-u * u / (16 * s)) * g

    return f


def z4_b(s, ctx: PrecisionContext):
    """B(s) = (gamma + log(16 pi^2 s))/(8 sqrt(pi s))
              - 1/(4 sqrt(pi s)) int_0^inf e^(-u^2/16s) (1/u - e^(3u/4)/(e^u-1)) du.

    The integrand tends to -1/4 as u -> 0.
    """
    with ctx.workdps():
        s = to_mp(s)
        integral = integrate_semiline(_z4_integrand(s), ctx, limit_at_zero=-mpf(1) / 4,
                                      breakpoints=(1, 4, 16, 64, 256))
        root = mpmath.sqrt(mpmath.pi * s)
        return (mpmath.euler + mpmath.log(16 * mpmath.pi ** 2 * s)) / (8 * root) - integral / (4 * root)


def z4_closed(s, K: int, ctx: PrecisionContext, *, exact_limit: int | None = None):
    """``(A, B, SecondaryValue(A - B))`` for the Jacobi-type sum.

    A(s) = -1/(2 sqrt(pi s)) sum_{k=2..K} Lambda(k)/sqrt(k) e^(-log^2 k/(4s)) + e^(s/4).
    """
    if int(K) != K or K < 2:
        raise UsageError("K must be an integer >= 2")
    K = int(K)
    with ctx.workdps():
        s = to_mp(s)
        if s <= 0:
            raise UsageError("z4_closed needs s > 0")
    mp_logw, np_logw = _z4_weight(s)
    kw = {} if exact_limit is None else {"exact_limit": exact_limit}
    S, s_err = mangoldt_sum(K, mp_logw, np_logw, ctx, key=("z4", str(s)), **kw)
    b = z4_b(s, ctx)
    with ctx.workdps():
        root = mpmath.sqrt(mpmath.pi * s)
        a = -S / (2 * root) + mpmath.exp(s / 4)
        tail = z4_a_tail_bound(s, K, ctx)
        err = tail + s_err / (2 * root) + 4 * ctx.eps
        sv = SecondaryValue("Z4", "closed_form", {"s": s, "K": K}, a - b, err, ctx.digits,
                            extra={"A": a, "B": b, "truncation": tail})
    return a, b, sv


# ---------------------------------------------------------------------------
# B (zeros of Dirichlet beta)


def b_even(m: int, ctx: PrecisionContext) -> SecondaryValue:
    """B(2m) = (-1)^(m+1)/2 [(log|beta|)^(2m)(1/2)/(2m-1)! + 2^-2m zeta(2m, 3/4)]."""
    if int(m) != m or m < 1:
        raise UsageError("m must be a positive integer")
    m = int(m)
    c, err_c = D.beta_coefficient(2 * m, ctx)
    h = hurwitz_zeta(2 * m, mpf(3) / 4, ctx)
    with ctx.workdps():
        tail = mpf(2) ** (-2 * m) * h
        value = (-1) ** (m + 1) * (2 * m * c + tail) / 2
        err = m * err_c + (abs(tail) + abs(2 * m * c)) * ctx.eps / 2
    _positive(value, err, f"B({2 * m})")
    return SecondaryValue("B", "closed_form", {"m": m, "s": 2 * m}, value, err, ctx.digits)
