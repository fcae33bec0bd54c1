"""Zeros on the critical line: stores, recurrences, and a Newton oracle.

Each recurrence isolates the smallest unknown zero from a secondary zeta
value once the known zeros are subtracted,

    t_(n+1) = lim_m [ Z(m) - sum_(k<=n) term_k(m) ]^(-1/m),

so its accuracy is limited by the next zero's share of the remainder,
roughly ``(t_(n+1)/t_(n+2))^m``.  Subtracting the known terms also
amplifies their errors by ``(t_(n+1)/t_k)^m``; inputs must be supplied to
correspondingly more digits (the precision ladder).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

import mpmath
from mpmath import mpc, mpf

from . import derivatives as D
from .errors import (
    BasinEscape,
    InsufficientZ4Precision,
    LadderViolation,
    NegativeLogArgument,
    NegativeRadicand,
    NoConvergence,
    SelfCancellation,
    TargetInfeasible,
    TruncationDominates,
    UsageError,
)
from .kernel import PrecisionContext, hurwitz_combination, hurwitz_zeta, to_mp
from .secondary import SecondaryValue, z2_shifted

SOURCES = (
    "recurrence_z1",
    "recurrence_matsuoka",
    "recurrence_shifted",
    "recurrence_jacobi",
    "recurrence_beta",
    "newton_oracle",
    "imported",
)

MAX_M = int(os.environ.get("SECZETA_MAX_M", "2000"))
MAX_DIGITS = int(os.environ.get("SECZETA_MAX_DIGITS", "20000"))
ESTIMATE_STEP = 5


# ---------------------------------------------------------------------------
# records and stores


@dataclass
class ZeroRecord:
    """One ordinate with provenance.

    ``text`` is the exact decimal string the ordinate was stored with;
    ``claimed_digits`` counts correct digits after the decimal point.
    ``params`` records how a recurrence produced it (e.g. its limit m).
    """

    index: int
    text: str
    claimed_digits: int
    source: str = "imported"
    kind: str = "zeta"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.index) != self.index or self.index < 1:
            raise UsageError("zero index must be a positive integer")
        if self.source not in SOURCES:
            raise UsageError(f"unknown source {self.source!r}")
        if self.kind not in ("zeta", "beta"):
            raise UsageError(f"unknown kind {self.kind!r}")
        if self.claimed_digits < 0:
            raise UsageError("claimed digits must be non-negative")
        if not isinstance(self.text, str):
            raise UsageError("ordinate text must be a decimal string")
        if mpf(self.text) <= 0:
            raise UsageError("ordinate must be positive")

    @property
    def ordinate(self) -> mpf:
        with mpmath.workdps(len(self.text) + 10):
            return mpf(self.text)

    @classmethod
    def from_value(cls, index, value, claimed_digits, source, kind="zeta", params=None,
                   digits: int | None = None):
        digits = digits or mpmath.mp.dps
        text = mpmath.nstr(value, digits, strip_zeros=False, min_fixed=-mpmath.inf,
                           max_fixed=mpmath.inf)
        return cls(int(index), text, int(claimed_digits), source, kind, dict(params or {}))

    def to_dict(self) -> dict:
        d = {"index": self.index, "kind": self.kind, "ordinate": self.text,
             "digits": self.claimed_digits, "source": self.source}
        if self.params:
            d["params"] = self.params
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ZeroRecord":
        return cls(int(d["index"]), str(d["ordinate"]), int(d["digits"]), d.get("source", "imported"),
                   d.get("kind", "zeta"), dict(d.get("params", {})))

    def truncated(self, extra: int = 5) -> str:
        """The ordinate cut to ``claimed_digits + extra`` decimals."""
        whole, _, frac = self.text.partition(".")
        return whole + "." + frac[: self.claimed_digits + extra] if frac else whole


@dataclass
class ZeroStore:
    kind: str = "zeta"
    records: list = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in ("zeta", "beta"):
            raise UsageError(f"unknown kind {self.kind!r}")
        recs, self.records = list(self.records), []
        for r in recs:
            self.append(r)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def append(self, rec: ZeroRecord):
        if rec.kind != self.kind:
            raise UsageError(f"store holds {self.kind} zeros, got a {rec.kind} zero")
        if rec.index != len(self.records) + 1:
            raise UsageError(f"expected index {len(self.records) + 1}, got {rec.index}")
        if self.records and rec.ordinate <= self.records[-1].ordinate:
            raise UsageError("ordinates must increase with index")
        self.records.append(rec)

    def first(self, n: int) -> "ZeroStore":
        if n > len(self.records):
            raise UsageError(f"store has {len(self.records)} zeros, {n} requested")
        return ZeroStore(self.kind, self.records[:n])

    def ordinates(self) -> list:
        return [r.ordinate for r in self.records]

    def dumps(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.records)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def loads(cls, text: str, kind: str | None = None) -> "ZeroStore":
        recs = [ZeroRecord.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
        kind = kind or (recs[0].kind if recs else "zeta")
        return cls(kind, recs)

    @classmethod
    def load(cls, path, kind: str | None = None) -> "ZeroStore":
        with open(path) as fh:
            return cls.loads(fh.read(), kind)


_BUNDLED: dict = {}


def reference_store(kind: str = "zeta") -> ZeroStore:
    """The bundled high-precision reference zeros (100 zeta, 10 beta)."""
    if kind not in _BUNDLED:
        name = {"zeta": "zeta_zeros.jsonl", "beta": "beta_zeros.jsonl"}[kind]
        text = resources.files("seczeta").joinpath("data").joinpath(name).read_text()
        _BUNDLED[kind] = ZeroStore.loads(text, kind)
    return _BUNDLED[kind]


# ---------------------------------------------------------------------------
# Newton oracle


def _l_function(kind: str):
    if kind == "zeta":
        return lambda s, c: hurwitz_combination(s, [(1, 1)], c).value
    if kind == "beta":
        def beta(s, c):
            v = hurwitz_combination(s, [(1, mpf(1) / 4), (-1, mpf(3) / 4)], c).value
            return mpmath.power(4, -s) * v
        return beta
    raise UsageError(f"unknown kind {kind!r}")


def _on_line(kind, t, digits):
    L = _l_function(kind)
    ctx = PrecisionContext(max(30, digits))
    with ctx.workdps():
        return L(mpf(1) / 2 + 1j * t, ctx)


def hardy(kind: str, t, digits: int = 30):
    """Real-valued rotation of L(1/2 + it) whose sign changes mark zeros."""
    with mpmath.workdps(digits + 10):
        t = to_mp(t)
        if kind == "zeta":
            theta = mpmath.siegeltheta(t)
        else:
            # completed beta: (4/pi)^((s+1)/2) Gamma((s+1)/2) beta(s) is real on the line
            theta = mpmath.im(mpmath.loggamma(mpf(3) / 4 + 1j * t / 2)) + t / 2 * mpmath.log(4 / mpmath.pi)
        return mpmath.re(mpmath.expj(theta) * _on_line(kind, t, digits))


def scan_zeros(kind: str, upto, step=mpf(1) / 20, start=None, digits: int = 30) -> list:
    """Brackets (a, b) of sign changes of the rotated L on [start, upto]."""
    lo = to_mp(start) if start is not None else (mpf(1) if kind == "zeta" else mpf(1) / 2)
    upto = to_mp(upto)
    grid = [lo + k * step for k in range(1, int(mpmath.floor((upto - lo) / step)) + 1)]
    if not grid or grid[-1] < upto:
        grid.append(upto)
    out = []
    a, fa = lo, hardy(kind, lo, digits)
    for t in grid:
        fb = hardy(kind, t, digits)
        if fa * fb < 0:
            out.append((a, t))
        a, fa = t, fb
    return out


def zero_index(kind: str, t, step=mpf(1) / 20) -> int:
    """Index of the zero at ordinate ``t`` by counting sign changes below it."""
    return len(scan_zeros(kind, to_mp(t) - step / 2, step)) + 1


def refine_zero_newton(kind: str, approx, target_digits: int, ctx: PrecisionContext | None = None,
                       *, index: int | None = None, max_iter: int = 60) -> ZeroRecord:
    """Newton iteration on f(t) = L(1/2 + it) in the complex t-plane.

    Precision doubles from level to level.  The derivative is a central
    difference evaluated at about three quarters of the current precision,
    good to half of it, which is all Newton needs to double the digits.
    The iterate must stay within 0.1 of ``approx``.
    """
    if kind not in ("zeta", "beta"):
        raise UsageError(f"unknown kind {kind!r}")
    if target_digits < 1:
        raise UsageError("target_digits must be positive")
    guard = ctx.guard if ctx else 10
    final = target_digits + guard
    with mpmath.workdps(final + 10):
        x0 = to_mp(approx)
        t = mpc(x0)
    L = _l_function(kind)
    levels = []
    p = 30
    while p < final:
        levels.append(p)
        p *= 2
    levels.append(final)
    steps = 0
    for li, P in enumerate(levels):
        last = li == len(levels) - 1
        goal = mpf(10) ** (-(target_digits + 2 if last else P // 2))
        while True:
            steps += 1
            if steps > max_iter:
                raise NoConvergence(f"Newton did not converge in {max_iter} steps")
            c = PrecisionContext(max(30, P), 10)
            Q = max(30, (3 * P) // 4 + 10)
            cd = PrecisionContext(Q, 10)
            with mpmath.workdps(P + 20):
                f = L(mpf(1) / 2 + 1j * t, c)
                with mpmath.workdps(Q + 20):
                    h = mpf(10) ** (-(P // 4 + 5))
                    fp = (L(mpf(1) / 2 + 1j * (t + h), cd) - L(mpf(1) / 2 + 1j * (t - h), cd)) / (2 * h)
                if fp == 0:
                    raise NoConvergence("vanishing derivative")
                step = f / fp
                t = t - step
                if abs(t - x0) > mpf(1) / 10:
                    raise BasinEscape(
                        f"Newton iterate {mpmath.nstr(mpmath.re(t), 10)} left the window around "
                        f"{mpmath.nstr(x0, 10)}"
                    )
            if abs(step) < goal:
                break
    with mpmath.workdps(final + 10):
        if abs(mpmath.im(t)) > mpf(10) ** (-(target_digits // 2)):
            raise NoConvergence(f"zero is off the critical line by {mpmath.nstr(mpmath.im(t), 3)}")
        tr = mpmath.re(t)
        idx = index if index is not None else zero_index(kind, tr)
        return ZeroRecord.from_value(idx, tr, target_digits, "newton_oracle", kind,
                                     digits=target_digits + 3 + len(str(int(tr))))


# ---------------------------------------------------------------------------
# gap model and precision planning


def smooth_zero_estimate(n: int, kind: str = "zeta") -> mpf:
    """t_n from the smooth count N0(t) = theta(t)/pi + 1 set to n - 1/2."""
    with mpmath.workdps(20):
        if kind == "zeta":
            f = lambda t: mpmath.siegeltheta(t) / mpmath.pi + 1 - (n - mpf(1) / 2)  # noqa: E731
            guess = 2 * mpmath.pi * n / mpmath.log(n + 2) + 10
        else:
            f = lambda t: (mpmath.im(mpmath.loggamma(mpf(3) / 4 + 1j * t / 2))  # noqa: E731
                           + t / 2 * mpmath.log(4 / mpmath.pi)) / mpmath.pi - (n - mpf(1) / 2)
            guess = 2 * mpmath.pi * n / mpmath.log(n + 2) + 4
        return mpmath.findroot(f, guess)


def estimated_ordinate(n: int, kind: str = "zeta") -> mpf:
    try:
        store = reference_store(kind)
        if n <= len(store):
            with mpmath.workdps(30):
                return +store.records[n - 1].ordinate
    except (FileNotFoundError, KeyError, ModuleNotFoundError):
        pass
    return smooth_zero_estimate(n, kind)


def dominance_digits(m: int, t_next, t_after, power: int = 2) -> float:
    """Decimal places lost to the (n+2)-th zero at limit variable m.

    The recurrence solves x^(-p m) = R with R carrying the extra term
    x_2^(-p m); the induced error in x is about x (x/x_2)^(p m) / (p m).
    """
    pm = power * m
    rel = pm * math.log10(float(t_after) / float(t_next)) + math.log10(pm)
    return rel - math.log10(float(t_next))


def precision_plan(n: int, target_digits: int, kind: str = "zeta"):
    """``(m, working_digits, required_input_digits)`` for the (n+1)-th zero.

    m is the smallest limit variable whose dominance error reaches
    ``target_digits`` decimals.  Working digits cover the cancellation of
    unit-size terms down to ``t_(n+1)^(-2m)``.  Required input digits are
    set by the first zero, whose subtracted term is amplified most.
    """
    if n < 0:
        raise UsageError("n must be non-negative")
    if target_digits < 1:
        raise UsageError("target must be positive")
    t1 = estimated_ordinate(n + 1, kind)
    t2 = estimated_ordinate(n + 2, kind)
    m = 1
    while dominance_digits(m, t1, t2) < target_digits:
        m += 1
        if m > MAX_M:
            raise TargetInfeasible(f"target {target_digits} needs m > {MAX_M} for zero {n + 1}")
    working = int(target_digits + 2 * m * math.log10(float(t1)) + 20)
    working = max(working, 30)
    if working > MAX_DIGITS:
        raise TargetInfeasible(f"plan needs {working} digits, ceiling is {MAX_DIGITS}")
    required = 0
    for k in range(1, n + 1):
        tk = estimated_ordinate(k, kind)
        need = target_digits + (2 * m + 1) * math.log10(float(t1 / tk)) + math.log10(n) + 5
        required = max(required, int(math.ceil(need)))
    return m, working, required


# ---------------------------------------------------------------------------
# recurrences


def _decimal_capacity(x) -> int | None:
    """Decimals an input can vouch for: None for exact strings and integers."""
    if isinstance(x, (str, int)):
        return None
    if not isinstance(x, mpf):
        x = mpf(x)
    if x == 0:
        return None
    bits = int(x.man).bit_length()
    return int(bits * math.log10(2)) - 3 - max(0, int(mpmath.floor(mpmath.log10(abs(x)))) + 1)


def matching_decimals(a, b, max_digits: int = 10_000) -> int:
    """Leading decimals after the point on which a and b agree.

    Both numbers are rendered as decimal strings first, so a printed value
    such as ``...620`` is not read as its binary neighbour ``...6199...``.
    Binary inputs are only trusted to the length of their mantissa.
    """
    caps = [c for c in (_decimal_capacity(a), _decimal_capacity(b)) if c is not None]
    lengths = [len(x) for x in (a, b) if isinstance(x, str)]
    D = min(caps) if caps else max(lengths + [mpmath.mp.dps])
    D = max(0, min(max_digits, D))
    with mpmath.workdps(D + 40):
        a = mpf(a) if not isinstance(a, str) else mpmath.mpmathify(a)
        b = mpf(b) if not isinstance(b, str) else mpmath.mpmathify(b)
        if (a < 0) != (b < 0):
            return 0
        a, b = abs(a), abs(b)
        scale = mpf(10) ** D
        sa, sb = str(int(mpmath.nint(a * scale))), str(int(mpmath.nint(b * scale)))
    sa, sb = sa.zfill(D + 1), sb.zfill(D + 1)
    if len(sa) != len(sb) or sa[:len(sa) - D] != sb[:len(sb) - D]:
        return 0
    n = 0
    for x, y in zip(sa[len(sa) - D:], sb[len(sb) - D:]):
        if x != y:
            break
        n += 1
    return n


def _check_self_feed(known: ZeroStore, source: str, m: int):
    for r in known:
        if r.source == source and r.params.get("m") == m:
            raise SelfCancellation(
                f"zero {r.index} was produced by this recurrence at the same m={m}; "
                "subtracting it cancels the term the formula isolates"
            )


def _power_remainder(value, value_err, known: ZeroStore, terms, ctx, source, m, p,
                     lost=SelfCancellation):
    """Subtract known zeros' terms and run the self-cancellation and ladder checks.

    ``terms(t)`` is the subtracted term for ordinate t and the returned
    exponent p is such that d(log term)/d(log t) = -p.
    """
    ords = [r.ordinate for r in known]
    with ctx.workdps():
        subs = [terms(t) for t in ords]
        R = value - mpmath.fsum(subs)
        rounding = 100 * ctx.eps * (abs(value) + mpmath.fsum(abs(x) for x in subs))
        if abs(R) <= rounding:
            raise SelfCancellation("the remainder lost all significant digits")
        if abs(R) <= rounding + value_err:
            raise lost(
                f"remainder {mpmath.nstr(R, 3)} is within the input error {mpmath.nstr(value_err, 3)}"
            )
        ladder = mpf(0)
        for r, t, x in zip(known, ords, subs):
            ladder += x * p * mpf(10) ** (-r.claimed_digits) / t
        return R, ladder, rounding


def _ladder_verdict(R, ladder, t_new, p, need_digits: int, known: ZeroStore):
    # error in t_new from input zeros: t_new/p * ladder/R
    err = t_new / p * ladder / abs(R)
    if err > mpf(10) ** (-need_digits):
        first = known.records[0]
        raise LadderViolation(
            f"input zeros are too coarse: they move the result by {mpmath.nstr(err, 3)}, "
            f"more than the 1e-{need_digits} the limit variable supports "
            f"(zero {first.index} has {first.claimed_digits} digits)"
        )
    return err


def _digits_from_error(err) -> int:
    if err <= 0:
        return 10_000
    return max(0, int(mpmath.floor(-mpmath.log10(2 * err))))


def _even_recurrence(kind, known, m, ctx, source, value_fn):
    """Shared driver for the Z1 and beta routes: t = (Z(2m) - sum t_k^-2m)^(-1/2m)."""
    if int(m) != m or m < 1:
        raise UsageError("m must be a positive integer")
    m = int(m)
    if known.kind != kind:
        raise UsageError(f"need a {kind} store")
    _check_self_feed(known, source, m)
    n = len(known)

    def solve(mm):
        z = value_fn(mm, ctx)
        with ctx.workdps():
            R, ladder, rounding = _power_remainder(
                z.value, z.error_estimate, known, lambda t: t ** (-2 * mm), ctx, source, mm, 2 * mm)
            if R <= 0:
                return None, R, ladder, None
            t = R ** (-mpf(1) / (2 * mm))
            prec_err = t / (2 * mm) * (z.error_estimate + rounding) / R
            return t, R, ladder, prec_err

    t, R, ladder, prec_err = solve(m)
    with ctx.workdps():
        t_est = t if t is not None else estimated_ordinate(n + 1, kind)
        t_after = estimated_ordinate(n + 2, kind)
        model = dominance_digits(m, t_est, max(t_after, t_est * (1 + mpf(1) / 100)))
        if n:
            _ladder_verdict(R, ladder, t_est, 2 * m, max(1, int(model)), known)
        if t is None:
            raise SelfCancellation("the remainder is not positive")
        agreement = None
        if m > ESTIMATE_STEP:
            t_lo, *_ = solve(m - ESTIMATE_STEP)
            agreement = matching_decimals(t, t_lo)
        ladder_err = t / (2 * m) * ladder / R if n else mpf(0)
        claimed = _digits_from_error(prec_err + ladder_err)
        claimed = min(claimed, agreement if agreement is not None else max(0, int(model)))
        if known.records and t <= known.records[-1].ordinate:
            raise SelfCancellation("recurrence returned a zero below the known ones")
        return ZeroRecord.from_value(n + 1, t, claimed, source, kind, {"m": m},
                                     digits=ctx.digits)


def next_zero_z1(known: ZeroStore, m: int, ctx: PrecisionContext) -> ZeroRecord:
    """t_(n+1) = [Z1(2m) - sum_k t_k^-2m]^(-1/2m)."""
    from .secondary import z1_even

    return _even_recurrence("zeta", known, m, ctx, "recurrence_z1", z1_even)


def next_beta_zero(known: ZeroStore, m: int, ctx: PrecisionContext) -> ZeroRecord:
    """r_(n+1) = [B(2m) - sum_k r_k^-2m]^(-1/2m)."""
    from .secondary import b_even

    return _even_recurrence("beta", known, m, ctx, "recurrence_beta", b_even)


def _quadratic_recurrence(known, m, ctx, source, z3_fn, a2, lost=SelfCancellation):
    """t = [(Z3 - sum (a^2+t_k^2)^-m)^(-1/m) - a^2]^(1/2)."""
    n = len(known)

    def solve(mm):
        z3, z3_err = z3_fn(mm)
        with ctx.workdps():
            R, ladder, rounding = _power_remainder(
                z3, z3_err, known, lambda t: (a2 + t * t) ** (-mm), ctx, source, mm, 2 * mm, lost)
            x = R ** (-mpf(1) / mm) - a2 if R > 0 else mpf(-1)
            if x <= 0:
                return None, R, ladder, None, None
            t = mpmath.sqrt(x)
            # d t / t = (a^2 + t^2)/(2 m t^2) dR/R
            amp = (a2 + x) / (2 * mm * x)
            prec_err = t * amp * (z3_err + rounding) / R
            return t, R, ladder, prec_err, amp

    return solve


def next_zero_matsuoka(known: ZeroStore, m: int, ctx: PrecisionContext) -> ZeroRecord:
    """t_(n+1) from Z3(m) ~ (Z2(m)^2 - Z2(2m))/2; any integer m >= 2."""
    from .secondary import z3_asymptotic

    if int(m) != m or m < 2:
        raise UsageError("m must be an integer >= 2")
    m = int(m)
    if known.kind != "zeta":
        raise UsageError("need a zeta store")
    source = "recurrence_matsuoka"
    _check_self_feed(known, source, m)
    n = len(known)
    a2 = mpf(1) / 4

    def z3_fn(mm):
        v = z3_asymptotic(mm, ctx)
        return v.value, v.error_estimate

    solve = _quadratic_recurrence(known, m, ctx, source, z3_fn, a2)
    t, R, ladder, prec_err, amp = solve(m)
    with ctx.workdps():
        t = _quadratic_checks(known, m, t, R, ladder, a2)
        model = _matsuoka_model_digits(m, t, estimated_ordinate(n + 2), a2)
        agreement = None
        if m - ESTIMATE_STEP >= 2:
            t_lo, *_ = solve(m - ESTIMATE_STEP)
            agreement = matching_decimals(t, t_lo)
        ladder_err = t * amp * ladder / R if n else mpf(0)
        claimed = _digits_from_error(prec_err + ladder_err)
        claimed = min(claimed, agreement if agreement is not None else max(0, int(model)))
        if known.records and t <= known.records[-1].ordinate:
            raise SelfCancellation("recurrence returned a zero below the known ones")
        return ZeroRecord.from_value(n + 1, t, claimed, source, "zeta", {"m": m}, digits=ctx.digits)


def _quadratic_checks(known, m, t, R, ladder, a2):
    """Ladder first, then the sign of the radicand."""
    n = len(known)
    t_est = t if t is not None else estimated_ordinate(n + 1)
    if n:
        amp = (a2 + t_est * t_est) / (2 * m * t_est * t_est)
        model = _matsuoka_model_digits(m, t_est, estimated_ordinate(n + 2), a2)
        _ladder_verdict(R, ladder, t_est, 1 / amp, max(1, int(model)), known)
    if t is None:
        raise NegativeRadicand("the remainder raised to -1/m does not exceed a^2")
    return t


def _matsuoka_model_digits(m, t1, t2, a2):
    """Decimals limited by the cross term 2 w_1 w_2 in Z2(m)^2.

    |w_1 w_2| <= 4 |rho_1|^-m |rho_2|^-m, relative to |rho_1|^-2m that is
    4 (|rho_1|/|rho_2|)^m; the result moves by t (a^2+t^2)/(2 m t^2) times
    the relative error of the remainder.
    """
    r1 = math.sqrt(float(a2 + t1 * t1))
    r2 = math.sqrt(float(a2 + t2 * t2))
    rel = 8 * (r1 / r2) ** m
    amp = float((a2 + t1 * t1) / (2 * m * t1 * t1))
    err = float(t1) * amp * rel
    return -math.log10(err) if err > 0 else 1e9


def next_zero_shifted(known: ZeroStore, m: int, a, K: int, ctx: PrecisionContext,
                      *, exact_limit: int | None = None) -> ZeroRecord:
    """t_(n+1) = [(Z2(m|a)^2/2 - Z2(2m|a)/2 - sum (a^2+t_k^2)^-m)^(-1/m) - a^2]^(1/2).

    The accuracy claim comes from an error model rather than a second run:
    the von Mangoldt tail bounds on Z2(m|a) and Z2(2m|a), and the cross term
    ``8 (|a+i t_1|/|a+i t_2|)^m`` of the asymptotic Z3.
    """
    if int(m) != m or m < 2:
        raise UsageError("m must be an integer >= 2")
    m = int(m)
    if known.kind != "zeta":
        raise UsageError("need a zeta store")
    source = "recurrence_shifted"
    _check_self_feed(known, source, m)
    n = len(known)
    with ctx.workdps():
        a = to_mp(a)
        a2 = a * a
    kw = {} if exact_limit is None else {"exact_limit": exact_limit}
    zs = z2_shifted(m, a, K, ctx, **kw)
    zd = z2_shifted(2 * m, a, K, ctx, **kw)
    with ctx.workdps():
        z3 = (zs.value ** 2 - zd.value) / 2
        z3_err = abs(zs.value) * zs.error_estimate + zd.error_estimate / 2

    def z3_fn(mm):
        return z3, z3_err

    solve = _quadratic_recurrence(known, m, ctx, source, z3_fn, a2, TruncationDominates)
    t, R, ladder, prec_err, amp = solve(m)
    with ctx.workdps():
        t = _quadratic_checks(known, m, t, R, ladder, a2)
        model = _matsuoka_model_digits(m, t, estimated_ordinate(n + 2), a2)
        dominance_err = mpf(10) ** (-model)
        ladder_err = t * amp * ladder / R if n else mpf(0)
        total_err = prec_err + ladder_err + dominance_err
        claimed = _digits_from_error(total_err)
        if known.records and t <= known.records[-1].ordinate:
            raise SelfCancellation("recurrence returned a zero below the known ones")
        rec = ZeroRecord.from_value(n + 1, t, claimed, source, "zeta",
                                    {"m": m, "a": mpmath.nstr(a, 15), "K": int(K)}, digits=ctx.digits)
        rec.params["error_estimate"] = mpmath.nstr(total_err, 5)
        return rec


def next_zero_jacobi(known: ZeroStore, s, z4: SecondaryValue, ctx: PrecisionContext) -> ZeroRecord:
    """t_(n+1) = sqrt(-log(Z4(s) - sum_k exp(-t_k^2 s)) / s).

    The remainder must exceed twice the error of the supplied Z4 value;
    otherwise the value carries no information about the next zero.
    """
    if known.kind != "zeta":
        raise UsageError("need a zeta store")
    n = len(known)
    with ctx.workdps():
        s = to_mp(s)
        if s <= 0:
            raise UsageError("s must be positive")
        subs = [mpmath.exp(-(t * t) * s) for t in known.ordinates()]
        R = z4.value - mpmath.fsum(subs)
        if not z4.error_estimate < R / 2:
            raise InsufficientZ4Precision(
                f"Z4 error {mpmath.nstr(z4.error_estimate, 3)} is not below half the remainder "
                f"{mpmath.nstr(R, 3)}; the next zero's term is not resolved"
            )
        if R <= 0:
            raise NegativeLogArgument("Z4(s) minus the known terms is not positive")
        x = -mpmath.log(R) / s
        if x <= 0:
            raise NegativeLogArgument("-log(remainder)/s is not positive")
        t = mpmath.sqrt(x)
        ladder = mpf(0)
        for r, tk, e in zip(known, known.ordinates(), subs):
            ladder += e * 2 * tk * s * mpf(10) ** (-r.claimed_digits)
        err = (z4.error_estimate + ladder) / (2 * t * s * R)
        t_after = estimated_ordinate(n + 2)
        dominance = mpmath.exp(-(t_after ** 2 - t * t) * s) / (2 * t * s)
        claimed = _digits_from_error(err + dominance)
        if known.records and t <= known.records[-1].ordinate:
            raise SelfCancellation("recurrence returned a zero below the known ones")
        return ZeroRecord.from_value(n + 1, t, claimed, "recurrence_jacobi", "zeta",
                                     {"s": mpmath.nstr(s, 15)}, digits=ctx.digits)


def z1_direct(s, zeros: Iterable, ctx: PrecisionContext):
    """sum t_k^-s over given ordinates, with the tail estimated by the
    smooth density integral int_T^inf t^-s dN0(t)."""
    ords = [to_mp(getattr(r, "ordinate", r)) for r in zeros]
    with ctx.workdps():
        s = to_mp(s)
        head = mpmath.fsum(t ** (-s) for t in ords)
        T = (ords[-1] + smooth_zero_estimate(len(ords) + 1)) / 2 if ords else mpf(10)
        density = lambda t: mpmath.log(t / (2 * mpmath.pi)) / (2 * mpmath.pi)  # noqa: E731
        tail = mpmath.quad(lambda t: t ** (-s) * density(t), [T, 2 * T, mpmath.inf])
        return head, tail


def beta_hurwitz_check(m: int, ctx: PrecisionContext):
    """2^-2m zeta(2m, 3/4) and 2^(2m-1)[lambda(2m) - beta(2m)], which agree."""
    from .kernel import dirichlet_beta, zeta

    with ctx.workdps():
        lhs = mpf(2) ** (-2 * m) * hurwitz_zeta(2 * m, mpf(3) / 4, ctx)
        lam = (1 - mpf(2) ** (-2 * m)) * zeta(2 * m, ctx)
        rhs = mpf(2) ** (2 * m - 1) * (lam - dirichlet_beta(2 * m, ctx))
        return lhs, rhs
