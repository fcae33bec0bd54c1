"""Command-line front end.

    seczeta zvalue --formula z1 --m 1 --precision 100
    seczeta zero --formula matsuoka --n 1 --m 15
    seczeta table --id 1
    seczeta prime --next --known 2,3 --s 128
    seczeta oracle --kind zeta --near 14.13 --digits 1000

Exit status is 0 on success, 2 for usage errors, and the error's own code
for numerical failures (see ``seczeta.errors``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import mpmath

from . import primes as P
from . import secondary as S
from . import tables as T
from . import zeros as Z
from .errors import SecZetaError, UsageError
from .kernel import PrecisionContext

FORMULAS_Z = ("z1", "z1odd", "z2", "z2shifted", "z3", "z4", "beta")
FORMULAS_ZERO = ("z1", "matsuoka", "shifted", "jacobi", "beta")


@dataclass
class RunConfig:
    command: str
    precision_digits: int | None = None
    limit_m: int | None = None
    formula: str | None = None
    shift_a: str | None = None
    truncation_k: int | None = None
    zeros_file: str | None = None
    output: str = "plain"

    def __post_init__(self):
        if self.precision_digits is not None and self.precision_digits < 30:
            raise UsageError("--precision must be at least 30")
        if self.limit_m is not None and self.limit_m < 1:
            raise UsageError("--m must be at least 1")
        if self.formula == "shifted" and self.shift_a is None:
            raise UsageError("--a is required for the shifted formula")
        if self.formula not in ("shifted", "z2shifted") and self.shift_a is not None:
            raise UsageError("--a only applies to the shifted formula")


# ---------------------------------------------------------------------------
# output


def _emit(rows: list[dict], fmt: str, fields: Sequence[str], plain_key: str) -> str:
    if fmt == "json":
        if len(rows) == 1:
            return json.dumps(rows[0], sort_keys=True) + "\n"
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue()
    return "".join(f"{r[plain_key]}\n" for r in rows)


def _claimed(err, digits: int) -> int:
    if err <= 0:
        return digits
    return max(0, min(digits, int(mpmath.floor(-mpmath.log10(2 * err)))))


def _sig_text(x, claimed_decimals: int) -> str:
    """Fixed-point text with claimed decimals plus five."""
    with mpmath.workdps(claimed_decimals + 40):
        if x == 0:
            return "0"
        decimals = claimed_decimals + 5
        if abs(x) < 1:
            # tiny values: keep significant digits rather than zeros
            lead = int(-mpmath.floor(mpmath.log10(abs(x))))
            decimals = max(decimals, lead + 20)
        return T.truncate_decimals(x, decimals)


def _value_row(sv: S.SecondaryValue) -> dict:
    claimed = _claimed(sv.error_estimate, sv.digits)
    with mpmath.workdps(sv.digits + 20):
        params = {k: (mpmath.nstr(v, 20) if isinstance(v, mpmath.mpf) else v) for k, v in sv.params.items()}
        row = {
            "family": sv.family,
            "method": sv.method,
            "params": params,
            "value": _sig_text(sv.value, claimed),
            "error_estimate": mpmath.nstr(sv.error_estimate, 5),
            "claimed_digits": claimed,
        }
        if "text" in sv.extra:
            row["value"] = sv.extra["text"]
        for k in ("A", "B"):
            if k in sv.extra:
                row[k] = _sig_text(sv.extra[k], claimed)
    return row


def _zero_row(rec: Z.ZeroRecord) -> dict:
    row = rec.to_dict()
    row["ordinate"] = rec.truncated(5)
    return row


# ---------------------------------------------------------------------------
# commands


def _ctx(args, default: int) -> PrecisionContext:
    return PrecisionContext(args.precision or default)


def _load_store(path: str | None, kind: str) -> Z.ZeroStore:
    if path in (None, "bundled"):
        return Z.reference_store(kind)
    return Z.ZeroStore.load(path, kind)


def cmd_zvalue(args) -> str:
    f = args.formula
    ctx = _ctx(args, 50)
    if f == "z1":
        sv = S.z1_even(_need(args.m, "--m"), ctx)
    elif f == "z1odd":
        s = _need(args.s, "--s")
        v = S.z1_fixture_odd(int(s))
        sv = S.SecondaryValue("Z1", "fixture", {"s": int(s)}, v, mpmath.mpf(10) ** -30, 30,
                              extra={"text": S._Z1_ODD[int(s)]})
    elif f == "z2":
        m = _need(args.m, "--m")
        if args.method == "stieltjes":
            table = P_stieltjes(m, ctx)
            sv = S.z2_stieltjes(m, table)
        else:
            sv = S.z2_closed(m, ctx)
    elif f == "z3":
        sv = S.z3_asymptotic(_need(args.m, "--m"), ctx)
    elif f == "z2shifted":
        s = _need(args.s or args.m, "--s")
        sv = S.z2_shifted(s, _need(args.a, "--a"), _need(args.k, "--k"), ctx)
    elif f == "z4":
        s = _need(args.s, "--s")
        if args.method == "direct_sum":
            store = _load_store(args.zeros_file, "zeta")
            if args.n:
                store = store.first(args.n)
            sv = S.z4_direct(s, store, ctx)
        else:
            _, _, sv = S.z4_closed(s, args.k or 10**6, ctx)
    elif f == "beta":
        sv = S.b_even(_need(args.m, "--m"), ctx)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown formula {f}")
    row = _value_row(sv)
    return _emit([row], args.output, ["family", "method", "value", "error_estimate", "claimed_digits"], "value")


def P_stieltjes(m: int, ctx: PrecisionContext):
    from .derivatives import stieltjes_constants

    return stieltjes_constants(m + 1, ctx)


def _need(v, flag: str):
    if v is None:
        raise UsageError(f"{flag} is required")
    return v


def _auto_precision(n: int, m: int, kind: str) -> int:
    # every route cancels unit-size terms down to about t_n^(-2m)
    t = float(Z.estimated_ordinate(n, kind))
    return max(50, int(2 * m * math.log10(t) + 60))


def cmd_zero(args) -> str:
    f = args.formula
    n = _need(args.n, "--n")
    if n < 1:
        raise UsageError("--n is the 1-based index of the zero to compute")
    kind = "beta" if f == "beta" else "zeta"
    if n > 1 or args.zeros_file:
        known = _load_store(args.zeros_file, kind)
        if len(known) < n - 1:
            raise UsageError(f"zeros file holds {len(known)} zeros, {n - 1} needed")
        known = known.first(n - 1)
    else:
        known = Z.ZeroStore(kind)
    if f in ("z1", "beta", "matsuoka", "shifted"):
        m = _need(args.m, "--m")
        prec = args.precision or _auto_precision(n, m, kind)
        ctx = PrecisionContext(prec)
        if f == "z1":
            rec = Z.next_zero_z1(known, m, ctx)
        elif f == "beta":
            rec = Z.next_beta_zero(known, m, ctx)
        elif f == "matsuoka":
            rec = Z.next_zero_matsuoka(known, m, ctx)
        else:
            rec = Z.next_zero_shifted(known, m, _need(args.a, "--a"), _need(args.k, "--k"), ctx)
    else:
        s = _need(args.s, "--s")
        ctx = _ctx(args, 120)
        if args.k:
            _, _, z4 = S.z4_closed(s, args.k, ctx)
        else:
            ref = Z.reference_store("zeta")
            z4 = S.z4_direct(s, ref.first(max(n + 1, args.n_direct or 0)), ctx)
        rec = Z.next_zero_jacobi(known, s, z4, ctx)
    if args.append:
        if not args.zeros_file or args.zeros_file == "bundled":
            raise UsageError("--append needs --zeros-file")
        store = Z.ZeroStore.load(args.zeros_file, kind)
        store.append(rec)
        with open(args.zeros_file, "a") as fh:
            fh.write(json.dumps(rec.to_dict()) + "\n")
    return _emit([_zero_row(rec)], args.output, ["index", "kind", "ordinate", "digits", "source"], "ordinate")


def cmd_table(args) -> str:
    ctx = _ctx(args, 300)
    ms = [int(x) for x in args.ms.split(",")] if args.ms else None
    rows = T.table_rows(args.id, ctx, ms=ms, m=args.m, rows=args.rows)
    out = []
    for r in rows:
        d = {"m": r.m, "value": r.value_text(30), "matched_digits": r.matched_digits}
        if r.n is not None:
            d["n"] = r.n
        out.append(d)
    fields = (["n"] if args.id == 2 else []) + ["m", "value", "matched_digits"]
    fmt = args.output if args.output != "plain" else "csv"
    return _emit(out, fmt, fields, "value")


def cmd_prime(args) -> str:
    if not args.next:
        raise UsageError("prime needs --next")
    known = [int(x) for x in args.known.split(",") if x.strip()] if args.known else []
    ctx = _ctx(args, 50)
    out = []
    for _ in range(args.count):
        plist = P.PrimeList(tuple(known))
        if args.from_zeros:
            zeros = _load_store(args.from_zeros, "zeta")
            if args.s == "auto":
                _, p = P.feasible_hadamard_s(plist, zeros, ctx)
            else:
                p = P.next_prime_from_zeros(plist, zeros, mpmath.mpf(args.s), ctx)
        else:
            s = 128 if args.s == "auto" else mpmath.mpf(args.s)
            p = P.golomb_next_prime_exact(plist, s, ctx)
        known.append(p)
        out.append({"prime": p})
    return _emit(out, args.output, ["prime"], "prime")


def cmd_oracle(args) -> str:
    ctx = _ctx(args, 50)
    rec = Z.refine_zero_newton(args.kind, mpmath.mpf(args.near), args.digits, ctx, index=args.index)
    return _emit([_zero_row(rec)], args.output, ["index", "kind", "ordinate", "digits", "source"], "ordinate")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seczeta", description="Secondary zeta functions and zeros of zeta.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, help="working precision in decimal digits (>= 30)")
    common.add_argument("--output", choices=("json", "csv", "plain"), default="plain")
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zvalue", parents=[common], help="evaluate a secondary zeta value")
    z.add_argument("--formula", choices=FORMULAS_Z, required=True)
    z.add_argument("--m", type=int, help="Z1(2m), B(2m), Z2(m), Z3(m)")
    z.add_argument("--s", type=str, help="argument for z1odd, z2shifted and z4")
    z.add_argument("--a", type=str, help="shift a > 1/2")
    z.add_argument("--k", type=int, help="von Mangoldt truncation K")
    z.add_argument("--n", type=int, help="number of zeros for z4 direct_sum")
    z.add_argument("--method", choices=("closed_form", "stieltjes", "direct_sum"), default="closed_form")
    z.add_argument("--zeros-file")
    z.set_defaults(func=cmd_zvalue)

    q = sub.add_parser("zero", parents=[common], help="extract a zero by a recurrence")
    q.add_argument("--formula", choices=FORMULAS_ZERO, required=True)
    q.add_argument("--n", type=int, help="1-based index of the zero to compute")
    q.add_argument("--m", type=int, help="limit variable")
    q.add_argument("--a", type=str)
    q.add_argument("--k", type=int)
    q.add_argument("--s", type=str, help="Jacobi argument")
    q.add_argument("--n-direct", type=int, help="zeros in the direct Z4 sum (jacobi)")
    q.add_argument("--zeros-file", help="JSON-lines store of known zeros, or 'bundled'")
    q.add_argument("--append", action="store_true", help="append the result to --zeros-file")
    q.set_defaults(func=cmd_zero)

    t = sub.add_parser("table", parents=[common], help="reproduce a convergence table")
    t.add_argument("--id", type=int, choices=(1, 2, 3, 4), required=True)
    t.add_argument("--ms", help="comma-separated limit variables")
    t.add_argument("--m", type=int, help="fixed limit variable for table 2")
    t.add_argument("--rows", type=int, help="rows for table 2")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("prime", parents=[common], help="next prime by Golomb's recurrence")
    r.add_argument("--next", action="store_true")
    r.add_argument("--known", default="", help="comma-separated initial primes")
    r.add_argument("--s", default="auto", help="exponent, or 'auto'")
    r.add_argument("--from-zeros", help="zero store for the Hadamard product, or 'bundled'")
    r.add_argument("--count", type=int, default=1)
    r.set_defaults(func=cmd_prime)

    o = sub.add_parser("oracle", parents=[common], help="Newton-refine a zero")
    o.add_argument("--kind", choices=("zeta", "beta"), required=True)
    o.add_argument("--near", required=True)
    o.add_argument("--digits", type=int, default=50)
    o.add_argument("--index", type=int)
    o.set_defaults(func=cmd_oracle)
    return p


def _check_config(args):
    RunConfig(
        command=args.command,
        precision_digits=args.precision,
        limit_m=getattr(args, "m", None),
        formula=getattr(args, "formula", None),
        shift_a=getattr(args, "a", None),
        truncation_k=getattr(args, "k", None),
        zeros_file=getattr(args, "zeros_file", None),
        output=args.output,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_config(args)
        text = args.func(args)
    except SecZetaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
