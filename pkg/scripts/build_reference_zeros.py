"""Regenerate the bundled reference zero stores.

Seeds come from sign changes of the rotated L-function on the critical line;
each seed is polished by the Newton oracle.  Zeta zeros are cross-checked
against ``mpmath.zetazero``.
"""

import argparse
import sys
import time
from pathlib import Path

import mpmath

from seczeta.zeros import ZeroStore, refine_zero_newton, scan_zeros

DATA = Path(__file__).resolve().parents[1] / "src" / "seczeta" / "data"


def build(kind: str, count: int, upto: float, digits: int, check: bool) -> ZeroStore:
    brackets = scan_zeros(kind, upto)
    if len(brackets) < count:
        sys.exit(f"{kind}: found {len(brackets)} sign changes below {upto}, need {count}")
    store = ZeroStore(kind)
    for i, (a, b) in enumerate(brackets[:count], start=1):
        t0 = time.time()
        rec = refine_zero_newton(kind, (a + b) / 2, digits, index=i)
        store.append(rec)
        msg = f"{kind} {i:3d} {rec.text[:25]} {time.time() - t0:.1f}s"
        if check and kind == "zeta":
            with mpmath.workdps(digits + 20):
                diff = abs(rec.ordinate - mpmath.zetazero(i).imag)
                if diff > mpmath.mpf(10) ** (-digits):
                    sys.exit(f"zero {i} disagrees with mpmath by {mpmath.nstr(diff, 3)}")
                msg += f" |diff|={mpmath.nstr(diff, 2)}"
        print(msg, flush=True)
    return store


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--digits", type=int, default=1010)
    p.add_argument("--zeta", type=int, default=100)
    p.add_argument("--beta", type=int, default=10)
    p.add_argument("--no-check", action="store_true")
    args = p.parse_args(argv)
    DATA.mkdir(exist_ok=True)
    build("beta", args.beta, 32.0, args.digits, False).save(DATA / "beta_zeros.jsonl")
    build("zeta", args.zeta, 237.5, args.digits, not args.no_check).save(DATA / "zeta_zeros.jsonl")


if __name__ == "__main__":
    main()
