"""Extract zeros one after another, each from the previous ones.

Every step feeds the recurrence its own earlier outputs, so the claimed
digits fall quickly: the precision ladder in action.  Compare with
``--reference``, which feeds the bundled high-precision zeros instead.

    python3 demos/zero_ladder.py --m 40 --count 4
"""

import argparse

from seczeta import errors
from seczeta.kernel import PrecisionContext
from seczeta.zeros import ZeroStore, matching_decimals, next_zero_z1, reference_store


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=40)
    ap.add_argument("--count", type=int, default=4)
    ap.add_argument("--digits", type=int, default=200)
    ap.add_argument("--reference", action="store_true", help="feed bundled zeros instead")
    args = ap.parse_args()
    ref = reference_store("zeta")
    known = ZeroStore("zeta")
    ctx = PrecisionContext(args.digits)
    for n in range(args.count):
        feed = ref.first(n) if args.reference else known
        try:
            # a zero from the same m cannot be fed back; step m for each level
            rec = next_zero_z1(feed, args.m + (0 if args.reference else n), ctx)
        except errors.SecZetaError as exc:
            print(f"t{n + 1}: {type(exc).__name__}: {exc}")
            break
        true = matching_decimals(rec.ordinate, ref.records[n].ordinate)
        print(f"t{n + 1} = {rec.truncated(5)}  claimed {rec.claimed_digits}, correct {true}")
        known.append(rec)


if __name__ == "__main__":
    main()
