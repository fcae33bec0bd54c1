"""Primes from zeta, and from its zeros.

Golomb's recurrence with the exact zeta function, then the same recurrence
with zeta rebuilt from the bundled zeros through the Hadamard product.

    python3 demos/prime_duality.py --count 6
"""

import argparse

from seczeta import errors
from seczeta.kernel import PrecisionContext
from seczeta.primes import PrimeList, feasible_hadamard_s, golomb_next_prime_exact
from seczeta.zeros import reference_store


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=6)
    ap.add_argument("--s", type=int, default=128)
    args = ap.parse_args()
    ctx = PrecisionContext(50)
    known = []
    for _ in range(args.count):
        known.append(golomb_next_prime_exact(PrimeList(tuple(known)), args.s, ctx))
    print("exact zeta, s=%d:" % args.s, " ".join(map(str, known)))

    zeros = reference_store("zeta")
    known = []
    while len(known) < args.count:
        try:
            s, p = feasible_hadamard_s(PrimeList(tuple(known)), zeros, ctx)
        except errors.TruncationDominates as exc:
            print(f"after {known}: {len(zeros)} zeros are not enough ({exc})")
            break
        print(f"from {len(zeros)} zeros: p = {p} at s = {s}")
        known.append(p)


if __name__ == "__main__":
    main()
