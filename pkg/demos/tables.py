"""Print a convergence table as CSV.

    python3 demos/tables.py --id 4 --digits 300
"""

import argparse
import csv
import sys

from seczeta.kernel import PrecisionContext
from seczeta.tables import table_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--id", type=int, choices=(1, 2, 3, 4), default=1)
    ap.add_argument("--digits", type=int, default=300)
    ap.add_argument("--ms", help="comma-separated limit variables")
    args = ap.parse_args()
    ms = [int(x) for x in args.ms.split(",")] if args.ms else None
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["m", "value", "matched_digits"])
    for row in table_rows(args.id, PrecisionContext(args.digits), ms=ms):
        w.writerow([row.m, row.value_text(30), row.matched_digits])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
