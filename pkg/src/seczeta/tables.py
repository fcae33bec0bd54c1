"""Convergence tables: the limit formulas evaluated over a range of m.

Each row holds the limit variable, the value cut to 30 decimals, and the
number of leading decimals it shares with the bundled reference zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import UsageError
from .kernel import PrecisionContext
from .secondary import b_even, z1_even, z3_asymptotic
from .zeros import ZeroStore, matching_decimals, next_zero_z1, reference_store

DEFAULT_MS = {
    1: (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 50, 100),
    3: (2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 50, 100),
    4: (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 50, 100),
}
TABLE2_M = 60
TABLE2_ROWS = 10


@dataclass
class TableRow:
    m: int
    value: mpf
    matched_digits: int
    n: int | None = None

    def value_text(self, decimals: int = 30) -> str:
        return truncate_decimals(self.value, decimals)


def truncate_decimals(x, decimals: int) -> str:
    """Decimal string of ``x`` cut (not rounded) after ``decimals`` places."""
    with mpmath.workdps(decimals + 30):
        x = mpf(x)
        sign = "-" if x < 0 else ""
        x = abs(x)
        whole = int(mpmath.floor(x))
        frac = int(mpmath.floor((x - whole) * mpf(10) ** decimals))
        return f"{sign}{whole}.{frac:0{decimals}d}" if decimals else f"{sign}{whole}"


def t1_from_z1(m: int, ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return z1_even(m, ctx).value ** (-mpf(1) / (2 * m))


def t1_from_z3(m: int, ctx: PrecisionContext) -> mpf:
    v = z3_asymptotic(m, ctx)
    with ctx.workdps():
        return mpmath.sqrt(v.value ** (-mpf(1) / m) - mpf(1) / 4)


def r1_from_b(m: int, ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return b_even(m, ctx).value ** (-mpf(1) / (2 * m))


def table_rows(table_id: int, ctx: PrecisionContext, *, ms=None, m: int | None = None,
               rows: int | None = None) -> list[TableRow]:
    """Rows of convergence table ``table_id`` (1: Z1 route, 2: successive zeros
    from the Z1 route at fixed m, 3: the Z2/Z3 route, 4: the beta route)."""
    if table_id == 2:
        return _table2(ctx, m or TABLE2_M, rows or TABLE2_ROWS)
    if table_id not in DEFAULT_MS:
        raise UsageError(f"unknown table {table_id}; choose 1, 2, 3 or 4")
    fn, kind = {1: (t1_from_z1, "zeta"), 3: (t1_from_z3, "zeta"), 4: (r1_from_b, "beta")}[table_id]
    ref = reference_store(kind).records[0].ordinate
    out = []
    for mm in ms or DEFAULT_MS[table_id]:
        v = fn(int(mm), ctx)
        out.append(TableRow(int(mm), v, matching_decimals(v, ref)))
    return out


def _table2(ctx: PrecisionContext, m: int, rows: int) -> list[TableRow]:
    """Zero n+1 from the reference zeros 1..n, all at the same m."""
    ref = reference_store("zeta")
    if rows > len(ref):
        raise UsageError(f"only {len(ref)} reference zeros are bundled")
    out = []
    for n in range(rows):
        rec = next_zero_z1(ref.first(n) if n else ZeroStore("zeta"), m, ctx)
        v = rec.ordinate
        out.append(TableRow(m, v, matching_decimals(v, ref.records[n].ordinate), n=n))
    return out
