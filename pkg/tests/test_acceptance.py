"""Acceptance criteria 1-10.

Each test records one ``criterion k: PASS|FAIL ...`` line, printed as it runs
and repeated in the terminal summary.  Large-tier runs are opt-in through
SECZETA_LARGE=1 and record SKIP otherwise.  Expected values are the printed
reference values; nothing here is computed by the code under test.
"""

import random
from contextlib import contextmanager

import mpmath
import pytest
from mpmath import mpf

from seczeta import errors
from seczeta import primes as P
from seczeta import secondary as S
from seczeta import zeros as Z
from seczeta.derivatives import stieltjes_constants
from seczeta.kernel import PrecisionContext, dirichlet_beta, hurwitz_zeta, zeta
from seczeta.tables import table_rows
from seczeta.zeros import ZeroRecord, ZeroStore, matching_decimals, reference_store

from . import acceptance_log
from .conftest import LARGE

TABLE1 = {
    5: "14.102624784431488524304946186056",
    10: "14.134465134057435907124435534843",
    15: "14.134721950874675119831881762569",
    25: "14.134725141055464326339414131271",
    50: "14.134725141734693789641535771021",
}
TABLE3 = {
    2: "5.561891787634141032446012810136",
    7: "14.116625853057249358432588137893",
    15: "14.133795710050725394699252528681",
    25: "14.134700629574414322701677282886",
    50: "14.134725141835685792188021492482",
    100: "14.134725141734693789329888107217",
}
TABLE4 = {
    1: "3.580234150633150009323781248620",
    5: "6.017679912591888584424309703505",
    10: "6.020941550676489284027261163265",
    25: "6.020948904697249155966074566560",
    50: "6.020948904697596654902511020221",
    100: "6.020948904697596654902511521612",
}
T1_M250 = ("14.13472514173469379045725198356247027078425711569924"
           "317568556746014996342980925676494901")  # 87 decimals
Z1_EVEN = {
    2: "0.023104993115418970788933810430",
    4: "0.000037172599285269686164866262",
    6: "0.000000144173931400973279695381",
    8: "0.000000000663031680252990869873",
    10: "0.00000000000321366415061660121",
}
Z1_ODD = {
    3: "0.000729548272709704215875518569",
    5: "0.000002231188699502103328640628",
    7: "0.000000009675344542702350408719",
    9: "0.000000000045991912392894862969",
    11: "0.00000000000022556506251559664",
}
Z2_PRINTED = {
    1: "0.023095708966121033814310247906",
    2: "-0.046154317295804602757107990379",
    3: "-0.000111158231452105922762668238",
    4: "0.000073627221261689518326771307",
    5: "0.000000715093355762607735801093",
}
STIELTJES_T1 = {
    2: "5.561891787634141032446012810136",
    3: "13.757670503723662711511861003244",
    4: "12.161258748655529488677538477512",
}
Z4_A = "0.3946415860608135898036962860711"
Z4_B = "0.394641583198706998425270589196"
Z4_AB_MANTISSA = "2.862106591378425696874573151789"
Z4_DIRECT_MANTISSA = "2.912164200241304158784992817748"
SHIFTED_LARGE = "14.13473892414862370135"


@contextmanager
def criterion(k, title):
    notes: list[str] = []
    try:
        yield notes
    except pytest.skip.Exception:
        acceptance_log.record(f"criterion {k}: SKIP {title}; " + "; ".join(notes))
        raise
    except BaseException:
        acceptance_log.record(f"criterion {k}: FAIL {title}; " + "; ".join(notes))
        raise
    acceptance_log.record(f"criterion {k}: PASS {title}; " + "; ".join(notes))


def sig_match(x, printed: str) -> int:
    """Significant digits of ``x`` that agree with the printed mantissa."""
    with mpmath.workdps(80):
        e = int(mpmath.floor(mpmath.log10(abs(mpf(printed)))))
        return matching_decimals(mpf(x) * mpf(10) ** (-e), str(mpf(printed) * mpf(10) ** (-e))) + 1


def mantissa_match(x, mantissa: str) -> int:
    with mpmath.workdps(max(80, mpmath.mp.dps)):
        x = mpf(x)
        e = int(mpmath.floor(mpmath.log10(abs(x))))
        return matching_decimals(x * mpf(10) ** (-e), mantissa) + 1


def test_criterion_01_table1():
    with criterion(1, "Table 1 at 300 digits, m in {5,10,15,25,50}") as notes:
        rows = table_rows(1, PrecisionContext(300), ms=sorted(TABLE1))
        bad = []
        for r in rows:
            got = r.value_text(30)
            notes.append(f"m={r.m} {'ok' if got == TABLE1[r.m] else got}")
            if got != TABLE1[r.m]:
                bad.append(r.m)
        assert not bad, f"rows differ: {bad}"


def test_criterion_02_m250():
    with criterion(2, "t1 at m=250, 2000 digits, >= 85 of 87 decimals") as notes:
        if not LARGE:
            notes.append("large tier; set SECZETA_LARGE=1")
            pytest.skip("large tier")
        rec = Z.next_zero_z1(ZeroStore("zeta"), 250, PrecisionContext(2000))
        got = matching_decimals(rec.text, T1_M250)
        notes.append(f"{got} decimals match, {rec.claimed_digits} claimed")
        assert got >= 85


def test_criterion_03_table3():
    with criterion(3, "Table 3 rows m in {2,7,15,25,50,100}") as notes:
        rows = table_rows(3, PrecisionContext(300), ms=sorted(TABLE3))
        bad = []
        for r in rows:
            got = r.value_text(30)
            notes.append(f"m={r.m} {'ok' if got == TABLE3[r.m] else got}")
            if got != TABLE3[r.m]:
                bad.append(r.m)
        assert not bad, f"rows differ: {bad}"


def test_criterion_04_table4():
    with criterion(4, "Table 4 rows m in {1,5,10,25,50,100}; m=100 >= 45 digits of r1") as notes:
        rows = table_rows(4, PrecisionContext(300), ms=sorted(TABLE4))
        bad = []
        for r in rows:
            got = r.value_text(30)
            notes.append(f"m={r.m} {'ok' if got == TABLE4[r.m] else got}")
            if got != TABLE4[r.m]:
                bad.append(r.m)
        r1 = reference_store("beta").records[0].text
        sig = matching_decimals(rows[-1].value, r1) + 1
        notes.append(f"m=100 has {sig} significant digits of r1")
        assert not bad, f"rows differ: {bad}"
        assert sig >= 45


def test_criterion_05_special_values():
    with criterion(5, "Z1(2), Z1(4), Z2(1..5) by both routes, odd fixtures") as notes:
        c = PrecisionContext(60)
        worst = 100
        # the printed values carry 30 decimals; agreement counts decimals
        for m in (1, 2):
            worst = min(worst, matching_decimals(S.z1_even(m, c).value, Z1_EVEN[2 * m]))
        table = stieltjes_constants(6, c)
        for m, printed in Z2_PRINTED.items():
            worst = min(worst, matching_decimals(S.z2_closed(m, c).value, printed))
            if m >= 2:
                worst = min(worst, matching_decimals(S.z2_stieltjes(m, table).value, printed))
        notes.append(f"worst agreement {worst} of 30 decimals")
        # the remaining even rows of the same table, as a cross-check
        for m in (3, 4, 5):
            v = S.z1_even(m, c).value
            assert matching_decimals(v, Z1_EVEN[2 * m]) >= len(Z1_EVEN[2 * m]) - 3
        odd_ok = all(S._Z1_ODD[m] == text for m, text in Z1_ODD.items())
        with mpmath.workdps(60):
            odd_ok &= all(matching_decimals(S.z1_fixture_odd(m), t) >= len(t) - 2 for m, t in Z1_ODD.items())
        notes.append(f"odd fixtures {'exact' if odd_ok else 'differ'}")
        assert worst >= 28 and odd_ok


def test_criterion_06_stieltjes_closed_forms():
    with criterion(6, "t1 from Stieltjes-constant closed forms, m=2,3,4, >= 25 digits") as notes:
        c = PrecisionContext(60)
        table = stieltjes_constants(9, c)
        got = {}
        for m, printed in STIELTJES_T1.items():
            v = S.z3_asymptotic(m, c, table=table).value
            with mpmath.workdps(70):
                t = mpmath.sqrt(v ** (-mpf(1) / m) - mpf(1) / 4)
            got[m] = sig_match(t, printed)
        notes.append(", ".join(f"m={m}: {d} digits" for m, d in got.items()))
        # the printed m=2 polynomial, evaluated on the computed constants
        with mpmath.workdps(70):
            g, g1, g2, g3 = (table.gammas[k] for k in range(4))
            pi2 = mpmath.pi ** 2
            poly = (2 * g1 - pi2 * g1 / 4 + g1 ** 2 - g * g2 - g3 / 3 + g ** 2 - pi2 / 8
                    - g ** 2 * pi2 / 8 + 5 * mpmath.pi ** 4 / 384)
            lit = sig_match(mpmath.sqrt(poly ** -0.5 - mpf(1) / 4), STIELTJES_T1[2])
        notes.append(f"literal m=2 polynomial: {lit} digits")
        assert min(got.values()) >= 25 and lit >= 25


def test_criterion_07_z4():
    with criterion(7, "Z4 closed form at K=1e7: A, B >= 20 digits, A-B >= 8; direct sum >= 25") as notes:
        c = PrecisionContext(40)
        a, b, sv = S.z4_closed(2, 10 ** 7, c)
        da, db = sig_match(a, Z4_A), sig_match(b, Z4_B)
        dab = mantissa_match(sv.value, Z4_AB_MANTISSA)
        direct = S.z4_direct(2, reference_store("zeta").first(2), PrecisionContext(60))
        dd = mantissa_match(direct.value, Z4_DIRECT_MANTISSA)
        try:
            Z.next_zero_jacobi(ZeroStore("zeta"), 2, sv, c)
            refused = False
        except errors.InsufficientZ4Precision:
            refused = True
        a6, _, _ = S.z4_closed(2, 10 ** 6, c)
        notes.append(f"A {da}, B {db}, A-B {dab}, direct {dd} digits; "
                     f"A at K=1e6 matches {sig_match(a6, Z4_A)}; "
                     f"extraction refused: {refused}")
        assert dd >= 25 and refused
        assert da >= 20 and db >= 20 and dab >= 8


def test_criterion_08_shifted():
    with criterion(8, "shifted route s=50, a=15, K=1e6 gives >= 2 digits, estimate brackets error") as notes:
        ref = reference_store("zeta").records[0].ordinate
        try:
            rec = Z.next_zero_shifted(ZeroStore("zeta"), 50, 15, 10 ** 6, PrecisionContext(60))
        except errors.TruncationDominates as exc:
            notes.append(f"TruncationDominates: {exc}")
            raise
        with mpmath.workdps(60):
            actual = abs(rec.ordinate - ref)
        est = mpf(rec.params["error_estimate"])
        notes.append(f"claimed {rec.claimed_digits}, error {mpmath.nstr(actual, 3)}, "
                     f"estimate {mpmath.nstr(est, 3)}")
        assert rec.claimed_digits >= 2 and actual <= est


def test_criterion_08_shifted_large():
    with criterion(8, "(large) shifted route at K=1e9 reproduces 4 decimals") as notes:
        if not LARGE:
            notes.append("large tier; set SECZETA_LARGE=1")
            pytest.skip("large tier")
        ref = reference_store("zeta").records[0].text
        rec = Z.next_zero_shifted(ZeroStore("zeta"), 50, 15, 10 ** 9, PrecisionContext(60))
        d = matching_decimals(rec.text, ref)
        notes.append(f"{d} decimals of t1, {matching_decimals(rec.text, SHIFTED_LARGE)} of the printed value")
        assert d >= 4


def test_criterion_09_primes():
    with criterion(9, "Golomb 2..13 at s=128; Hadamard 2, 3; hadamard(0) = -1/2") as notes:
        c = PrecisionContext(50)
        known = []
        for _ in range(6):
            known.append(P.golomb_next_prime_exact(P.PrimeList(tuple(known)), 128, c))
        store = reference_store("zeta")
        s1, p1 = P.feasible_hadamard_s(P.PrimeList(()), store, c)
        s2, p2 = P.feasible_hadamard_s(P.PrimeList((2,)), store, c)
        h0 = P.hadamard_zeta(0, store, c).value
        with mpmath.workdps(70):
            err0 = abs(h0 + mpf(1) / 2)
        notes.append(f"Golomb {known}; Hadamard {p1} at s={s1}, {p2} at s={s2}; "
                     f"|hadamard(0)+1/2| = {mpmath.nstr(err0, 3)}")
        assert known == [2, 3, 5, 7, 11, 13]
        assert (p1, p2) == (2, 3)
        assert err0 < mpf(10) ** -50


def test_criterion_10_properties(tmp_path):
    with criterion(10, "property suites") as notes:
        c = PrecisionContext(50)
        # quarter-shift identity for 20 random s
        rng = random.Random(10)
        for _ in range(20):
            s = rng.randint(2, 120)
            with mpmath.workdps(200):
                lhs = mpf(2) ** -s * hurwitz_zeta(s, mpf(5) / 4, c)
                rhs = mpf(2) ** s * (((1 - mpf(2) ** -s) * zeta(s, c) + dirichlet_beta(s, c)) / 2 - 1)
                assert abs(lhs - rhs) <= mpf(10) ** -48 * mpf(2) ** s
        notes.append("identity ok")
        # Z2 by log-derivatives and by Stieltjes cumulants
        table = stieltjes_constants(10, c)
        for m in range(2, 11):
            a, b = S.z2_closed(m, c), S.z2_stieltjes(m, table)
            with mpmath.workdps(60):
                assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + mpf(10) ** -48
        notes.append("Z2 routes agree")
        # recurrence output against the Newton oracle
        for kind, count, step in (("zeta", 5, Z.next_zero_z1), ("beta", 3, Z.next_beta_zero)):
            ref = reference_store(kind)
            for n in range(count):
                rec = step(ref.first(n), 20, PrecisionContext(120))
                oracle = Z.refine_zero_newton(kind, rec.ordinate, rec.claimed_digits + 10)
                with mpmath.workdps(rec.claimed_digits + 40):
                    assert abs(rec.ordinate - oracle.ordinate) < mpf(10) ** -rec.claimed_digits
                if n:
                    assert rec.ordinate > ref.records[n - 1].ordinate
        notes.append("recurrences agree with oracle")
        # self-cancellation guard
        t1 = Z.next_zero_z1(ZeroStore("zeta"), 15, PrecisionContext(80))
        with pytest.raises(errors.SelfCancellation):
            Z.next_zero_z1(ZeroStore("zeta", [t1]), 15, PrecisionContext(80))
        notes.append("self-cancellation fires")
        # store round trip
        path = tmp_path / "zeros.jsonl"
        store = ZeroStore("zeta", list(reference_store("zeta").first(5)) + [
            ZeroRecord(6, t1.text.replace("14.", "37.", 1), 0, "imported")])
        store.save(path)
        back = ZeroStore.load(path)
        assert [r.text for r in back] == [r.text for r in store]
        assert path.read_text() == back.dumps()
        notes.append("store round trip exact")
