import json
import random

import mpmath
import pytest
from mpmath import mpf

from seczeta import errors
from seczeta import secondary as S
from seczeta.derivatives import stieltjes_constants
from seczeta.kernel import PrecisionContext, dirichlet_beta, hurwitz_zeta, zeta
from seczeta.primes import von_mangoldt
from seczeta.zeros import beta_hurwitz_check, reference_store

from .conftest import decimals_equal, sig_digits

# printed values, 30 decimals
Z1_2 = "0.023104993115418970788933810430"
Z1_4 = "0.000037172599285269686164866262"
Z2 = {
    1: "0.023095708966121033814310247906",
    2: "-0.046154317295804602757107990379",
    3: "-0.000111158231452105922762668238",
    4: "0.000073627221261689518326771307",
    5: "0.000000715093355762607735801093",
}


@pytest.fixture(scope="module")
def c60():
    return PrecisionContext(60)


def test_z1_even_printed_values(c60):
    assert decimals_equal(S.z1_even(1, c60).value, Z1_2) >= 30
    assert decimals_equal(S.z1_even(2, c60).value, Z1_4) >= 30


def test_z1_even_against_direct_sum_bound(c60):
    # Z1(4) exceeds the sum over 100 zeros by a small positive tail
    ords = reference_store("zeta").ordinates()
    with mpmath.workdps(70):
        head = mpmath.fsum(t ** -4 for t in ords)
        v = S.z1_even(2, c60).value
        assert 0 < v - head < mpf(10) ** -6


def test_z1_validation(c60):
    with pytest.raises(errors.UsageError):
        S.z1_even(0, c60)


def test_z1_cancellation_surfaces():
    with pytest.raises(errors.NegativeResult):
        S.z1_even(40, PrecisionContext(30))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11])
def test_odd_fixtures_exact(m):
    text = S._Z1_ODD[m]
    with mpmath.workdps(50):
        v = S.z1_fixture_odd(m)
        decimals = len(text.split(".")[1])
        assert mpmath.nstr(v, 40, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)[: len(text)] == text or \
            abs(v - mpf(text)) < mpf(10) ** -(decimals + 15)


@pytest.mark.parametrize("m", [2, 4, 13, "x"])
def test_not_a_fixture(m):
    with pytest.raises(errors.NotAFixture):
        S.z1_fixture_odd(m)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_z2_closed_printed(c60, m):
    v = S.z2_closed(m, c60).value
    assert sig_digits(v, Z2[m]) > 26
    assert decimals_equal(v, Z2[m]) >= 29


def test_z2_cross_method():
    c = PrecisionContext(50)
    table = stieltjes_constants(10, c)
    for m in range(2, 11):
        a = S.z2_closed(m, c)
        b = S.z2_stieltjes(m, table)
        with mpmath.workdps(60):
            assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + mpf(10) ** -48


def test_quarter_shift_identity_random_m():
    # 2^-s zeta(s, 5/4) = 2^s [ ((1 - 2^-s) zeta(s) + beta(s))/2 - 1 ]
    c = PrecisionContext(50)
    rng = random.Random(16)
    for _ in range(20):
        s = rng.randint(2, 120)
        with mpmath.workdps(200):
            lhs = mpf(2) ** -s * hurwitz_zeta(s, mpf(5) / 4, c)
            rhs = mpf(2) ** s * (((1 - mpf(2) ** -s) * zeta(s, c) + dirichlet_beta(s, c)) / 2 - 1)
            # the bracket on the right is multiplied by 2^s after cancelling
            assert abs(lhs - rhs) <= mpf(10) ** -48 * mpf(2) ** s


def test_z3_asymptotic_low_m():
    c = PrecisionContext(60)
    v = S.z3_asymptotic(2, c).value
    with mpmath.workdps(70):
        t = mpmath.sqrt(v ** -0.5 - mpf(1) / 4)
        assert decimals_equal(t, "5.561891787634141032446012810136") >= 30


def test_z3_stieltjes_route_matches():
    c = PrecisionContext(50)
    table = stieltjes_constants(8, c)
    a = S.z3_asymptotic(4, c)
    b = S.z3_asymptotic(4, c, table=table)
    with mpmath.workdps(60):
        assert abs(a.value - b.value) < mpf(10) ** -45


def test_z2_shifted_against_direct_pair_sum():
    c = PrecisionContext(40)
    s, a, K = 6, 3, 10 ** 5
    v = S.z2_shifted(s, a, K, c)
    ords = reference_store("zeta").ordinates()
    with mpmath.workdps(60):
        direct = mpmath.fsum(2 * mpmath.re((a + 1j * t) ** -s) for t in ords)
        # zeros beyond t_100 contribute at most 2 int t^-s dN(t)
        T = ords[-1]
        tail = 2 * mpmath.quad(lambda t: t ** -s * mpmath.log(t / (2 * mpmath.pi)) / (2 * mpmath.pi), [T, mpmath.inf])
        assert abs(v.value - direct) <= v.error_estimate + tail
        assert v.error_estimate < mpf(10) ** -6


def test_z2_shifted_large_s_dominated_by_leading_term():
    # (a-1/2)^-s beats the trivial-zero term (a+5/2)^-s and every zero's
    # |a+it|^-s once s is large at fixed a
    c = PrecisionContext(40)
    v = S.z2_shifted(60, 3, 1000, c)
    with mpmath.workdps(50):
        lead = (mpf(3) - mpf(1) / 2) ** -60
        assert abs(v.value / lead - 1) < mpf(10) ** -10


def test_z2_shifted_large_a_follows_trivial_zero_term():
    # at fixed s the Hurwitz term ~ a^(1-s)/(2(s-1)) outgrows (a-1/2)^-s
    c = PrecisionContext(40)
    s, a = 4, mpf(2000)
    v = S.z2_shifted(s, a, 1000, c)
    with mpmath.workdps(50):
        assert abs(v.value / (-(a ** (1 - s)) / (2 * (s - 1))) - 1) < mpf(10) ** -2


def test_z2_shifted_invalid_shift(c60):
    with pytest.raises(errors.InvalidShift):
        S.z2_shifted(4, mpf(1) / 2, 100, c60)


def test_z4_direct_printed_mantissa():
    c = PrecisionContext(60)
    v = S.z4_direct(2, reference_store("zeta").first(2), c)
    with mpmath.workdps(80):
        assert sig_digits(v.value, mpf("2.912164200241304158784992817748e-174")) > 29


def test_z4_direct_limits():
    c = PrecisionContext(40)
    store = reference_store("zeta")
    v = S.z4_direct(mpf(10) ** -8, store.first(5), c)
    assert abs(v.value - 5) < mpf(10) ** -3
    wide = PrecisionContext(260)
    one = S.z4_direct(2, store.first(1), wide).value
    two = S.z4_direct(2, store.first(2), wide).value
    with mpmath.workdps(500):
        assert 0 < two - one < mpf(10) ** -383


def test_z4_direct_precision_guard():
    from seczeta.zeros import ZeroRecord, ZeroStore

    coarse = ZeroStore("zeta", [ZeroRecord(1, "14.1347251417", 10)])
    with pytest.raises(errors.InsufficientZeroPrecision):
        S.z4_direct(2, coarse, PrecisionContext(40))


def test_z4_b_against_direct_quadrature():
    c = PrecisionContext(40)
    got = S.z4_b(2, c)
    with mpmath.workdps(120):
        s = mpf(2)
        f = lambda u: mpmath.exp(-u * u / (16 * s)) * (1 / u - mpmath.exp(3 * u / 4) / mpmath.expm1(u))  # noqa: E731
        # the integrand tends to -1/4; the first piece is taken as constant
        integral = -mpf(10) ** -45 / 4 + mpmath.quad(f, [mpf(10) ** -45, 1, 10, mpmath.inf])
        root = mpmath.sqrt(mpmath.pi * s)
        ref = (mpmath.euler + mpmath.log(16 * mpmath.pi ** 2 * s)) / (8 * root) - integral / (4 * root)
        assert abs(got - ref) < mpf(10) ** -35


def test_z4_closed_a_against_direct_sum():
    c = PrecisionContext(40)
    a, _, sv = S.z4_closed(2, 2000, c)
    with mpmath.workdps(60):
        s = mpf(2)
        acc = mpmath.fsum(von_mangoldt(k) / mpmath.sqrt(k) * mpmath.exp(-mpmath.log(k) ** 2 / (4 * s))
                          for k in range(2, 2001))
        ref = -acc / (2 * mpmath.sqrt(mpmath.pi * s)) + mpmath.exp(s / 4)
        assert abs(a - ref) < mpf(10) ** -35
        assert sv.extra["truncation"] > 0


def test_b_even_printed():
    c = PrecisionContext(60)
    v = S.b_even(1, c).value
    with mpmath.workdps(70):
        r = v ** -0.5
        assert decimals_equal(r, "3.580234150633150009323781248620") >= 30
        r10 = S.b_even(10, PrecisionContext(80)).value ** (-mpf(1) / 20)
        assert decimals_equal(r10, "6.0209415506764892840") >= 19


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_lambda_beta_reduction(m):
    lhs, rhs = beta_hurwitz_check(m, PrecisionContext(50))
    with mpmath.workdps(60):
        assert abs(lhs - rhs) < mpf(10) ** -45 * mpf(4) ** m


def test_secondary_value_round_trip(c60):
    v = S.z2_closed(3, c60)
    text = v.to_json()
    w = S.SecondaryValue.from_json(text)
    assert w.to_json() == text
    assert json.loads(text)["family"] == "Z2"


def test_secondary_value_validation():
    with pytest.raises(errors.UsageError):
        S.SecondaryValue("Z9", "closed_form", {}, mpf(1), mpf(0))
    with pytest.raises(errors.UsageError):
        S.SecondaryValue("Z1", "closed_form", {}, mpf(1), mpf(-1))


def test_z4_printed_a_corresponds_to_smaller_truncation():
    # the printed A agrees with K = 10^6 to all its digits; at K = 10^7 the
    # extra terms (about 3e-9) change it from the ninth digit on
    c = PrecisionContext(40)
    a6, b, _ = S.z4_closed(2, 10 ** 6, c)
    assert decimals_equal(a6, "0.3946415860608135898036962860711") >= 30
    a7, _, _ = S.z4_closed(2, 10 ** 7, c)
    with mpmath.workdps(50):
        assert mpf(10) ** -9 < a6 - a7 < mpf(10) ** -8
        # the printed B differs from the quadrature near the 19th decimal
        assert abs(b - mpf("0.394641583198706998425270589196")) > mpf(10) ** -20
