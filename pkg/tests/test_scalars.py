import math
import random
from fractions import Fraction as F

import pytest

from ospyang.scalars import (
    GammaPoleError,
    SeriesError,
    TruncatedSeries,
    gamma,
    gamma1,
    log_gamma,
    rho,
    series_exp,
    series_invert,
    series_log,
)


def series(coeffs, order):
    return TruncatedSeries(coeffs, order)


def test_invert_identity():
    one = TruncatedSeries.one_series(5)
    assert series_invert(one) == one


def test_invert_geometric():
    s = series({0: F(1), 1: F(1)}, 3)
    assert series_invert(s) == series({0: F(1), 1: F(-1), 2: F(1), 3: F(-1)}, 3)


def test_invert_round_trip():
    s = series({0: F(1), 1: F(2), 2: F(1)}, 3)
    prod = s * series_invert(s)
    assert prod == TruncatedSeries.one_series(3)


def test_invert_random_round_trips():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(3, 20)
        coeffs = {0: F(rng.randint(1, 5))}
        for k in range(1, n + 1):
            coeffs[k] = F(rng.randint(-6, 6), rng.randint(1, 4))
        s = series(coeffs, n)
        assert s * series_invert(s) == TruncatedSeries.one_series(n)


def test_invert_rejects_zero_constant():
    with pytest.raises(SeriesError):
        series_invert(series({1: F(1)}, 3))


def test_log_identity_and_mercator():
    assert series_log(TruncatedSeries.one_series(4)).is_zero()
    s = series({0: F(1), 1: F(1)}, 3)
    assert series_log(s) == series({1: F(1), 2: F(-1, 2), 3: F(1, 3)}, 3)


def test_log_exp_round_trip():
    s = series({0: F(1), 1: F(3), 2: F(-1)}, 6)
    assert series_exp(series_log(s)) == s


def test_log_needs_unit_constant():
    with pytest.raises(SeriesError):
        series_log(series({0: F(2)}, 3))


def test_series_positive_powers_supported_in_arithmetic():
    # negative exponents = positive powers of u; products truncate both ways
    s = TruncatedSeries({-1: F(1), 2: F(1)}, order=3, low=-2)
    t = s * s
    assert t[-2] == 1 and t[1] == 2
    with pytest.raises(SeriesError):
        series_invert(s)


def test_rational_arithmetic_sanity():
    rng = random.Random(3)
    for _ in range(50):
        a = F(rng.randint(-9, 9), rng.randint(1, 9))
        b = F(rng.randint(-9, 9), rng.randint(1, 9))
        c = F(rng.randint(-9, 9), rng.randint(1, 9))
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


# --- gamma ------------------------------------------------------------------

def test_gamma_against_stdlib():
    for x in (0.5, 1.0, 2.5, 7.3, 17.0, -0.7, -2.3, 43.5):
        assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12)


def test_log_gamma_against_stdlib():
    for x in (0.5, 3.0, 25.0, 120.7, 1e4):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-10)


def test_gamma_pole():
    with pytest.raises(GammaPoleError):
        gamma(-3.0)


def test_gamma1_values():
    # Gamma(1) = 1 and Gamma(2) = 1 give closed forms 3/sqrt(6 pi), 9/sqrt(6 pi)
    assert gamma1(3.0, 3.0) == pytest.approx(3.0 / math.sqrt(6 * math.pi), rel=1e-12)
    assert gamma1(6.0, 3.0) == pytest.approx(9.0 / math.sqrt(6 * math.pi), rel=1e-12)
    assert gamma1(3.0, 3.0) == pytest.approx(0.690988, abs=1e-6)
    assert gamma1(6.0, 3.0) == pytest.approx(2.072965, abs=1e-6)


def test_gamma1_shift_identity():
    # gamma1(x + w | w) / gamma1(x | w) = x
    assert gamma1(1.7 + 3.0, 3.0) / gamma1(1.7, 3.0) == pytest.approx(1.7, abs=1e-12)
    for i in range(1, 40):
        x = -4.0 + 0.21 * i
        if abs(x) < 1e-9 or abs(x / 3.0 - round(x / 3.0)) < 1e-9:
            continue
        assert gamma1(x + 3.0, 3.0) / gamma1(x, 3.0) == pytest.approx(x, rel=1e-11)


def test_gamma1_pole_named():
    with pytest.raises(GammaPoleError) as err:
        gamma1(0.0, 3.0)
    assert "0" in str(err.value)


def test_rho_finite_positive():
    assert rho(0.5) > 0
    assert math.isfinite(rho(0.5))


def test_rho_unitarity_scalar():
    # rho(u) rho(-u) equals the Real64 scalar of R(u)R(-u); checked in
    # rmatrix, here only finiteness of the combination
    val = rho(0.7) * rho(-0.7)
    assert math.isfinite(val)


def test_rho_pole():
    with pytest.raises(GammaPoleError):
        rho(0.0)
