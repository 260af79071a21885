import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from dimstat.errors import (
    DegenerateSample,
    DimensionMismatch,
    FewerThanTwoRows,
    NonpositiveMagnitude,
    NonpositivePi,
    ScaleViolation,
)
from dimstat.model import Dataset
from dimstat.pi import extract_pi_groups
from dimstat.quantity import convert, default_registry
from dimstat.stats import (
    boxcox,
    fit_power_law,
    pi_power_fit,
    rainfall_mc_check,
    scaled_log_ratio,
    scaled_mle_normal,
    synthetic_tree_data,
    unconscious_regression_demo,
)

REG = default_registry()


def two_point_sample(var, n=10, centre=10.0):
    h = math.sqrt(var)
    return [centre + (h if i % 2 else -h) for i in range(n)]


# --- scaled likelihood -----------------------------------------------------


@pytest.mark.parametrize("s0", [("1", "mm^2"), ("1", "cm^2"), ("3.7", "in^2"), ("0.001", "m^2")])
def test_scaled_mle_ignores_sigma0(s0):
    y = two_point_sample(44.2)
    res = scaled_mle_normal(y, REG["mm"], REG.quantity(float(s0[0]), s0[1]))
    assert res.sigma2_hat.unit.symbol == "mm^2"
    assert res.sigma2_hat.magnitude == pytest.approx(44.2, rel=1e-12)
    assert res.ratio_dimension.is_dimensionless


def test_scaled_mle_matches_numeric_maximum():
    y = two_point_sample(44.2)
    res = scaled_mle_normal(y, REG["mm"], REG.quantity(1, "cm^2"))
    s = res.t_hat
    opt = optimize.minimize_scalar(lambda lt: -scaled_log_ratio(math.exp(lt), s, len(y)),
                                   bounds=(-10, 10), method="bounded", options={"xatol": 1e-12})
    assert math.exp(opt.x) == pytest.approx(res.t_hat, rel=1e-6)
    assert res.log_ratio_max >= scaled_log_ratio(res.t_hat * 1.01, s, len(y))


def test_scaled_mle_errors():
    with pytest.raises(DegenerateSample):
        scaled_mle_normal([1.0, 1.0, 1.0], REG["mm"], REG.quantity(1, "mm^2"))
    with pytest.raises(DegenerateSample):
        scaled_mle_normal([1.0], REG["mm"], REG.quantity(1, "mm^2"))
    with pytest.raises(DimensionMismatch):
        scaled_mle_normal([1.0, 2.0], REG["mm"], REG.quantity(1, "mm"))


# --- regression in two units -----------------------------------------------


def test_bugged_regression_depends_on_units():
    ft = unconscious_regression_demo(REG.quantity(1, "ft"), REG.quantity(3, "ft"), REG["ft"])
    inch = unconscious_regression_demo(REG.quantity(1, "ft"), REG.quantity(3, "ft"), REG["in"])
    assert ft.magnitude == pytest.approx(1.8, abs=1e-12)
    assert convert(ft, REG["in"]).magnitude == pytest.approx(21.6, abs=1e-12)
    assert inch.magnitude == pytest.approx(17.2, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.sampled_from(["ft", "in", "m", "cm"]))
def test_homogeneous_regression_is_unit_free(y1, y2, unit):
    a = unconscious_regression_demo(REG.quantity(y1, "ft"), REG.quantity(y2, "ft"), REG["ft"], homogeneous=True)
    b = unconscious_regression_demo(REG.quantity(y1, "ft"), REG.quantity(y2, "ft"), REG[unit], homogeneous=True)
    assert convert(b, REG["ft"]).magnitude == pytest.approx(a.magnitude, rel=1e-12, abs=1e-12)


# --- Pi power fit -----------------------------------------------------------


def test_noiseless_recovery_is_exact(spec):
    basis, _ = extract_pi_groups(spec("tree"))
    res = pi_power_fit(synthetic_tree_data(50, 3.0, 0.5, 0.0, seed=1), basis)
    assert res.gamma_hat == pytest.approx(3.0, abs=1e-12)
    assert res.k_hat == pytest.approx(0.5, rel=1e-12)
    assert res.rss < 1e-20


def test_fit_is_unit_invariant(spec):
    basis, _ = extract_pi_groups(spec("tree"))
    d = synthetic_tree_data(100, 1.942, 1.0, 0.05, seed=4)
    ft = Dataset(d.columns, (REG["ft"], REG["in"], REG.unit("ft^3")),
                 tuple((a / 0.3048, b / 0.0254, c / 0.3048 ** 3) for a, b, c in d.rows))
    r1, r2 = pi_power_fit(d, basis), pi_power_fit(ft, basis)
    assert r2.gamma_hat == pytest.approx(r1.gamma_hat, rel=1e-12)
    assert r2.k_hat == pytest.approx(r1.k_hat, rel=1e-12)


def test_synthetic_data_is_reproducible():
    assert synthetic_tree_data(20, 2.0, seed=8) == synthetic_tree_data(20, 2.0, seed=8)
    assert synthetic_tree_data(20, 2.0, seed=8) != synthetic_tree_data(20, 2.0, seed=9)


def test_fit_errors(spec):
    with pytest.raises(NonpositivePi):
        fit_power_law([1.0, -2.0], [1.0, 2.0])
    with pytest.raises(FewerThanTwoRows):
        fit_power_law([1.0], [1.0])
    with pytest.raises(ValueError):
        pi_power_fit(synthetic_tree_data(5, 2.0, seed=1), extract_pi_groups(spec("ideal_gas"))[0])


# --- Box-Cox ------------------------------------------------------------------


def test_boxcox_units():
    v = boxcox(REG.quantity(5, "mm"), Fraction(1, 2))
    assert v.unit.symbol == "mm^(1/2)"
    assert v.value == pytest.approx((math.sqrt(5) - 1) / 0.5)
    z = boxcox(REG.quantity(5, "mm"), 0)
    assert z.unit.is_dimensionless and z.value == pytest.approx(math.log(5))


@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.0, 1e4])
def test_boxcox_continuity_at_zero(x):
    q = REG.quantity(x, "m")
    limit = boxcox(q, 0).value
    for lam in (1e-3, 1e-5, 1e-7, -1e-7):
        v = boxcox(q, lam).value
        # |v - ln x| ~ |lam| (ln x)^2 / 2
        assert abs(v - limit) <= abs(lam) * (math.log(x) ** 2) + 1e-12


def test_boxcox_errors():
    with pytest.raises(NonpositiveMagnitude):
        boxcox(REG.quantity(0, "m"), 1)
    with pytest.raises(ScaleViolation):
        boxcox(REG.quantity(20, "degC"), 1)


# --- rainfall Monte Carlo -------------------------------------------------------


def test_rainfall_small_run():
    rep = rainfall_mc_check(1.5, 0.5, 50_000, seed=3, ks_reps=20, ks_n=500)
    assert rep.max_rel_error_mean < 1e-12
    assert rep.max_rel_error_scaled < 0.05
    assert rep.invariance_deviation < 1e-12
    assert rep.ks_passes >= 17


def test_rainfall_is_reproducible():
    a = rainfall_mc_check(1.0, 1.0, 10_000, seed=1, ks_reps=5, ks_n=200)
    b = rainfall_mc_check(1.0, 1.0, 10_000, seed=1, ks_reps=5, ks_n=200)
    assert a == b


@pytest.mark.parametrize("kw", [dict(lam1=0.0, lam2=1.0), dict(lam1=1.0, lam2=-1.0),
                                dict(lam1=float("nan"), lam2=1.0), dict(lam1=1.0, lam2=1.0, n=100)])
def test_rainfall_validation(kw):
    kw = {"n": 10_000, **kw}
    with pytest.raises(ValueError):
        rainfall_mc_check(seed=0, **kw)
