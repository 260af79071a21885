"""Nondimensionalized statistical procedures.

Everything here either works on dimensionless quantities (Pi groups, scaled
likelihood ratios) or tracks the units explicitly (Box-Cox), so every
dimensionless estimate is unchanged when inputs are re-expressed in other
units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats as sps

from .errors import (
    DegenerateSample,
    DimensionMismatch,
    FewerThanTwoRows,
    NonpositiveMagnitude,
    NonpositivePi,
    ScaleViolation,
)
from .model import Dataset
from .pi import PiBasis, nondimensionalize_dataset
from .quantity import DIMENSIONLESS, Dimension, Quantity, ScaleKind, Unit, convert, default_registry, to_fraction

__all__ = [
    "BoxCoxValue",
    "PiFitResult",
    "RainfallReport",
    "ScaledLikelihoodResult",
    "boxcox",
    "pi_power_fit",
    "rainfall_mc_check",
    "scaled_mle_normal",
    "synthetic_tree_data",
    "unconscious_regression_demo",
]

GENERATOR = "numpy Philox4x64-10 via SeedSequence"


def _rng(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(key))))


# ---------------------------------------------------------------------------
# scaled likelihood
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledLikelihoodResult:
    n: int
    mu_hat: Quantity
    sigma2_hat: Quantity
    sigma0_sq: Quantity
    t_hat: float
    log_ratio_max: float
    ratio_dimension: Dimension

    @property
    def ratio_max(self) -> float:
        return math.exp(self.log_ratio_max)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu_hat": self.mu_hat.magnitude,
            "mu_unit": self.mu_hat.unit.symbol,
            "sigma2_hat": self.sigma2_hat.magnitude,
            "sigma2_unit": self.sigma2_hat.unit.symbol,
            "t_hat": self.t_hat,
            "log_ratio_max": self.log_ratio_max,
        }


def scaled_log_ratio(t: float, s: float, n: int) -> float:
    """``ln L(sigma^2)/L(sigma0^2)`` as a function of ``t = sigma^2/sigma0^2``.

    ``s`` is the unitless ``sigma~^2 / sigma0^2``; the maximum is at ``t = s``.
    """
    return -0.5 * n * (math.log(t) + s * (1.0 / t - 1.0))


def scaled_mle_normal(values: Sequence[float], unit: Unit, sigma0_sq: Quantity) -> ScaledLikelihoodResult:
    """Normal MLE where the variance is found by maximizing a unitless likelihood ratio."""
    y = np.asarray(values, dtype=float)
    n = y.size
    if n < 2:
        raise DegenerateSample("need at least two observations")
    if unit.scale is not ScaleKind.RATIO and unit.offset != 0:
        unit = unit.delta()
    sq_unit = unit ** 2
    if sigma0_sq.dimension != sq_unit.dimension:
        raise DimensionMismatch(f"sigma0^2 has dimension {sigma0_sq.dimension}, data^2 has {sq_unit.dimension}")
    if not sigma0_sq.magnitude > 0:
        raise DegenerateSample("sigma0^2 must be positive")
    mu = float(y.mean())
    var = float(np.mean((y - mu) ** 2))
    if var == 0.0:
        raise DegenerateSample("all observations are equal; the variance estimate is zero")
    s0 = convert(sigma0_sq, sq_unit).magnitude
    s = var / s0  # unitless
    t_hat = s
    log_max = scaled_log_ratio(t_hat, s, n)
    ratio_dim = (sq_unit.dimension / sigma0_sq.dimension)
    assert ratio_dim.is_dimensionless
    sigma2 = Quantity(t_hat * s0, sq_unit)
    return ScaledLikelihoodResult(n, Quantity(mu, unit), sigma2, sigma0_sq, t_hat, log_max, ratio_dim)


# ---------------------------------------------------------------------------
# two statisticians, two units
# ---------------------------------------------------------------------------


def unconscious_regression_demo(ybar1: Quantity, ybar2: Quantity, unit: Unit, homogeneous: bool = False,
                                intercept: Quantity | None = None) -> Quantity:
    """Predict at t = 1 hour from the least-squares fit at t = 1 and 2 hours.

    The default model ``Y = 1 + theta t`` uses a bare 1, so the prediction
    depends on ``unit``. With ``homogeneous=True`` the intercept is a declared
    quantity (1 ft unless given) and the prediction is unit-invariant.
    """
    y1 = convert(ybar1, unit).magnitude
    y2 = convert(ybar2, unit).magnitude
    if homogeneous:
        c = intercept if intercept is not None else Quantity(1.0, default_registry()["ft"])
        c0 = convert(c, unit).magnitude
    else:
        c0 = 1.0
    theta = (y1 + 2 * y2 - 3 * c0) / 5
    return Quantity(c0 + theta * 1, unit)


# ---------------------------------------------------------------------------
# Pi power law
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiFitResult:
    gamma_hat: float
    k_hat: float
    rss: float
    n: int
    fitted: tuple[float, ...]

    def to_json(self) -> dict:
        return {"gamma_hat": self.gamma_hat, "k_hat": self.k_hat, "rss": self.rss, "n": self.n}


def fit_power_law(pi1: Sequence[float], pi2: Sequence[float]) -> PiFitResult:
    """OLS of ``ln pi2`` on ``ln pi1``: ``pi2 = k pi1^gamma``."""
    x = np.asarray(pi1, dtype=float)
    y = np.asarray(pi2, dtype=float)
    if x.size < 2:
        raise FewerThanTwoRows("need at least two rows to fit a slope")
    if np.any(~(x > 0)) or np.any(~(y > 0)):
        raise NonpositivePi("Pi values must be positive to take logarithms")
    lx, ly = np.log(x), np.log(y)
    mx, my = lx.mean(), ly.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    if sxx == 0.0:
        raise DegenerateSample("predictor Pi is constant")
    gamma = float(np.sum((lx - mx) * (ly - my)) / sxx)
    intercept = float(my - gamma * mx)
    resid = ly - (intercept + gamma * lx)
    fitted = tuple(float(v) for v in np.exp(intercept + gamma * lx))
    return PiFitResult(gamma, math.exp(intercept), float(np.sum(resid ** 2)), int(x.size), fitted)


def pi_power_fit(data: Dataset, basis: PiBasis, response_pi: int = 1) -> PiFitResult:
    """Fit ``pi_response = k * pi_other^gamma`` on a two-group basis (0-based index)."""
    if basis.q != 2:
        raise ValueError(f"power fit needs exactly two Pi groups, basis has {basis.q}")
    if response_pi not in (0, 1):
        raise ValueError("response_pi must be 0 or 1")
    if data.n_rows < 2:
        raise FewerThanTwoRows("need at least two rows to fit a slope")
    nd = nondimensionalize_dataset(data, basis)
    resp = nd.column(nd.columns[response_pi])
    pred = nd.column(nd.columns[1 - response_pi])
    return fit_power_law(pred, resp)


def synthetic_tree_data(n: int, gamma: float, k: float = 1.0, noise_sd: float = 0.05, seed: int = 0,
                        registry=None) -> Dataset:
    """Tree heights X1 [m], diameters X2 [m] and volumes X3 [m^3] with ``X3/X1^3 = k (X2/X1)^gamma`` times lognormal noise."""
    reg = registry or default_registry()
    rng = _rng(seed)
    x1 = rng.uniform(5.0, 30.0, n)
    ln_pi1 = rng.uniform(math.log(0.01), math.log(0.1), n)
    eps = rng.normal(0.0, noise_sd, n) if noise_sd > 0 else np.zeros(n)
    pi1 = np.exp(ln_pi1)
    pi2 = k * pi1 ** gamma * np.exp(eps)
    rows = tuple((float(a), float(a * p1), float(a ** 3 * p2)) for a, p1, p2 in zip(x1, pi1, pi2))
    return Dataset(("X1", "X2", "X3"), (reg["m"], reg["m"], reg.unit("m^3")), rows)


# ---------------------------------------------------------------------------
# Box-Cox with units
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxCoxValue:
    value: float
    unit: Unit
    lam: Fraction

    def __str__(self) -> str:
        return f"{self.value!r} [{self.unit.symbol}]"


def boxcox(x: Quantity, lam) -> BoxCoxValue:
    """``({x}^lam - 1)/lam`` carrying ``[x]^lam``; ``ln{x}`` and no unit at ``lam = 0``."""
    lam = to_fraction(lam)
    if x.unit.scale is not ScaleKind.RATIO:
        raise ScaleViolation("Box-Cox needs a ratio-scale quantity")
    if not x.magnitude > 0:
        raise NonpositiveMagnitude(f"Box-Cox needs a positive magnitude, got {x.magnitude!r}")
    ln = math.log(x.magnitude)
    if lam == 0:
        return BoxCoxValue(ln, DIMENSIONLESS, lam)
    lf = float(lam)
    return BoxCoxValue(math.expm1(lf * ln) / lf, x.unit ** lam, lam)


# ---------------------------------------------------------------------------
# rainfall Monte Carlo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RainfallReport:
    lam1: float
    lam2: float
    n: int
    seed: int
    generator: str
    bins: int
    max_rel_error_mean: float
    max_rel_error_scaled: float
    ks_passes: int
    ks_reps: int
    ks_alpha: float
    invariance_deviation: float
    tolerance: float

    @property
    def conditional_mean_ok(self) -> bool:
        return self.max_rel_error_mean <= self.tolerance and self.max_rel_error_scaled <= self.tolerance

    @property
    def ks_ok(self) -> bool:
        return self.ks_passes >= math.ceil(0.95 * self.ks_reps)

    @property
    def passed(self) -> bool:
        return self.conditional_mean_ok and self.ks_ok and self.invariance_deviation <= 1e-9

    def to_json(self) -> dict:
        return {
            "lam1": self.lam1,
            "lam2": self.lam2,
            "n": self.n,
            "seed": self.seed,
            "generator": self.generator,
            "bins": self.bins,
            "max_rel_error_mean": self.max_rel_error_mean,
            "max_rel_error_scaled": self.max_rel_error_scaled,
            "ks_passes": self.ks_passes,
            "ks_reps": self.ks_reps,
            "ks_alpha": self.ks_alpha,
            "invariance_deviation": self.invariance_deviation,
            "passed": self.passed,
        }


def _exponential(rng: np.random.Generator, n: int) -> np.ndarray:
    # inverse CDF on U in [0, 1)
    return -np.log1p(-rng.random(n))


def simulate_rainfall(lam1: float, lam2: float, n: int, rng: np.random.Generator):
    """X1 ~ Gamma(2, lam1), X2 ~ Exp(lam2), X3 = (X1/X2)(X1/lam1 + X2/lam2)."""
    x1 = lam1 * (_exponential(rng, n) + _exponential(rng, n))
    x2 = lam2 * _exponential(rng, n)
    x3 = (x1 / x2) * (x1 / lam1 + x2 / lam2)
    return x1, x2, x3


def _gamma2_truncated_mean(a: float, b: float) -> float:
    """E[U | a < U < b] for U ~ Gamma(2, 1)."""
    def tail1(u):  # integral_u^inf t e^-t dt
        return 0.0 if math.isinf(u) else (u + 1) * math.exp(-u)

    def tail2(u):  # integral_u^inf t^2 e^-t dt
        return 0.0 if math.isinf(u) else (u * u + 2 * u + 2) * math.exp(-u)

    return (tail2(a) - tail2(b)) / (tail1(a) - tail1(b))


def _exp_truncated_mean(a: float, b: float) -> float:
    """E[U | a < U < b] for U ~ Exp(1)."""
    ea = math.exp(-a)
    eb = 0.0 if math.isinf(b) else math.exp(-b)
    tb = 0.0 if math.isinf(b) else (b + 1) * eb
    return ((a + 1) * ea - tb) / (ea - eb)


def rainfall_mc_check(lam1: float, lam2: float, n: int, seed: int, bins: int = 10, ks_reps: int = 100,
                      ks_n: int = 2000, g: tuple[float, float] = (2.0, 3.0), ks_alpha: float = 0.01,
                      tolerance: float = 0.05, chunk: int = 1 << 17) -> RainfallReport:
    """Monte Carlo check of the rainfall model's conditional mean and Pi invariance.

    Conditional means are compared per quantile bin of (x1, x2) two ways: the
    bin mean of X3 against the bin mean of the closed form at the sampled
    points, and the bin mean of X2 X3 / X1 against its exact truncated
    expectation. The unconditional mean of X3 is not checked because
    E[1/X2] is infinite.
    """
    for name, v in (("lam1", lam1), ("lam2", lam2)):
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be a positive finite number, got {v!r}")
    if n < 10_000:
        raise ValueError("n must be at least 10^4")
    if bins < 1 or ks_reps < 1:
        raise ValueError("bins and ks_reps must be positive")

    parts = [simulate_rainfall(lam1, lam2, min(chunk, n - s), _rng(seed, 0, i))
             for i, s in enumerate(range(0, n, chunk))]
    x1 = np.concatenate([p[0] for p in parts])
    x2 = np.concatenate([p[1] for p in parts])
    x3 = np.concatenate([p[2] for p in parts])

    q = np.linspace(0, 1, bins + 1)[1:-1]
    e1 = np.concatenate([[0.0], np.quantile(x1, q), [np.inf]])
    e2 = np.concatenate([[0.0], np.quantile(x2, q), [np.inf]])
    i1 = np.clip(np.searchsorted(e1, x1, side="right") - 1, 0, bins - 1)
    i2 = np.clip(np.searchsorted(e2, x2, side="right") - 1, 0, bins - 1)
    formula = (x1 / x2) * (x1 / lam1 + x2 / lam2)
    scaled = x2 * x3 / x1
    worst_mean, worst_scaled = 0.0, 0.0
    for a in range(bins):
        for b in range(bins):
            mask = (i1 == a) & (i2 == b)
            if not mask.any():
                continue
            m3, mf = x3[mask].mean(), formula[mask].mean()
            worst_mean = max(worst_mean, abs(m3 - mf) / abs(mf))
            exact = _gamma2_truncated_mean(e1[a] / lam1, e1[a + 1] / lam1) + \
                _exp_truncated_mean(e2[b] / lam2, e2[b + 1] / lam2)
            worst_scaled = max(worst_scaled, abs(scaled[mask].mean() - exact) / exact)

    passes, inv_dev = 0, 0.0
    c1, c2 = g
    for r in range(ks_reps):
        a1, a2, a3 = simulate_rainfall(lam1, lam2, ks_n, _rng(seed, 1, r, 0))
        b1, b2, b3 = simulate_rainfall(c1 * lam1, c2 * lam2, ks_n, _rng(seed, 1, r, 1))
        pi_a = a2 * a3 / a1
        pi_b = b2 * b3 / b1
        if sps.ks_2samp(pi_a, pi_b).pvalue > ks_alpha:
            passes += 1
        pi_g = (c2 * a2) * (c1 * a3 / c2) / (c1 * a1)
        inv_dev = max(inv_dev, float(np.max(np.abs(pi_g - pi_a) / np.maximum(np.abs(pi_a), 1.0))))

    return RainfallReport(float(lam1), float(lam2), n, seed, GENERATOR, bins, float(worst_mean),
                          float(worst_scaled), passes, ks_reps, ks_alpha, inv_dev, tolerance)
