"""Estimate decline parameters from observed production.

The exponential and harmonic models are linear after a transform, so they
are fit by ordinary least squares in the transformed space:

    exponential:  log10(q) = intercept + slope * t   ->  qi = 10**intercept,
                                                         di = |slope| * ln(10)
    harmonic:     1/q = intercept + slope * t        ->  qi = 1/intercept,
                                                         di = slope/intercept

The harmonic mapping follows from q = qi/(1 + di*t) rearranged as
1/q = (1/qi) + (di/qi)*t.  The hyperbolic model has no linearizing
transform, so it is fit by bounded nonlinear least squares on the rate
residuals directly.

All regressions use time measured from the first record of the supplied
history, so the fitted qi is the model rate at the start of the fit
window.  Goodness-of-fit is always reported in rate space (mmscf/day).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .errors import FitError, ValidationError
from .models import (
    DeclineKind,
    DeclineParameters,
    hyperbolic_rate,
    nominal_decline_from_semilog_slope,
    rate_at,
)

_LN10 = math.log(10.0)

MIN_RECORDS_LINEAR = 3
MIN_RECORDS_HYPERBOLIC = 4

# Hyperbolic optimizer settings.  Fixed so the same input always produces
# the same fit.
HYPERBOLIC_B_BOUNDS = (1e-9, 1.0 - 1e-9)
HYPERBOLIC_MAX_NFEV = 200
HYPERBOLIC_TOL = 1e-10


@dataclass(frozen=True)
class ProductionRecord:
    """One observed (time, rate) sample: days since first record, mmscf/day."""

    t: float
    rate: float


class ProductionHistory:
    """Time-ordered production observations for a single well.

    Timestamps must be strictly increasing and every stored rate strictly
    positive (non-positive rates are filtered at ingestion, never stored).
    ``np_mmscf`` is the externally supplied cumulative production to date.
    The underlying arrays are read-only; histories are safe to share.
    """

    def __init__(self, times, rates, np_mmscf: float | None = None):
        t = np.atleast_1d(np.asarray(times, dtype=float))
        q = np.atleast_1d(np.asarray(rates, dtype=float))
        if t.ndim != 1 or q.ndim != 1 or len(t) != len(q):
            raise ValidationError("times and rates must be 1-d and equal length")
        if len(t) == 0:
            raise ValidationError("history must contain at least one record")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(q))):
            raise ValidationError("times and rates must be finite")
        if t[0] < 0:
            raise ValidationError("times must be non-negative")
        if np.any(np.diff(t) <= 0):
            raise ValidationError("timestamps must be strictly increasing")
        if np.any(q <= 0):
            raise ValidationError("rates must be strictly positive")
        if np_mmscf is not None and not (math.isfinite(np_mmscf) and np_mmscf >= 0):
            raise ValidationError(f"np_mmscf must be non-negative, got {np_mmscf}")
        t = t.copy()
        q = q.copy()
        t.flags.writeable = False
        q.flags.writeable = False
        self.times = t
        self.rates = q
        self.np_mmscf = np_mmscf

    @classmethod
    def from_records(
        cls, records, np_mmscf: float | None = None
    ) -> "ProductionHistory":
        recs = list(records)
        return cls([r.t for r in recs], [r.rate for r in recs], np_mmscf)

    @property
    def records(self) -> tuple[ProductionRecord, ...]:
        return tuple(
            ProductionRecord(float(t), float(q))
            for t, q in zip(self.times, self.rates)
        )

    def window(self, t_min: float, t_max: float) -> "ProductionHistory":
        """Sub-history of records with t_min <= t <= t_max (times unchanged)."""
        if t_min > t_max:
            raise ValidationError(f"empty window: t_min {t_min} > t_max {t_max}")
        mask = (self.times >= t_min) & (self.times <= t_max)
        if not mask.any():
            raise ValidationError(f"no records in window [{t_min}, {t_max}]")
        return ProductionHistory(self.times[mask], self.rates[mask], self.np_mmscf)

    def __len__(self) -> int:
        return len(self.times)

    def __repr__(self) -> str:
        return (
            f"ProductionHistory({len(self)} records, "
            f"t=[{self.times[0]:g}, {self.times[-1]:g}], np_mmscf={self.np_mmscf})"
        )


@dataclass(frozen=True)
class SmoothingSpec:
    """Centered moving-average smoother settings.

    The window counts records, must be odd and >= 3, and is truncated to
    the available one-sided neighbors at the series boundaries.
    """

    window: int = 3
    enabled: bool = True

    def __post_init__(self):
        if self.enabled and (self.window < 3 or self.window % 2 == 0):
            raise ValidationError(
                f"smoothing window must be odd and >= 3, got {self.window}"
            )


@dataclass(frozen=True)
class FitResult:
    """A fitted decline model plus regression diagnostics.

    ``transformed_intercept``/``transformed_slope`` are the OLS
    coefficients in the model's linearizing space (base-10 log rate for
    exponential, reciprocal rate for harmonic); they are None for the
    hyperbolic fit, which has no such space.  ``r_squared`` and ``rmse``
    are computed on rate residuals, and ``window`` is the (t_min, t_max)
    span of the records used.
    """

    params: DeclineParameters
    transformed_intercept: float | None
    transformed_slope: float | None
    r_squared: float | None
    rmse: float
    n_points: int
    window: tuple[float, float]
    diagnostics: dict = field(default_factory=dict, compare=False)


def smooth(history: ProductionHistory, spec: SmoothingSpec) -> ProductionHistory:
    """Replace each rate by the centered moving average over ``spec.window``.

    Windows are truncated at the boundaries (shorter one-sided windows at
    the ends), so the record count and timestamps are unchanged.
    """
    if not spec.enabled:
        return history
    n = len(history)
    if spec.window > n:
        raise ValidationError(
            f"smoothing window {spec.window} exceeds record count {n}"
        )
    half = spec.window // 2
    rates = history.rates

    def window_mean(i: int) -> float:
        vals = rates[max(0, i - half) : i + half + 1]
        # anchored at the first value so constant series pass through
        # bit-exactly
        return float(vals[0] + (vals - vals[0]).mean())

    smoothed = np.array([window_mean(i) for i in range(n)])
    return ProductionHistory(history.times, smoothed, history.np_mmscf)


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Textbook least squares of y on x; returns (intercept, slope)."""
    xbar = x.mean()
    ybar = y.mean()
    dx = x - xbar
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValidationError("degenerate time axis: zero variance")
    slope = float(dx @ (y - ybar)) / sxx
    return ybar - slope * xbar, slope


def params_from_semilog(intercept: float, slope: float) -> DeclineParameters:
    """Exponential parameters from base-10 semilog regression coefficients."""
    di = nominal_decline_from_semilog_slope(slope)
    return DeclineParameters.exponential(qi=10.0**intercept, di=di)


def params_from_reciprocal(intercept: float, slope: float) -> DeclineParameters:
    """Harmonic parameters from reciprocal-rate regression coefficients.

    From 1/q = intercept + slope * t and q = qi/(1 + di*t):
    intercept = 1/qi and slope = di/qi, so qi = 1/intercept and
    di = slope/intercept.
    """
    if not (math.isfinite(intercept) and intercept > 0):
        raise FitError(
            f"reciprocal-rate intercept must be positive, got {intercept}"
        )
    if not (math.isfinite(slope) and slope > 0):
        raise FitError(f"no decline: reciprocal-rate slope must be positive, got {slope}")
    return DeclineParameters.harmonic(qi=1.0 / intercept, di=slope / intercept)


def _require_records(history: ProductionHistory, minimum: int):
    if len(history) < minimum:
        raise ValidationError(
            f"at least {minimum} records required for this fit, got {len(history)}"
        )


def _finish(history, params, intercept, slope, diagnostics=None) -> FitResult:
    r2, rmse = goodness(history, params)
    return FitResult(
        params=params,
        transformed_intercept=intercept,
        transformed_slope=slope,
        r_squared=r2,
        rmse=rmse,
        n_points=len(history),
        window=(float(history.times[0]), float(history.times[-1])),
        diagnostics=diagnostics or {},
    )


def fit_exponential(history: ProductionHistory) -> FitResult:
    """OLS of log10(rate) on elapsed time.

    Regression runs in natural log for conditioning and the coefficients
    are converted to base 10 for reporting, so 10**intercept is the rate
    at the window start.
    """
    _require_records(history, MIN_RECORDS_LINEAR)
    u = history.times - history.times[0]
    a, m = _ols(u, np.log(history.rates))
    if m >= 0:
        raise FitError(f"no decline detected: semilog slope {m / _LN10:.3g} >= 0")
    intercept10, slope10 = a / _LN10, m / _LN10
    params = params_from_semilog(intercept10, slope10)
    return _finish(history, params, intercept10, slope10)


def fit_harmonic(history: ProductionHistory) -> FitResult:
    """OLS of 1/rate on elapsed time."""
    _require_records(history, MIN_RECORDS_LINEAR)
    u = history.times - history.times[0]
    c, m = _ols(u, 1.0 / history.rates)
    params = params_from_reciprocal(c, m)
    return _finish(history, params, c, m)


def _hyperbolic_residuals(x: np.ndarray, u: np.ndarray, q: np.ndarray) -> np.ndarray:
    qi, di, b = x
    return hyperbolic_rate(u, qi, di, b) - q


def fit_hyperbolic(history: ProductionHistory) -> FitResult:
    """Bounded nonlinear least squares over (qi, di, b) on rate residuals.

    Initialization is deterministic: (qi, di) from the exponential fit
    with b = 0.5.  The optimizer runs with a fixed evaluation budget and
    fixed tolerances, so identical input always yields an identical fit.
    Raises FitError with best-so-far diagnostics if the budget is
    exhausted before convergence.
    """
    _require_records(history, MIN_RECORDS_HYPERBOLIC)
    u = history.times - history.times[0]
    q = history.rates

    try:
        start = fit_exponential(history)
    except FitError as exc:
        raise FitError(f"hyperbolic fit: initialization failed ({exc})") from exc
    x0 = np.array([start.params.qi, start.params.di, 0.5])

    b_lo, b_hi = HYPERBOLIC_B_BOUNDS
    result = least_squares(
        _hyperbolic_residuals,
        x0,
        args=(u, q),
        bounds=([1e-12, 1e-12, b_lo], [np.inf, np.inf, b_hi]),
        method="trf",
        x_scale="jac",
        ftol=HYPERBOLIC_TOL,
        xtol=HYPERBOLIC_TOL,
        gtol=HYPERBOLIC_TOL,
        max_nfev=HYPERBOLIC_MAX_NFEV,
    )
    diagnostics = {
        "cost": float(result.cost),
        "nfev": int(result.nfev),
        "status": int(result.status),
        "x": [float(v) for v in result.x],
    }
    if result.status <= 0:
        raise FitError(
            f"hyperbolic fit did not converge within {HYPERBOLIC_MAX_NFEV} "
            f"evaluations (cost {result.cost:.3g})",
            diagnostics=diagnostics,
        )
    qi, di, b = (float(v) for v in result.x)
    params = DeclineParameters.hyperbolic(qi, di, b)
    return _finish(history, params, None, None, diagnostics)


FITTERS = {
    DeclineKind.EXPONENTIAL: fit_exponential,
    DeclineKind.HARMONIC: fit_harmonic,
    DeclineKind.HYPERBOLIC: fit_hyperbolic,
}


def goodness(
    history: ProductionHistory, params: DeclineParameters
) -> tuple[float | None, float]:
    """Rate-space goodness of fit: (r_squared, rmse).

    The model is anchored at the first record of the supplied history,
    i.e. residuals are observed - rate_at(params, t - t_first).  When the
    observed rates have zero variance, r_squared is undefined and
    reported as None; rmse is always a number.
    """
    predicted = rate_at(params, history.times - history.times[0])
    resid = history.rates - predicted
    ss_res = float(resid @ resid)
    rmse = math.sqrt(ss_res / len(history))
    dev = history.rates - history.rates.mean()
    ss_tot = float(dev @ dev)
    if ss_tot == 0.0:
        return None, rmse
    return 1.0 - ss_res / ss_tot, rmse
