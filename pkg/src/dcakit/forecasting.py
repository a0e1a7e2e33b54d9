"""Forward-looking products of a fitted decline model.

A forecast re-anchors the decline at the well's current rate and runs it
down to the abandonment rate, yielding the remaining producing life, the
incremental recoverable volume Qf, and (when cumulative production to
date is known) the estimated ultimate recovery EUR = Np + Qf.  The
three-model comparison fits every requested decline kind to the same
history and ranks them by in-sample fit quality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DeclineCurveError, FitError, ValidationError
from .fitting import FITTERS, FitResult, ProductionHistory
from .models import (
    DeclineKind,
    DeclineParameters,
    RateInterval,
    cumulative_between,
    rate_at,
    time_between_rates,
)

DEFAULT_ABANDONMENT_RATE = 0.03  # mmscf/day, the usual economic limit
DEFAULT_STEP_DAYS = 1.0

# Tie-break preference when RMSE and R-squared are both equal.
_SELECTION_ORDER = (
    DeclineKind.EXPONENTIAL,
    DeclineKind.HYPERBOLIC,
    DeclineKind.HARMONIC,
)


@dataclass(frozen=True)
class ForecastSpec:
    """How to run a forecast: from the current rate down to abandonment."""

    q_start: float
    q_ab: float = DEFAULT_ABANDONMENT_RATE
    step: float = DEFAULT_STEP_DAYS

    def __post_init__(self):
        if not (math.isfinite(self.q_ab) and self.q_ab > 0):
            raise ValidationError(f"q_ab must be positive, got {self.q_ab}")
        if not (math.isfinite(self.q_start) and self.q_start > self.q_ab):
            raise ValidationError(
                f"q_start ({self.q_start}) must exceed q_ab ({self.q_ab})"
            )
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValidationError(f"step must be positive, got {self.step}")


@dataclass(frozen=True)
class Forecast:
    """A projected rate series plus its closed-form summary numbers.

    ``times``/``rates`` sample the re-anchored decline from (0, q_start)
    and always end with the exact abandonment point (delta_t, q_ab); the
    rates are strictly decreasing.  ``eur_mmscf`` is present only when
    cumulative production to date was supplied.
    """

    params: DeclineParameters
    times: np.ndarray
    rates: np.ndarray
    delta_t: float
    qf: float
    eur_mmscf: float | None = None


def eur(np_mmscf: float, qf: float) -> float:
    """Estimated ultimate recovery: cumulative to date plus remaining volume."""
    if not (math.isfinite(np_mmscf) and np_mmscf >= 0):
        raise ValidationError(f"np_mmscf must be non-negative, got {np_mmscf}")
    if not (math.isfinite(qf) and qf >= 0):
        raise ValidationError(f"qf must be non-negative, got {qf}")
    return np_mmscf + qf


def life_accuracy(predicted_days: float, actual_days: float) -> float:
    """Relative accuracy of a remaining-life prediction: 1 - |pred - actual| / actual."""
    if not (math.isfinite(actual_days) and actual_days > 0):
        raise ValidationError(f"actual_days must be positive, got {actual_days}")
    if not (math.isfinite(predicted_days) and predicted_days >= 0):
        raise ValidationError(f"predicted_days must be non-negative, got {predicted_days}")
    return 1.0 - abs(predicted_days - actual_days) / actual_days


def forecast(
    params: DeclineParameters,
    spec: ForecastSpec,
    np_mmscf: float | None = None,
) -> Forecast:
    """Project the decline from spec.q_start down to spec.q_ab.

    The curve is re-anchored at the current rate (q_start plays the role
    of the initial rate); the fitted qi only matters for hindcasting from
    t = 0.  Samples run at t = 0, step, 2*step, ... while the rate stays
    above q_ab, and the exact abandonment point is appended.
    """
    interval = RateInterval(spec.q_start, spec.q_ab)
    delta_t = time_between_rates(params, interval)
    qf = cumulative_between(params, interval)
    anchored = params.reanchored(spec.q_start)

    ts = np.arange(0.0, delta_t, spec.step)
    qs = rate_at(anchored, ts)
    keep = qs > spec.q_ab  # guards against float dust at the boundary
    times = np.append(ts[keep], delta_t)
    rates = np.append(qs[keep], spec.q_ab)

    return Forecast(
        params=params,
        times=times,
        rates=rates,
        delta_t=delta_t,
        qf=qf,
        eur_mmscf=None if np_mmscf is None else eur(np_mmscf, qf),
    )


@dataclass(frozen=True)
class ModelEntry:
    """One model's row in the comparison report.

    ``fit`` is None when the entry was built from externally supplied
    parameters rather than a regression (or when the fit failed).
    """

    kind: DeclineKind
    status: str  # "ok" or "fit_failed"
    params: DeclineParameters | None = None
    fit: FitResult | None = None
    qf: float | None = None
    delta_t: float | None = None
    eur_mmscf: float | None = None
    life_accuracy: float | None = None
    message: str | None = None

    @property
    def r_squared(self) -> float | None:
        return self.fit.r_squared if self.fit is not None else None

    @property
    def rmse(self) -> float | None:
        return self.fit.rmse if self.fit is not None else None


@dataclass(frozen=True)
class AnalysisReport:
    """Per-model comparison for one well.

    ``q_ab`` is None for fit-only reports that never ran a forecast.
    """

    well_id: str
    np_mmscf: float | None
    q_ab: float | None
    entries: tuple[ModelEntry, ...]
    selected_model: DeclineKind
    selection_reason: str
    actual_life_days: float | None = None


def time_to_abandonment(history: ProductionHistory, q_ab: float) -> float | None:
    """Elapsed time of the first record at or below q_ab, or None if never reached.

    Times are taken as measured from the forecast start, so a holdout
    history must share the forecast's time origin.
    """
    below = history.rates <= q_ab
    if not below.any():
        return None
    idx = int(np.argmax(below))
    return float(history.times[idx])


def _select(entries: list[ModelEntry]) -> tuple[DeclineKind, str]:
    ok = [e for e in entries if e.status == "ok"]

    def key(e: ModelEntry):
        rmse = e.rmse if e.rmse is not None else math.inf
        r2 = e.r_squared if e.r_squared is not None else -math.inf
        return (rmse, -r2, _SELECTION_ORDER.index(e.kind))

    best = min(ok, key=key)
    if best.rmse is None:
        return best.kind, "selected by model preference order (no fit diagnostics)"
    reason = f"lowest in-sample RMSE ({best.rmse:.6g} mmscf/day)"
    contenders = [e for e in ok if e.rmse == best.rmse]
    if len(contenders) > 1:
        reason += ", ties broken by R-squared then model preference order"
    return best.kind, reason


def report_from_fits(
    fits: dict[DeclineKind, FitResult | DeclineParameters],
    spec: ForecastSpec | None = None,
    np_mmscf: float | None = None,
    well_id: str = "well",
    failures: dict[DeclineKind, str] | None = None,
    actual_life_days: float | None = None,
) -> AnalysisReport:
    """Assemble a comparison report from already-fitted models.

    This is the common tail of compare_models, exposed so reports can
    also be built from externally supplied parameter sets (bare
    DeclineParameters, e.g. fixed worked-example values) without
    refitting.  With no ForecastSpec the report carries fit diagnostics
    only.
    """
    failures = failures or {}
    if not fits:
        raise FitError(
            "no model produced a usable fit: "
            + "; ".join(f"{k.value}: {v}" for k, v in failures.items())
        )

    entries: list[ModelEntry] = []
    for kind in _SELECTION_ORDER:
        if kind in fits:
            supplied = fits[kind]
            fit = supplied if isinstance(supplied, FitResult) else None
            params = fit.params if fit is not None else supplied
            if spec is not None:
                fc = forecast(params, spec, np_mmscf)
                acc = (
                    life_accuracy(fc.delta_t, actual_life_days)
                    if actual_life_days is not None
                    else None
                )
                entry = ModelEntry(
                    kind=kind,
                    status="ok",
                    params=params,
                    fit=fit,
                    qf=fc.qf,
                    delta_t=fc.delta_t,
                    eur_mmscf=fc.eur_mmscf,
                    life_accuracy=acc,
                )
            else:
                entry = ModelEntry(kind=kind, status="ok", params=params, fit=fit)
            entries.append(entry)
        elif kind in failures:
            entries.append(
                ModelEntry(kind=kind, status="fit_failed", message=failures[kind])
            )

    selected, reason = _select(entries)
    return AnalysisReport(
        well_id=well_id,
        np_mmscf=np_mmscf,
        q_ab=spec.q_ab if spec is not None else None,
        entries=tuple(entries),
        selected_model=selected,
        selection_reason=reason,
        actual_life_days=actual_life_days,
    )


def compare_models(
    history: ProductionHistory,
    spec: ForecastSpec,
    models=None,
    well_id: str = "well",
    holdout: ProductionHistory | None = None,
) -> AnalysisReport:
    """Fit each requested model, forecast each, and rank them.

    Selection is by lowest in-sample RMSE, ties broken by higher
    R-squared, then by the fixed preference order exponential,
    hyperbolic, harmonic.  A model whose fit fails is reported as failed
    rather than aborting the comparison, as long as at least one model
    succeeds.  Cumulative production to date is taken from the history;
    a holdout history (sharing the forecast's time origin) enables the
    life-accuracy metric.
    """
    kinds = list(models) if models is not None else list(_SELECTION_ORDER)
    if not kinds:
        raise ValidationError("at least one model must be requested")

    fits: dict[DeclineKind, FitResult] = {}
    failures: dict[DeclineKind, str] = {}
    for kind in kinds:
        try:
            fits[kind] = FITTERS[kind](history)
        except DeclineCurveError as exc:
            failures[kind] = str(exc)

    actual = time_to_abandonment(holdout, spec.q_ab) if holdout is not None else None
    return report_from_fits(
        fits,
        spec,
        np_mmscf=history.np_mmscf,
        well_id=well_id,
        failures=failures,
        actual_life_days=actual,
    )
