"""Decline curve analysis for gas wells.

Fits the three classical Arps decline models (exponential, harmonic,
hyperbolic) to production histories and turns the fitted parameters into
forecasts, remaining producing life, and estimated ultimate recovery.
"""

from .errors import DeclineCurveError, FitError, ValidationError
from .fitting import (
    FITTERS,
    FitResult,
    ProductionHistory,
    ProductionRecord,
    SmoothingSpec,
    fit_exponential,
    fit_harmonic,
    fit_hyperbolic,
    goodness,
    params_from_reciprocal,
    params_from_semilog,
    smooth,
)
from .forecasting import (
    DEFAULT_ABANDONMENT_RATE,
    AnalysisReport,
    Forecast,
    ForecastSpec,
    ModelEntry,
    compare_models,
    eur,
    forecast,
    life_accuracy,
    report_from_fits,
    time_to_abandonment,
)
from .io import (
    PlotSeriesKind,
    WellInput,
    emit_plot_series,
    emit_report,
    history_to_csv,
    parse_history,
    report_to_dict,
    running_cumulative,
)
from .models import (
    DeclineKind,
    DeclineParameters,
    RateInterval,
    cumulative_between,
    exponential_rate,
    harmonic_rate,
    hyperbolic_rate,
    nominal_decline_from_semilog_slope,
    rate_at,
    time_between_rates,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "DEFAULT_ABANDONMENT_RATE",
    "DeclineCurveError",
    "DeclineKind",
    "DeclineParameters",
    "FITTERS",
    "FitError",
    "FitResult",
    "Forecast",
    "ForecastSpec",
    "ModelEntry",
    "PlotSeriesKind",
    "ProductionHistory",
    "ProductionRecord",
    "RateInterval",
    "SmoothingSpec",
    "ValidationError",
    "WellInput",
    "compare_models",
    "cumulative_between",
    "emit_plot_series",
    "emit_report",
    "eur",
    "exponential_rate",
    "fit_exponential",
    "fit_harmonic",
    "fit_hyperbolic",
    "forecast",
    "goodness",
    "harmonic_rate",
    "history_to_csv",
    "hyperbolic_rate",
    "life_accuracy",
    "nominal_decline_from_semilog_slope",
    "params_from_reciprocal",
    "params_from_semilog",
    "parse_history",
    "rate_at",
    "report_from_fits",
    "report_to_dict",
    "running_cumulative",
    "smooth",
    "time_between_rates",
    "time_to_abandonment",
]
