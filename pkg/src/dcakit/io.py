"""CSV ingestion and machine-readable report emission.

The input contract is a headered CSV with a rate column ``rate_mmscfd``
and a time column: either ``t_days`` (day offsets) or ``date``
(ISO-8601 calendar dates, converted to day offsets from the first row).
An optional ``cumulative_mmscf`` column carries cumulative production to
date; its final row sets Np.  Rows with a non-positive rate are dropped
and tallied, never stored.

Reports are deterministic JSON (fixed key order, numbers at 6
significant digits) and plot data is emitted as CSV for external
plotting tools; no images are rendered here.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import ValidationError
from .fitting import FitResult, ProductionHistory
from .forecasting import AnalysisReport
from .models import DeclineKind, DeclineParameters, rate_at

RATE_COLUMN = "rate_mmscfd"
TIME_COLUMN = "t_days"
DATE_COLUMN = "date"
CUMULATIVE_COLUMN = "cumulative_mmscf"

MIN_USABLE_ROWS = 3


@dataclass(frozen=True)
class WellInput:
    """One well's parsed input: identity, history, and optional overrides."""

    well_id: str
    history: ProductionHistory
    q_ab: float | None = None
    n_dropped: int = 0  # rows discarded for non-positive rate

    def __post_init__(self):
        if not self.well_id:
            raise ValidationError("well_id must be non-empty")

    @property
    def np_mmscf(self) -> float | None:
        return self.history.np_mmscf


class PlotSeriesKind(Enum):
    CARTESIAN_RATE_TIME = "cartesian_rate_time"
    SEMILOG_RATE_TIME = "semilog_rate_time"
    RATE_CUMULATIVE = "rate_cumulative"


def _parse_float(raw: str, line_num: int, column: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ValidationError(
            f"row {line_num}, column '{column}': could not parse {raw!r} as a number"
        ) from None
    if not math.isfinite(value):
        raise ValidationError(
            f"row {line_num}, column '{column}': non-finite value {raw!r}"
        )
    return value


def _parse_date(raw: str, line_num: int) -> date:
    try:
        return date.fromisoformat(raw.strip())
    except ValueError:
        raise ValidationError(
            f"row {line_num}, column '{DATE_COLUMN}': "
            f"could not parse {raw!r} as an ISO-8601 date"
        ) from None


def parse_history(source, well_id: str | None = None) -> WellInput:
    """Read a production CSV into a WellInput.

    ``source`` is a path or an open text stream.  When ``well_id`` is not
    given it defaults to the file stem, or "well" for streams.
    """
    if hasattr(source, "read"):
        return _parse_stream(source, well_id or "well")
    path = Path(source)
    try:
        # utf-8-sig strips the BOM that spreadsheet exports often prepend
        with open(path, newline="", encoding="utf-8-sig") as handle:
            return _parse_stream(handle, well_id or path.stem)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _parse_stream(handle, well_id: str) -> WellInput:
    reader = csv.DictReader(handle)
    fields = reader.fieldnames or []

    if RATE_COLUMN not in fields:
        raise ValidationError(f"missing required column '{RATE_COLUMN}'")
    if TIME_COLUMN in fields:
        time_column = TIME_COLUMN
    elif DATE_COLUMN in fields:
        time_column = DATE_COLUMN
    else:
        raise ValidationError(
            f"missing time column: need '{TIME_COLUMN}' or '{DATE_COLUMN}'"
        )
    has_cumulative = CUMULATIVE_COLUMN in fields

    times: list[float] = []
    rates: list[float] = []
    np_mmscf: float | None = None
    first_date: date | None = None

    for row in reader:
        line = reader.line_num
        if time_column == DATE_COLUMN:
            d = _parse_date(row[DATE_COLUMN], line)
            if first_date is None:
                first_date = d
            t = float((d - first_date).days)
        else:
            t = _parse_float(row[TIME_COLUMN], line, TIME_COLUMN)
        rate = _parse_float(row[RATE_COLUMN], line, RATE_COLUMN)
        if has_cumulative:
            np_mmscf = _parse_float(row[CUMULATIVE_COLUMN], line, CUMULATIVE_COLUMN)

        if times and t <= times[-1]:
            raise ValidationError(
                f"row {line}: timestamps must be strictly increasing "
                f"({t:g} follows {times[-1]:g})"
            )
        times.append(t)
        rates.append(rate)

    kept = [(t, q) for t, q in zip(times, rates) if q > 0]
    n_dropped = len(times) - len(kept)
    if len(kept) < MIN_USABLE_ROWS:
        raise ValidationError(
            f"need at least {MIN_USABLE_ROWS} usable rows, got {len(kept)} "
            f"({n_dropped} dropped for non-positive rate)"
        )

    history = ProductionHistory(
        [t for t, _ in kept], [q for _, q in kept], np_mmscf=np_mmscf
    )
    return WellInput(well_id=well_id, history=history, n_dropped=n_dropped)


def running_cumulative(history: ProductionHistory) -> np.ndarray:
    """Per-record (rate, cumulative) pairs; trapezoidal volume, starting at 0.

    Returns an (n, 2) array with the rate in column 0 and the cumulative
    volume in column 1 (mmscf/day integrated over days).
    """
    cum = cumulative_trapezoid(history.rates, history.times, initial=0.0)
    return np.column_stack([history.rates, cum])


def history_to_csv(history: ProductionHistory, destination=None) -> str:
    """Write a history back out in the input CSV schema.

    When Np is known, a ``cumulative_mmscf`` column is included, offset
    so that the final row equals Np (records before the first row may
    account for the difference from the in-window running total).
    Parsing the output reproduces the history exactly.
    """
    lines = []
    if history.np_mmscf is None:
        lines.append(f"{TIME_COLUMN},{RATE_COLUMN}")
        for t, q in zip(history.times, history.rates):
            lines.append(f"{float(t)!r},{float(q)!r}")
    else:
        cum = running_cumulative(history)[:, 1]
        cum = cum + (history.np_mmscf - cum[-1])
        lines.append(f"{TIME_COLUMN},{RATE_COLUMN},{CUMULATIVE_COLUMN}")
        for t, q, c in zip(history.times, history.rates, cum):
            lines.append(f"{float(t)!r},{float(q)!r},{float(c)!r}")
    text = "\n".join(lines) + "\n"
    if destination is not None:
        _write_text(destination, text)
    return text


def _sig6(value):
    """Round to 6 significant digits for report serialization."""
    if value is None:
        return None
    return float(f"{value:.6g}")


def report_to_dict(report: AnalysisReport) -> dict:
    """The report as a JSON-ready dict with a fixed key order."""
    models = []
    for entry in report.entries:
        p = entry.params
        models.append(
            {
                "kind": entry.kind.value,
                "qi": _sig6(p.qi) if p else None,
                "di_per_day": _sig6(p.di) if p else None,
                "b": _sig6(p.b) if p else None,
                "r_squared": _sig6(entry.r_squared),
                "rmse_mmscfd": _sig6(entry.rmse),
                "qf_mmscf": _sig6(entry.qf),
                "delta_t_days": _sig6(entry.delta_t),
                "eur_mmscf": _sig6(entry.eur_mmscf),
                "status": entry.status,
                "message": entry.message,
                "life_accuracy": _sig6(entry.life_accuracy),
            }
        )
    return {
        "well_id": report.well_id,
        "np_mmscf": _sig6(report.np_mmscf),
        "q_ab_mmscfd": _sig6(report.q_ab),
        "models": models,
        "selected_model": report.selected_model.value,
        "selection_reason": report.selection_reason,
        "actual_life_days": _sig6(report.actual_life_days),
    }


def emit_report(report: AnalysisReport, destination) -> None:
    """Serialize the report as deterministic JSON.

    Identical reports produce byte-identical output: key order is fixed,
    numbers carry 6 significant digits, and the file ends with a newline.
    """
    text = json.dumps(report_to_dict(report), indent=2) + "\n"
    _write_text(destination, text)


def _overlay_params(fit) -> DeclineParameters:
    return fit.params if isinstance(fit, FitResult) else fit


def emit_plot_series(
    well: WellInput,
    fits: dict[DeclineKind, FitResult | DeclineParameters],
    kind: PlotSeriesKind | str,
    destination=None,
) -> str:
    """Emit observed data plus fitted-model overlays as plot-ready CSV.

    Column layout by kind (models in exponential, harmonic, hyperbolic
    order, restricted to the fits supplied):

        cartesian_rate_time:  t_days, observed, <model>_fitted...
        semilog_rate_time:    t_days, observed_log10_rate,
                              <model>_fitted_log10_rate...
        rate_cumulative:      cumulative_mmscf, rate, <model>_fitted...

    Fitted overlays are the model rate at each record's elapsed time,
    anchored at the first record.
    """
    try:
        kind = PlotSeriesKind(kind)
    except ValueError:
        raise ValidationError(f"unknown plot series kind: {kind!r}") from None
    history = well.history
    u = history.times - history.times[0]
    overlay_kinds = [k for k in DeclineKind if k in fits]
    overlays = {
        k: rate_at(_overlay_params(fits[k]), u) for k in overlay_kinds
    }

    if kind is PlotSeriesKind.CARTESIAN_RATE_TIME:
        header = ["t_days", "observed"] + [f"{k.value}_fitted" for k in overlay_kinds]
        columns = [history.times, history.rates]
        columns += [overlays[k] for k in overlay_kinds]
    elif kind is PlotSeriesKind.SEMILOG_RATE_TIME:
        header = ["t_days", "observed_log10_rate"] + [
            f"{k.value}_fitted_log10_rate" for k in overlay_kinds
        ]
        columns = [history.times, np.log10(history.rates)]
        columns += [np.log10(overlays[k]) for k in overlay_kinds]
    else:
        cum = running_cumulative(history)[:, 1]
        header = ["cumulative_mmscf", "rate"] + [
            f"{k.value}_fitted" for k in overlay_kinds
        ]
        columns = [cum, history.rates]
        columns += [overlays[k] for k in overlay_kinds]

    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if destination is not None:
        _write_text(destination, text)
    return text


def _write_text(destination, text: str) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        Path(destination).write_text(text)
    except OSError as exc:
        raise ValidationError(f"cannot write to {destination}: {exc}") from exc
