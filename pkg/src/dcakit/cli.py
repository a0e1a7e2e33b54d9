"""Command-line entry point: the ``dca`` tool.

Subcommands:

    dca fit       --input w.csv [--model all] [--smooth-window N]
                  [--window tmin:tmax] --out fit.json
    dca forecast  --input w.csv [--model all] [--q-ab 0.03] [--np NP]
                  [--step 1.0] --out forecast.json
    dca compare   --input w.csv [--q-ab 0.03] [--np NP]
                  [--holdout h.csv] --out report.json
    dca plot-data --input w.csv --kind cartesian|semilog|rate-cum
                  [--model all] --out series.csv

Every flag can also be supplied from a TOML file passed via --config
(keys are the flag names with dashes replaced by underscores, e.g.
``q_ab = 0.03``); explicit flags override file values.

Exit codes: 0 success, 2 input or validation error, 3 fit failure
(every requested model failed).
"""

from __future__ import annotations

import argparse
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import FitError, ValidationError
from .fitting import FITTERS, ProductionHistory, SmoothingSpec, smooth
from .forecasting import (
    DEFAULT_ABANDONMENT_RATE,
    DEFAULT_STEP_DAYS,
    ForecastSpec,
    compare_models,
    report_from_fits,
)
from .io import PlotSeriesKind, emit_plot_series, emit_report, parse_history
from .models import DeclineKind

_MODEL_CHOICES = {
    "exp": [DeclineKind.EXPONENTIAL],
    "harm": [DeclineKind.HARMONIC],
    "hyp": [DeclineKind.HYPERBOLIC],
    "all": list(DeclineKind),
}

_PLOT_KINDS = {
    "cartesian": PlotSeriesKind.CARTESIAN_RATE_TIME,
    "semilog": PlotSeriesKind.SEMILOG_RATE_TIME,
    "rate-cum": PlotSeriesKind.RATE_CUMULATIVE,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dca", description="Decline curve analysis for gas-well production data."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="production history CSV")
        p.add_argument("--out", help="output file path")
        p.add_argument("--config", help="TOML file supplying any of the flags")

    p = sub.add_parser("fit", help="fit decline models, report parameters")
    common(p)
    p.add_argument("--model", choices=sorted(_MODEL_CHOICES))
    p.add_argument("--smooth-window", type=int, help="odd moving-average window")
    p.add_argument("--window", help="fit window as tmin:tmax in days")

    p = sub.add_parser("forecast", help="fit and forecast to abandonment")
    common(p)
    p.add_argument("--model", choices=sorted(_MODEL_CHOICES))
    p.add_argument("--q-ab", type=float, help="abandonment rate, mmscf/day")
    p.add_argument("--np", dest="np_mmscf", type=float, help="cumulative to date, mmscf")
    p.add_argument("--step", type=float, help="forecast sampling step, days")

    p = sub.add_parser("compare", help="fit all models, rank, and report")
    common(p)
    p.add_argument("--q-ab", type=float, help="abandonment rate, mmscf/day")
    p.add_argument("--np", dest="np_mmscf", type=float, help="cumulative to date, mmscf")
    p.add_argument("--holdout", help="later-observed history CSV for life accuracy")

    p = sub.add_parser("plot-data", help="emit observed + fitted plot series CSV")
    common(p)
    p.add_argument("--kind", choices=sorted(_PLOT_KINDS))
    p.add_argument("--model", choices=sorted(_MODEL_CHOICES))

    return parser


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if args.config is None:
        return
    try:
        with open(args.config, "rb") as handle:
            config = tomllib.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read config {args.config}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"invalid TOML in {args.config}: {exc}") from exc

    # Fill in any flag the command line left unset.  Config keys are the
    # flag names with dashes replaced by underscores.
    for action in parser._actions:
        for option in action.option_strings:
            key = option.lstrip("-").replace("-", "_")
            if key in config and getattr(args, action.dest, None) is None:
                setattr(args, action.dest, config[key])


def _subparser_for(parser: argparse.ArgumentParser, command: str):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ValidationError(f"--{name.replace('_', '-')} is required")


# Config-file values bypass argparse's type/choices checks, so coerce and
# validate again at the point of use.


def _as_float(flag: str, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"--{flag} must be a number, got {value!r}") from None


def _as_int(flag: str, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"--{flag} must be an integer, got {value!r}") from None


def _model_kinds(args):
    name = args.model or "all"
    if name not in _MODEL_CHOICES:
        raise ValidationError(
            f"--model must be one of {sorted(_MODEL_CHOICES)}, got {name!r}"
        )
    return _MODEL_CHOICES[name]


def _load_well(args):
    well = parse_history(args.input)
    if well.n_dropped:
        print(
            f"warning: dropped {well.n_dropped} row(s) with non-positive rate",
            file=sys.stderr,
        )
    return well


def _override_np(history: ProductionHistory, np_flag) -> ProductionHistory:
    if np_flag is None:
        return history
    np_flag = _as_float("np", np_flag)
    if history.np_mmscf is not None and history.np_mmscf != np_flag:
        print(
            f"warning: --np {np_flag:g} overrides cumulative_mmscf-derived "
            f"Np {history.np_mmscf:g}",
            file=sys.stderr,
        )
    return ProductionHistory(history.times, history.rates, np_mmscf=np_flag)


def _fit_requested(history, kinds):
    fits, failures = {}, {}
    for kind in kinds:
        try:
            fits[kind] = FITTERS[kind](history)
        except (ValidationError, FitError) as exc:
            failures[kind] = str(exc)
    return fits, failures


def _cmd_fit(args) -> int:
    _require(args, "input", "out")
    well = _load_well(args)
    history = well.history
    if args.window is not None:
        try:
            t_min, t_max = (float(v) for v in str(args.window).split(":"))
        except ValueError:
            raise ValidationError(
                f"--window must be tmin:tmax, got {args.window!r}"
            ) from None
        history = history.window(t_min, t_max)
    if args.smooth_window is not None:
        window = _as_int("smooth-window", args.smooth_window)
        history = smooth(history, SmoothingSpec(window=window))

    fits, failures = _fit_requested(history, _model_kinds(args))
    report = report_from_fits(
        fits, None, np_mmscf=history.np_mmscf, well_id=well.well_id, failures=failures
    )
    emit_report(report, args.out)
    return 0


def _forecast_spec(args, well) -> ForecastSpec:
    q_ab = args.q_ab if args.q_ab is not None else well.q_ab
    step = getattr(args, "step", None)
    return ForecastSpec(
        q_start=float(well.history.rates[-1]),
        q_ab=_as_float("q-ab", q_ab) if q_ab is not None else DEFAULT_ABANDONMENT_RATE,
        step=_as_float("step", step) if step is not None else DEFAULT_STEP_DAYS,
    )


def _cmd_forecast(args) -> int:
    _require(args, "input", "out")
    well = _load_well(args)
    history = _override_np(well.history, args.np_mmscf)
    spec = _forecast_spec(args, well)

    fits, failures = _fit_requested(history, _model_kinds(args))
    report = report_from_fits(
        fits, spec, np_mmscf=history.np_mmscf, well_id=well.well_id, failures=failures
    )
    emit_report(report, args.out)
    return 0


def _cmd_compare(args) -> int:
    _require(args, "input", "out")
    well = _load_well(args)
    history = _override_np(well.history, args.np_mmscf)
    spec = _forecast_spec(args, well)
    holdout = parse_history(args.holdout).history if args.holdout else None

    report = compare_models(
        history, spec, well_id=well.well_id, holdout=holdout
    )
    emit_report(report, args.out)
    return 0


def _cmd_plot_data(args) -> int:
    _require(args, "input", "out", "kind")
    if args.kind not in _PLOT_KINDS:
        raise ValidationError(
            f"--kind must be one of {sorted(_PLOT_KINDS)}, got {args.kind!r}"
        )
    well = _load_well(args)
    fits, failures = _fit_requested(well.history, _model_kinds(args))
    if not fits:
        raise FitError(
            "no model produced a usable fit: "
            + "; ".join(f"{k.value}: {v}" for k, v in failures.items())
        )
    for kind, message in failures.items():
        print(f"warning: {kind.value} overlay skipped: {message}", file=sys.stderr)
    emit_plot_series(well, fits, _PLOT_KINDS[args.kind], destination=args.out)
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "forecast": _cmd_forecast,
    "compare": _cmd_compare,
    "plot-data": _cmd_plot_data,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, _subparser_for(parser, args.command))
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
