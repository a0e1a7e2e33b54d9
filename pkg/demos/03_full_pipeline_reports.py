"""The whole pipeline: CSV in, ranked JSON report and plot data out.

Parses the bundled synthetic well file, compares all three decline
models against its history, forecasts each to the economic limit, and
writes the machine-readable products into demos/output/: the comparison
report (JSON) and the three plot-data series (CSV) that external tools
can chart directly.  The same flow is available from the shell as
``dca compare`` / ``dca plot-data``.
"""

from pathlib import Path

from dcakit import (
    FITTERS,
    ForecastSpec,
    PlotSeriesKind,
    compare_models,
    emit_plot_series,
    emit_report,
    parse_history,
)

HERE = Path(__file__).parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)

well = parse_history(HERE.parent / "tests" / "data" / "well5_synthetic.csv")
history = well.history
print(f"{well.well_id}: {len(history)} records, Np = {history.np_mmscf} mmscf")

# forecast from the latest observed rate down to the 0.03 mmscf/d limit
spec = ForecastSpec(q_start=float(history.rates[-1]), q_ab=0.03)
report = compare_models(history, spec, well_id=well.well_id)

print(f"selected model: {report.selected_model.value} ({report.selection_reason})")
for entry in report.entries:
    print(
        f"  {entry.kind.value:<13} rmse={entry.rmse:.4f}"
        f"  dt={entry.delta_t:10.1f} d  EUR={entry.eur_mmscf:10.1f} mmscf"
    )

emit_report(report, OUT / "well5_report.json")

# plot-ready series: observed points plus each fitted model's overlay
fits = {kind: FITTERS[kind](history) for kind in FITTERS}
for kind in PlotSeriesKind:
    name = OUT / f"well5_{kind.value}.csv"
    emit_plot_series(well, fits, kind, destination=name)
    print(f"wrote {name.relative_to(HERE)}")

print(f"wrote {(OUT / 'well5_report.json').relative_to(HERE)}")
