"""Tests for CSV ingestion, report emission, and plot-data output."""

import io
import json

import numpy as np
import pytest

from dcakit import (
    DeclineKind,
    DeclineParameters,
    ForecastSpec,
    PlotSeriesKind,
    ProductionHistory,
    ValidationError,
    WellInput,
    emit_plot_series,
    emit_report,
    fit_exponential,
    history_to_csv,
    parse_history,
    report_from_fits,
    running_cumulative,
)

from conftest import NP_TO_DATE, Q_ABANDON, Q_CURRENT, synthetic_history


def parse_text(text: str, well_id: str | None = None) -> WellInput:
    return parse_history(io.StringIO(text), well_id=well_id)


class TestParseHistory:
    def test_minimal_t_days_input(self):
        well = parse_text("t_days,rate_mmscfd\n0,5\n1,4\n2,3\n")
        assert list(well.history.times) == [0.0, 1.0, 2.0]
        assert list(well.history.rates) == [5.0, 4.0, 3.0]
        assert well.np_mmscf is None
        assert well.n_dropped == 0
        assert well.well_id == "well"

    def test_dates_become_day_offsets(self):
        well = parse_text(
            "date,rate_mmscfd\n2017-08-06,5\n2017-08-07,4\n2017-08-09,3\n"
        )
        assert list(well.history.times) == [0.0, 1.0, 3.0]

    def test_non_positive_rates_dropped_and_counted(self):
        well = parse_text("t_days,rate_mmscfd\n0,5\n1,0\n2,4\n3,3\n4,2\n")
        assert len(well.history) == 4
        assert well.n_dropped == 1

    def test_cumulative_column_sets_np_from_final_row(self):
        well = parse_text(
            "t_days,rate_mmscfd,cumulative_mmscf\n0,5,100\n1,4,104.5\n2,3,108\n"
        )
        assert well.np_mmscf == 108.0

    def test_missing_rate_column(self):
        with pytest.raises(ValidationError, match="rate_mmscfd"):
            parse_text("t_days,flow\n0,5\n1,4\n2,3\n")

    def test_missing_time_column(self):
        with pytest.raises(ValidationError, match="time column"):
            parse_text("rate_mmscfd\n5\n4\n3\n")

    def test_non_monotonic_times_rejected(self):
        with pytest.raises(ValidationError, match="increasing"):
            parse_text("t_days,rate_mmscfd\n0,5\n2,4\n1,3\n")

    def test_too_few_usable_rows(self):
        with pytest.raises(ValidationError, match="at least 3"):
            parse_text("t_days,rate_mmscfd\n0,5\n1,0\n2,3\n")

    def test_malformed_numeric_reports_row_and_column(self):
        with pytest.raises(ValidationError, match=r"row 3.*rate_mmscfd.*'bad'"):
            parse_text("t_days,rate_mmscfd\n0,5\n1,bad\n2,3\n")

    def test_malformed_date_reports_row(self):
        with pytest.raises(ValidationError, match="row 2.*date"):
            parse_text("date,rate_mmscfd\nnot-a-date,5\n2020-01-02,4\n2020-01-03,3\n")

    def test_well_id_from_file_stem(self, tmp_path):
        path = tmp_path / "pad7-well-5.csv"
        path.write_text("t_days,rate_mmscfd\n0,5\n1,4\n2,3\n")
        assert parse_history(path).well_id == "pad7-well-5"

    def test_explicit_well_id_wins(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("t_days,rate_mmscfd\n0,5\n1,4\n2,3\n")
        assert parse_history(path, well_id="override").well_id == "override"

    def test_utf8_bom_tolerated(self, tmp_path):
        path = tmp_path / "bom.csv"
        path.write_bytes(b"\xef\xbb\xbft_days,rate_mmscfd\n0,5\n1,4\n2,3\n")
        assert len(parse_history(path).history) == 3


class TestRunningCumulative:
    def test_constant_rate_rectangle(self):
        h = ProductionHistory([0.0, 1.0], [2.0, 2.0])
        out = running_cumulative(h)
        assert out[:, 1].tolist() == [0.0, 2.0]

    def test_trapezoid_hand_value(self):
        h = ProductionHistory([0.0, 2.0], [4.0, 2.0])
        out = running_cumulative(h)
        assert out[:, 1].tolist() == [0.0, 6.0]

    def test_single_record(self):
        h = ProductionHistory([0.0], [3.0])
        out = running_cumulative(h)
        assert out.shape == (1, 2)
        assert out[0, 1] == 0.0

    def test_non_decreasing_from_zero(self):
        params = DeclineParameters.harmonic(12.0, 0.01)
        h = synthetic_history(params, n=80)
        cum = running_cumulative(h)[:, 1]
        assert cum[0] == 0.0
        assert np.all(np.diff(cum) > 0)

    def test_matches_np_from_same_source(self, well5_csv):
        well = parse_history(well5_csv)
        cum = running_cumulative(well.history)[:, 1]
        # Np includes pre-history production; in-window growth must match
        # the cumulative column's growth (same trapezoid, quadrature-exact)
        assert well.np_mmscf is not None
        assert cum[-1] == pytest.approx(NP_TO_DATE - 9147.436992050134, rel=1e-9)


class TestHistoryRoundTrip:
    def test_without_np(self):
        params = DeclineParameters.exponential(7.3, 0.021)
        h = synthetic_history(params, n=40)
        back = parse_text(history_to_csv(h)).history
        assert np.array_equal(back.times, h.times)
        assert np.array_equal(back.rates, h.rates)
        assert back.np_mmscf is None

    def test_with_np(self):
        rng = np.random.default_rng(61)
        params = DeclineParameters.hyperbolic(9.0, 0.015, 0.35)
        h = synthetic_history(params, n=60, noise=0.1, rng=rng, np_mmscf=321.0)
        back = parse_text(history_to_csv(h)).history
        assert np.array_equal(back.times, h.times)
        assert np.array_equal(back.rates, h.rates)
        assert back.np_mmscf == 321.0


def paper_report(**kwargs):
    spec = ForecastSpec(q_start=Q_CURRENT, q_ab=Q_ABANDON)
    fits = {
        DeclineKind.EXPONENTIAL: DeclineParameters.exponential(Q_CURRENT, 0.0134),
        DeclineKind.HARMONIC: DeclineParameters.harmonic(Q_CURRENT, 0.0039),
        DeclineKind.HYPERBOLIC: DeclineParameters.hyperbolic(Q_CURRENT, 0.0039, 2e-5),
    }
    return report_from_fits(fits, spec, np_mmscf=NP_TO_DATE, well_id="well-5", **kwargs)


class TestEmitReport:
    def test_six_significant_digits(self):
        buf = io.StringIO()
        emit_report(paper_report(), buf)
        doc = json.loads(buf.getvalue())
        by_kind = {m["kind"]: m for m in doc["models"]}
        assert by_kind["hyperbolic"]["eur_mmscf"] == 11620.3
        assert by_kind["exponential"]["delta_t_days"] == 335.126
        assert doc["np_mmscf"] == 10941.9
        assert doc["well_id"] == "well-5"
        assert doc["q_ab_mmscfd"] == 0.03

    def test_fixed_key_order(self):
        buf = io.StringIO()
        emit_report(paper_report(), buf)
        doc = json.loads(buf.getvalue())
        assert list(doc) == [
            "well_id",
            "np_mmscf",
            "q_ab_mmscfd",
            "models",
            "selected_model",
            "selection_reason",
            "actual_life_days",
        ]
        assert list(doc["models"][0]) == [
            "kind",
            "qi",
            "di_per_day",
            "b",
            "r_squared",
            "rmse_mmscfd",
            "qf_mmscf",
            "delta_t_days",
            "eur_mmscf",
            "status",
            "message",
            "life_accuracy",
        ]

    def test_failed_model_entry(self):
        spec = ForecastSpec(q_start=Q_CURRENT, q_ab=Q_ABANDON)
        report = report_from_fits(
            {DeclineKind.EXPONENTIAL: DeclineParameters.exponential(Q_CURRENT, 0.0134)},
            spec,
            failures={DeclineKind.HARMONIC: "no decline detected"},
        )
        buf = io.StringIO()
        emit_report(report, buf)
        doc = json.loads(buf.getvalue())
        failed = {m["kind"]: m for m in doc["models"]}["harmonic"]
        assert failed["status"] == "fit_failed"
        assert failed["message"] == "no decline detected"
        for field in ("qi", "di_per_day", "b", "qf_mmscf", "delta_t_days", "eur_mmscf"):
            assert failed[field] is None

    def test_byte_identical_across_runs(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        emit_report(paper_report(), a)
        emit_report(paper_report(), b)
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes().endswith(b"\n")

    def test_unwritable_destination(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot write"):
            emit_report(paper_report(), tmp_path / "missing" / "out.json")


class TestEmitPlotSeries:
    def well(self, n=3) -> WellInput:
        params = DeclineParameters.exponential(10.0, 0.05)
        return WellInput(well_id="w", history=synthetic_history(params, n=n))

    def exp_fit(self, well):
        return {DeclineKind.EXPONENTIAL: fit_exponential(well.history)}

    def test_cartesian_shape(self):
        well = self.well()
        text = emit_plot_series(well, self.exp_fit(well), "cartesian_rate_time")
        lines = text.strip().splitlines()
        assert lines[0] == "t_days,observed,exponential_fitted"
        assert len(lines) == 1 + 3
        assert all(len(line.split(",")) == 3 for line in lines[1:])

    def test_semilog_fitted_column_is_affine(self):
        well = self.well(n=40)
        text = emit_plot_series(well, self.exp_fit(well), PlotSeriesKind.SEMILOG_RATE_TIME)
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        t = np.array([float(r[0]) for r in rows])
        fitted = np.array([float(r[2]) for r in rows])
        # compare against the secant line through the endpoints
        secant = fitted[0] + (fitted[-1] - fitted[0]) * (t - t[0]) / (t[-1] - t[0])
        assert np.max(np.abs(fitted - secant)) < 1e-9

    def test_rate_cumulative_starts_at_zero(self):
        well = self.well(n=5)
        text = emit_plot_series(well, self.exp_fit(well), "rate_cumulative")
        lines = text.strip().splitlines()
        assert lines[0] == "cumulative_mmscf,rate,exponential_fitted"
        assert float(lines[1].split(",")[0]) == 0.0

    def test_overlay_accepts_bare_params(self):
        well = self.well()
        params = DeclineParameters.harmonic(10.0, 0.02)
        text = emit_plot_series(
            well, {DeclineKind.HARMONIC: params}, "cartesian_rate_time"
        )
        assert "harmonic_fitted" in text.splitlines()[0]

    def test_unknown_kind_rejected(self):
        well = self.well()
        with pytest.raises(ValidationError, match="unknown plot series kind"):
            emit_plot_series(well, self.exp_fit(well), "sideways")


class TestWellInput:
    def test_empty_well_id_rejected(self):
        params = DeclineParameters.exponential(5.0, 0.01)
        with pytest.raises(ValidationError, match="well_id"):
            WellInput(well_id="", history=synthetic_history(params, n=3))
