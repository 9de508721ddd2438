"""End-to-end analysis pipeline: CSV ingestion, staged computation, reporting.

Stage order is fixed by the methodology being reproduced: fit the linear trend
on the full series, diagnose its residuals, then truncate the head, take the
first difference, demean, and run the stationarity test, AR identification and
spectral estimation on the result. The report is a versioned JSON document and
each figure's plot data goes to its own CSV; files are only written after every
stage has succeeded.
"""
from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from . import __version__ as _toolkit_version
from .armodel import (ArModel, characteristic_roots, fit_ar_least_squares,
                      fit_ar_yule_walker, is_stationary, select_order_aic,
                      unit_root_flags)
from .correlation import sample_acf
from .errors import (DuplicateMonthError, InsufficientDataError,
                     InvalidArgumentError, MalformedRowError, MissingInputError,
                     MonthGapError, PipelineStageError, TsaError)
from .regression import LinearTrendFit, fit_linear_trend
from .series import Period, TimeSeries, demean, difference
from .spectral import ar_psd, daniell_smooth, periodogram
from .special import norm_ppf
from .stattests import jarque_bera, kpss_level, shapiro_wilk

REPORT_FORMAT_VERSION = "1"

FIGURE_FILES = (
    "fig_trend.csv",
    "fig_residuals.csv",
    "fig_qq.csv",
    "fig_diff_sacf.csv",
    "fig_hist.csv",
    "fig_spectrum_np.csv",
    "fig_spectrum_ar.csv",
)


@dataclass(frozen=True)
class PipelineConfig:
    input_path: str
    output_dir: str
    date_column: str = "period"
    value_column: str = "deaths"
    truncate_head: int = 2
    aic_max_order: Union[int, str] = "auto"
    ar_estimator: str = "yule_walker"
    daniell_spans: tuple[int, ...] = (3, 3)
    kpss_lag: Union[int, str] = "auto"
    ar_psd_grid: int = 257
    seed: int = 0
    report_format_version: str = REPORT_FORMAT_VERSION

    def __post_init__(self):
        if self.truncate_head < 0:
            raise InvalidArgumentError(
                f"truncate_head must be >= 0, got {self.truncate_head}")
        object.__setattr__(self, "daniell_spans", tuple(int(s) for s in self.daniell_spans))


def ingest_csv(path: Union[str, Path], config: PipelineConfig) -> TimeSeries:
    """Parse and validate a (period, count) CSV into a contiguous TimeSeries."""
    path = Path(path)
    if not path.exists():
        raise MissingInputError(f"input file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InsufficientDataError(f"input file {path} is empty") from None
        header = [h.strip() for h in header]
        for column in (config.date_column, config.value_column):
            if column not in header:
                raise MalformedRowError(f"missing required column {column!r}", 1)
        date_idx = header.index(config.date_column)
        value_idx = header.index(config.value_column)

        periods: list[Period] = []
        values: list[float] = []
        seen: set[Period] = set()
        for line_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) <= max(date_idx, value_idx):
                raise MalformedRowError("row has too few columns", line_number)
            try:
                period = Period.parse(row[date_idx])
            except InvalidArgumentError as exc:
                raise MalformedRowError(str(exc), line_number) from None
            raw = row[value_idx].strip()
            try:
                value = int(raw)
            except ValueError:
                raise MalformedRowError(
                    f"count must be an integer, got {raw!r}", line_number) from None
            if value < 0:
                raise MalformedRowError(
                    f"count must be non-negative, got {value}", line_number)
            if period in seen:
                raise DuplicateMonthError(str(period))
            if periods:
                expected = periods[-1].plus_months(1)
                if period != expected:
                    if period > expected:
                        raise MonthGapError(str(expected))
                    raise MalformedRowError(
                        f"periods must be increasing, got {period} after {periods[-1]}",
                        line_number)
            seen.add(period)
            periods.append(period)
            values.append(float(value))

    if not values:
        raise InsufficientDataError(f"input file {path} contains no data rows")
    return TimeSeries(np.asarray(values), start_period=periods[0])


def qq_plot_data(x: Sequence[float]) -> list[tuple[float, float]]:
    """Normal QQ pairs: (Phi^-1((i - 3/8)/(N + 1/4)), i-th order statistic)."""
    arr = np.sort(np.asarray(x, dtype=float))
    n = arr.size
    if n < 3:
        raise InsufficientDataError(f"QQ plot needs at least 3 points, got {n}")
    theoretical = [norm_ppf((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)]
    return list(zip(theoretical, arr.tolist()))


@dataclass(frozen=True)
class HistogramData:
    bin_edges: np.ndarray
    counts: np.ndarray
    overlay_x: np.ndarray
    overlay_density: np.ndarray
    degenerate: bool


def histogram_data(x: Sequence[float], bins: Union[int, str] = "auto") -> HistogramData:
    """Equal-width histogram (Sturges by default) with a normal density overlay."""
    arr = np.asarray(x, dtype=float)
    n = arr.size
    if n < 2:
        raise InsufficientDataError(f"histogram needs at least 2 points, got {n}")
    if bins == "auto":
        n_bins = int(math.ceil(math.log2(n))) + 1
    else:
        n_bins = int(bins)
        if n_bins < 1:
            raise InvalidArgumentError(f"bin count must be >= 1, got {bins}")
    lo, hi = float(arr.min()), float(arr.max())
    # A range below a few float spacings cannot support equal-width binning.
    degenerate = (hi - lo) <= 4.0 * float(np.spacing(max(abs(lo), abs(hi), 1.0)))
    if degenerate:
        edges = np.array([lo - 0.5, lo + 0.5])
        counts = np.array([n])
    else:
        edges = np.linspace(lo, hi, n_bins + 1)
        counts = np.zeros(n_bins, dtype=int)
        idx = np.minimum(((arr - lo) / (hi - lo) * n_bins).astype(int), n_bins - 1)
        for i in idx:
            counts[i] += 1
    mean = float(arr.mean())
    var = float(arr.var(ddof=1)) if n > 1 else 0.0
    if var > 0.0:
        xs = np.linspace(edges[0], edges[-1], 101)
        density = np.exp(-0.5 * (xs - mean) ** 2 / var) / math.sqrt(2 * math.pi * var)
    else:
        xs = np.array([mean])
        density = np.array([0.0])
    return HistogramData(bin_edges=edges, counts=np.asarray(counts),
                         overlay_x=xs, overlay_density=density, degenerate=degenerate)


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the pipeline computed, as a JSON-serializable tree."""

    body: dict
    figures: dict  # figure file name -> list of rows (header first)

    def to_json(self) -> str:
        return json.dumps(self.body, indent=2, sort_keys=True) + "\n"


def _fingerprint(path: Union[str, Path], x: TimeSeries) -> dict:
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    periods = x.periods()
    return {
        "row_count": len(x),
        "first_period": periods[0] if periods else None,
        "last_period": periods[-1] if periods else None,
        "sha256": digest,
    }


def _trend_section(fit: LinearTrendFit) -> dict:
    return {
        "beta0": fit.beta0,
        "beta1": fit.beta1,
        "se_beta0": fit.se_beta0,
        "se_beta1": fit.se_beta1,
        "t_beta0": fit.t_beta0,
        "t_beta1": fit.t_beta1,
        "p_beta0": fit.p_beta0.to_dict(),
        "p_beta1": fit.p_beta1.to_dict(),
        "r_squared": fit.r_squared,
        "f_statistic": fit.f_statistic,
        "model_p_value": fit.model_p_value.to_dict(),
        "n": fit.n,
        "dof": fit.dof,
    }


def _model_section(model: ArModel) -> dict:
    roots = characteristic_roots(model)
    flags = unit_root_flags(model)
    return {
        "order": model.order,
        "phi": list(model.phi),
        "sigma2": model.sigma2,
        "mean": model.mean,
        "estimation_method": model.estimation_method,
        "n_used": model.n_used,
        "roots": [{"re": z.real, "im": z.imag, "modulus": abs(z),
                   "unit_root": bool(f)} for z, f in zip(roots, flags)],
        "stationary": is_stationary(model),
    }


def run_pipeline(config: PipelineConfig) -> AnalysisReport:
    """Execute every stage and assemble the report; see module docstring."""

    def stage(name: str, fn):
        try:
            return fn()
        except TsaError as exc:
            raise PipelineStageError(name, exc) from exc

    x = stage("ingest", lambda: ingest_csv(config.input_path, config))

    fit = stage("trend-regression", lambda: fit_linear_trend(x))
    residuals = fit.residuals.values

    jb = stage("residual-diagnostics", lambda: jarque_bera(residuals))
    sw = stage("residual-diagnostics", lambda: shapiro_wilk(residuals))

    def do_difference():
        if config.truncate_head >= len(x) - 1:
            raise InvalidArgumentError(
                f"truncate_head={config.truncate_head} leaves too few points")
        truncated = TimeSeries(x.values[config.truncate_head:],
                               x.start_period.plus_months(config.truncate_head)
                               if x.start_period else None)
        diffed = difference(truncated, 1)
        return demean(diffed)

    centered, removed_mean = stage("difference", do_difference)

    kpss = stage("stationarity-test",
                 lambda: kpss_level(centered.values, config.kpss_lag))

    n_diff = len(centered)
    if config.aic_max_order == "auto":
        # floor(10 log10 N), clamped so short inputs keep K below N/2.
        max_order = max(1, min(int(10.0 * math.log10(n_diff)),
                               (n_diff - 1) // 2))
    else:
        max_order = int(config.aic_max_order)

    aic = stage("identification",
                lambda: select_order_aic(centered.values, max_order,
                                         config.ar_estimator))

    def do_fit():
        if config.ar_estimator == "yule_walker":
            return fit_ar_yule_walker(centered.values, aic.selected_order)
        if aic.selected_order == 0:
            return fit_ar_yule_walker(centered.values, 0)
        return fit_ar_least_squares(centered.values, aic.selected_order)

    model = stage("estimation", do_fit)

    raw_spec = stage("spectral",
                     lambda: periodogram(centered.values, demean=True))
    smooth_spec = stage("spectral",
                        lambda: daniell_smooth(raw_spec, config.daniell_spans))
    ar_spec = stage("spectral", lambda: ar_psd(model, config.ar_psd_grid))

    acf = stage("sacf", lambda: sample_acf(centered.values,
                                           min(24, n_diff - 1)))
    qq = stage("figure-data", lambda: qq_plot_data(residuals))
    hist = stage("figure-data", lambda: histogram_data(centered.values))

    body = {
        "report_format_version": config.report_format_version,
        "toolkit_version": _toolkit_version,
        "dataset": _fingerprint(config.input_path, x),
        "trend": _trend_section(fit),
        "residual_diagnostics": {
            "jarque_bera": jb.to_dict(),
            "shapiro_wilk": sw.to_dict(),
        },
        "difference": {
            "truncate_head": config.truncate_head,
            "difference_order": 1,
            "length": n_diff,
            "mean_removed": removed_mean,
            "kpss": kpss.to_dict(),
            "aic": aic.to_dict(),
            "selected_model": _model_section(model),
        },
        "spectra": {
            "raw_periodogram": {"file": "fig_spectrum_np.csv",
                                "parameters": _jsonable(raw_spec.parameters)},
            "smoothed": {"file": "fig_spectrum_np.csv",
                         "parameters": _jsonable(smooth_spec.parameters)},
            "ar_parametric": {"file": "fig_spectrum_ar.csv",
                              "parameters": _jsonable(ar_spec.parameters)},
        },
        "decisions": {
            "ar_estimator": config.ar_estimator,
            "aic_max_order": max_order,
            "daniell_spans": list(config.daniell_spans),
            "kpss_lag": kpss.nuisance["truncation_lag"],
            "kpss_lag_rule": ("floor(4*(N/100)^0.25)"
                              if config.kpss_lag == "auto" else "explicit"),
            "truncate_head": config.truncate_head,
            "p_value_censor_threshold": 2.2e-16,
            "time_index_origin": 1,
            "seed": config.seed,
        },
        "figure_files": list(FIGURE_FILES),
    }

    figures = _figure_rows(x, fit, centered, acf, hist, qq, raw_spec,
                           smooth_spec, ar_spec)
    return AnalysisReport(body=body, figures=figures)


def _jsonable(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, (np.integer,)):
            out[key] = int(value)
        elif isinstance(value, (np.floating,)):
            out[key] = float(value)
        elif isinstance(value, tuple):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def _figure_rows(x, fit, centered, acf, hist, qq, raw_spec, smooth_spec,
                 ar_spec) -> dict:
    periods = x.periods() or [str(t) for t in range(len(x))]
    figures: dict[str, list] = {}

    rows = [("period", "t", "observed", "fitted")]
    for i, period in enumerate(periods):
        rows.append((period, i + 1, x.values[i], fit.fitted.values[i]))
    figures["fig_trend.csv"] = rows

    rows = [("t", "fitted", "residual")]
    for i in range(len(x)):
        rows.append((i + 1, fit.fitted.values[i], fit.residuals.values[i]))
    figures["fig_residuals.csv"] = rows

    figures["fig_qq.csv"] = [("theoretical_quantile", "sample_quantile")] + [
        (t, s) for t, s in qq]

    rows = [("panel", "x", "y", "band")]
    for i in range(len(centered)):
        rows.append(("series", i + 1, centered.values[i], ""))
    for lag, rho in zip(acf.lags.tolist(), acf.autocorrelation.tolist()):
        rows.append(("sacf", lag, rho, acf.band))
    figures["fig_diff_sacf.csv"] = rows

    rows = [("panel", "x", "x2", "y")]
    for i in range(hist.counts.size):
        rows.append(("bar", hist.bin_edges[i], hist.bin_edges[i + 1],
                     int(hist.counts[i])))
    for xv, dv in zip(hist.overlay_x.tolist(), hist.overlay_density.tolist()):
        rows.append(("normal_density", xv, "", dv))
    figures["fig_hist.csv"] = rows

    rows = [("frequency", "raw_power", "smoothed_power")]
    for f, raw, smooth in zip(raw_spec.frequencies.tolist(),
                              raw_spec.power.tolist(),
                              smooth_spec.power.tolist()):
        rows.append((f, raw, smooth))
    figures["fig_spectrum_np.csv"] = rows

    rows = [("frequency", "power")]
    for f, p in zip(ar_spec.frequencies.tolist(), ar_spec.power.tolist()):
        rows.append((f, p))
    figures["fig_spectrum_ar.csv"] = rows
    return figures


def write_outputs(report: AnalysisReport, output_dir: Union[str, Path]) -> list[Path]:
    """Write report.json and every figure CSV; returns the written paths."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    report_path = out / "report.json"
    report_path.write_text(report.to_json(), encoding="utf-8")
    written.append(report_path)
    for name, rows in report.figures.items():
        path = out / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            for row in rows:
                writer.writerow([_format_cell(cell) for cell in row])
        written.append(path)
    return written


def _format_cell(cell) -> str:
    if isinstance(cell, float):
        return repr(cell)
    return str(cell)
