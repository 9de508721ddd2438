"""Command-line interface: ``analyze`` runs the full pipeline, ``simulate``
exposes the AR and random-walk generators for scripted experiments.

Exit codes: 0 success, 2 input/validation error, 3 numerical-stage error.
The seed resolution order is: --seed flag, then TSA_SEED, then the default.
"""
from __future__ import annotations

import argparse
import os
import sys

from .armodel import (ArModel, RandomWalkSpec, simulate_ar,
                      simulate_random_walk)
from .errors import (IngestionError, InsufficientDataError,
                     InvalidArgumentError, PipelineStageError, TsaError)
from .pipeline import PipelineConfig, run_pipeline, write_outputs

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _resolve_seed(flag_value) -> int:
    if flag_value is not None:
        return int(flag_value)
    env = os.environ.get("TSA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidArgumentError(f"TSA_SEED must be an integer, got {env!r}")
    return 0


def _parse_spans(text: str) -> tuple[int, ...]:
    try:
        spans = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise InvalidArgumentError(f"spans must be comma-separated integers, got {text!r}")
    if not spans:
        raise InvalidArgumentError("at least one Daniell span is required")
    return spans


def _parse_phi(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise InvalidArgumentError(f"phi must be comma-separated reals, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsakit",
        description="Monthly time-series analysis: trend regression, "
                    "stationarity diagnostics, AR identification and spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the full analysis pipeline")
    analyze.add_argument("--input", required=True, help="input CSV path")
    analyze.add_argument("--output", required=True, help="output directory")
    analyze.add_argument("--date-column", default="period")
    analyze.add_argument("--value-column", default="deaths")
    analyze.add_argument("--aic-max-order", default="auto",
                         help="maximum AR order for AIC (default: auto = floor(10 log10 N))")
    analyze.add_argument("--ar-estimator", default="yule_walker",
                         choices=["yule_walker", "least_squares"])
    analyze.add_argument("--daniell-spans", default="3,3",
                         help="comma-separated odd spans, e.g. 3,3")
    analyze.add_argument("--kpss-lag", default="auto",
                         help="Bartlett truncation lag (default: auto)")
    analyze.add_argument("--truncate-head", type=int, default=2,
                         help="samples to drop before differencing")
    analyze.add_argument("--seed", default=None,
                         help="seed recorded in the report (overrides TSA_SEED)")

    simulate = sub.add_parser("simulate", help="simulate AR or random-walk series")
    sim_sub = simulate.add_subparsers(dest="model", required=True)

    sim_ar = sim_sub.add_parser("ar", help="stationary AR(p) with Gaussian innovations")
    sim_ar.add_argument("--phi", required=True, help="comma-separated coefficients")
    sim_ar.add_argument("--sigma2", type=float, default=1.0)
    sim_ar.add_argument("--mean", type=float, default=0.0)
    sim_ar.add_argument("--n", type=int, required=True)
    sim_ar.add_argument("--seed", default=None)
    sim_ar.add_argument("--burn-in", type=int, default=None)
    sim_ar.add_argument("--out", default="-", help="output CSV path (default: stdout)")

    sim_rw = sim_sub.add_parser("random-walk", help="random walk with drift")
    sim_rw.add_argument("--drift", type=float, default=0.0)
    sim_rw.add_argument("--sigma2", type=float, default=1.0)
    sim_rw.add_argument("--y0", type=float, default=0.0)
    sim_rw.add_argument("--n", type=int, required=True)
    sim_rw.add_argument("--seed", default=None)
    sim_rw.add_argument("--out", default="-", help="output CSV path (default: stdout)")
    return parser


def _emit_series(values, destination: str) -> None:
    lines = ["t,value"] + [f"{t + 1},{v!r}" for t, v in enumerate(values)]
    text = "\n".join(lines) + "\n"
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            kpss_lag = args.kpss_lag if args.kpss_lag == "auto" else int(args.kpss_lag)
            aic_max = (args.aic_max_order if args.aic_max_order == "auto"
                       else int(args.aic_max_order))
            config = PipelineConfig(
                input_path=args.input,
                output_dir=args.output,
                date_column=args.date_column,
                value_column=args.value_column,
                truncate_head=args.truncate_head,
                aic_max_order=aic_max,
                ar_estimator=args.ar_estimator,
                daniell_spans=_parse_spans(args.daniell_spans),
                kpss_lag=kpss_lag,
                seed=_resolve_seed(args.seed),
            )
            report = run_pipeline(config)
            written = write_outputs(report, config.output_dir)
            sys.stdout.write("\n".join(str(p) for p in written) + "\n")
            return EXIT_OK
        if args.command == "simulate":
            seed = _resolve_seed(args.seed)
            if args.model == "ar":
                model = ArModel(phi=_parse_phi(args.phi), sigma2=args.sigma2,
                                mean=args.mean)
                series = simulate_ar(model, args.n, seed=seed, burn_in=args.burn_in)
            else:
                spec = RandomWalkSpec(drift=args.drift,
                                      innovation_sigma2=args.sigma2, y0=args.y0)
                series = simulate_random_walk(spec, args.n, seed=seed)
            _emit_series(series.values.tolist(), args.out)
            return EXIT_OK
        parser.error(f"unknown command {args.command!r}")
    except PipelineStageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        # Bad input or configuration discovered mid-pipeline is a validation
        # failure; everything else is a numerical-stage failure.
        if isinstance(exc.cause, (IngestionError, InsufficientDataError,
                                  InvalidArgumentError)):
            return EXIT_INPUT
        return EXIT_NUMERICAL
    except (IngestionError, InsufficientDataError, InvalidArgumentError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except TsaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERICAL
    return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
