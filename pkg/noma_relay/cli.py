"""Command-line front end: sweeps, figure reproduction and validation.

Exit codes: 0 on success, 1 when a validation check fails or a numerical
routine gives up, 2 on bad input (unknown metric or figure, malformed config,
empty metric list).
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from . import config
from .__version__ import __version__
from .errors import DomainError, NomaError
from .logging import log_run, setup_run_logging
from .montecarlo import McControl
from .sweep import (
    FIGURE_IDS,
    OutputFormat,
    SweepSpec,
    load_config_file,
    parse_snr_grid,
    run_figure,
    run_sweep,
    run_validate,
)

logger = logging.getLogger("noma-relay.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _mc_control(samples: Optional[int], seed: Optional[int]) -> Optional[McControl]:
    if samples is None:
        return None
    if seed is None:
        return McControl(samples=samples)
    return McControl(samples=samples, seed=seed)


def _add_mc_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mc-samples", type=int, help="Monte Carlo samples per point")
    parser.add_argument("--seed", type=int, help=f"RNG seed (default {config.DEFAULT_SEED})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-relay",
        description="Outage, rate, throughput and energy efficiency of cooperative NOMA "
        "with a full/half-duplex user relay.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-format",
        choices=["text", "json"],
        default=None,
        help="log record format (default NOMA_LOG_FORMAT)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate metrics over an SNR grid")
    sweep.add_argument("--config", type=Path, required=True, help="key=value system config")
    sweep.add_argument("--metrics", required=True, help="comma-separated metric ids")
    sweep.add_argument("--snr-db", default="0:5:40", help="start:step:stop or a,b,c (dB)")
    _add_mc_options(sweep)
    sweep.add_argument("--out", type=Path, required=True)
    sweep.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")

    figure = sub.add_parser("figure", help="reproduce a figure as tabular data")
    figure.add_argument("figure_id", help=", ".join(FIGURE_IDS))
    _add_mc_options(figure)
    figure.add_argument("--out", type=Path, required=True)
    figure.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")

    validate = sub.add_parser("validate", help="compare every formula with Monte Carlo")
    validate.add_argument("--grid", default="0:10:40", help="SNR grid in dB")
    validate.add_argument("--samples", type=int, help="Monte Carlo samples per check")
    validate.add_argument("--seed", type=int)
    validate.add_argument("--sigma", type=float, default=3.0, help="tolerance in standard errors")
    validate.add_argument("--out", type=Path, help="write the JSON report here")

    return parser


def _sweep(args: argparse.Namespace) -> Dict[str, Any]:
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    if not metrics:
        raise DomainError("no metrics given")
    spec = SweepSpec(
        snr_db=parse_snr_grid(args.snr_db),
        metrics=metrics,
        config=load_config_file(args.config),
        mc=_mc_control(args.mc_samples, args.seed),
        output_path=args.out,
        format=OutputFormat(args.format),
    )
    run_sweep(spec)
    return {
        "grid": spec.snr_db,
        "metrics": spec.metrics,
        "samples": spec.mc.samples if spec.mc else None,
        "seed": spec.mc.seed if spec.mc else None,
        "output": str(spec.output_path),
    }


def _figure(args: argparse.Namespace) -> Dict[str, Any]:
    samples = args.mc_samples if args.mc_samples is not None else config.DEFAULT_MC_SAMPLES
    mc = _mc_control(samples, args.seed)
    run_figure(args.figure_id, args.out, mc, OutputFormat(args.format))
    return {
        "figure": args.figure_id,
        "samples": samples,
        "seed": mc.seed if mc else None,
        "output": str(args.out),
    }


def _validate(args: argparse.Namespace) -> Dict[str, Any]:
    report = run_validate(
        grid=parse_snr_grid(args.grid),
        samples=args.samples,
        seed=args.seed,
        sigma=args.sigma,
        out=args.out,
    )
    for check in report.failures:
        print(
            f"FAIL {check.name} @ {check.snr_db:g} dB: analytic {check.analytic:.6g} "
            f"vs MC {check.mc_mean:.6g} (SE {check.std_error:.3g}, margin {check.margin:.3g})",
            file=sys.stderr,
        )
    print(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
    return {
        "grid": report.snr_db,
        "samples": report.samples,
        "seed": report.seed,
        "sigma": report.sigma,
        "passed": report.passed,
    }


_COMMANDS = {"sweep": _sweep, "figure": _figure, "validate": _validate}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config.setup_logging(args.log_format)
    run_logger = setup_run_logging()

    started = time.perf_counter()
    try:
        details = _COMMANDS[args.command](args)
    except DomainError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        logger.error(f"{args.command}: invalid arguments: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NomaError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED

    details["workers"] = config.NOMA_THREADS
    details["elapsed_s"] = round(time.perf_counter() - started, 3)
    log_run(run_logger, args.command, details)

    if args.command == "validate" and not details["passed"]:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
