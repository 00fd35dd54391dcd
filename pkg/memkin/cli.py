import argparse
import logging
import sys
import warnings
from typing import List, Optional

from memkin.commands import build_scenario, run_correlate, run_iv, run_master, run_mc
from memkin.errors import MemkinNumericError
from memkin.settings import MemkinConfig, load_config

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

COMMANDS = {
    "mc": run_mc,
    "master": run_master,
    "iv": run_iv,
    "correlate": run_correlate,
}


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=str, default=None, help="Path to a configuration file")
    parser.add_argument(
        "--profile", action="store_true", help="Display profiling information for each task"
    )
    parser.add_argument(
        "-l",
        "--log-level",
        help="Set the logging level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
    )
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Destination folder for output files; created if missing",
    )

    network = parser.add_mutually_exclusive_group(required=True)
    network.add_argument("--netlist", type=str, help="Path to a netlist file")
    network.add_argument("--series", type=int, help="N identical devices in series")
    network.add_argument("--parallel", type=int, help="N identical devices in parallel")

    parser.add_argument(
        "--model", type=str, default=None, help="Device parameters as k=v,... over the defaults"
    )
    parser.add_argument("--va", type=float, default=None, help="DC drive voltage")
    parser.add_argument("--sine", type=str, default=None, help="Sine drive AMP,FREQ[,PHASE]")
    parser.add_argument("--spread-tau0", type=str, default=None, help="tau0 interval lo,hi")
    parser.add_argument("--spread-v0", type=str, default=None, help="V0 interval lo,hi")
    parser.add_argument("--seed", type=int, default=None, help="Random seed")
    return parser


def parse_cli_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="memkin", description="Stochastic switching in memristor networks."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    mc = subparsers.add_parser("mc", parents=[common], help="Monte Carlo switching times")
    mc.add_argument("--trials", type=int, default=None, help="Number of trials")
    mc.add_argument("--dt", type=float, default=None, help="Fixed time step in seconds")
    mc.add_argument("--scheme", choices=["fixed", "event"], default=None)
    mc.add_argument("--t-end", type=float, default=None, help="Simulation horizon in seconds")
    mc.add_argument("--bin", type=float, default=None, help="Histogram bin width in seconds")
    mc.add_argument("--param-mode", choices=["identical", "redrawn", "fixed-once"], default=None)
    mc.add_argument(
        "--saturate", action="store_true", help="Treat step probabilities above 1 as certain flips"
    )

    master = subparsers.add_parser("master", parents=[common], help="Master-equation solution")
    master.add_argument("--method", choices=["auto", "closed-form", "ode"], default=None)
    master.add_argument("--t-end", type=float, default=None, help="Final time in seconds")
    master.add_argument("--steps", type=int, default=None, help="Number of output intervals")
    master.add_argument(
        "--save-solution", choices=["nc", "zarr"], default=None, help="Also save the solution"
    )
    master.add_argument("--rate-ceiling", type=float, default=None, help="Clip rates to this value")

    iv = subparsers.add_parser("iv", parents=[common], help="Current-voltage sweeps")
    iv.add_argument("--cycles", type=int, default=None)
    iv.add_argument("--points-per-cycle", type=int, default=None)
    iv.add_argument("--amplitude", type=float, default=None, help="Sine amplitude in volts")
    iv.add_argument("--frequency", type=float, default=None, help="Sine frequency in hertz")

    correlate = subparsers.add_parser(
        "correlate", parents=[common], help="Resistance correlations"
    )
    correlate.add_argument("--trials", type=int, default=None)
    correlate.add_argument("--t-end", type=float, default=None, help="Last time of the grid")
    correlate.add_argument("--grid", type=int, default=None, help="Number of grid times")
    correlate.add_argument(
        "--pair", action="append", default=None, help="Device pair i,j; repeatable"
    )
    correlate.add_argument("--scheme", choices=["fixed", "event"], default=None)
    correlate.add_argument("--dt", type=float, default=None, help="Fixed time step in seconds")

    return parser.parse_args(argv)


def initialize(args, config: MemkinConfig) -> MemkinConfig:
    if getattr(args, "rate_ceiling", None) is not None:
        config["solver"] = {**config["solver"], "rate_ceiling": args.rate_ceiling}
    if args.log_level is not None:
        config["log_level"] = args.log_level
    return config


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_cli_arguments(argv)

    try:
        config = initialize(args, load_config(args.config))
    except ValueError as e:
        logging.error(f"Invalid configuration: {e}")
        return EXIT_INPUT
    logging.basicConfig(
        level=config["log_level"], format="%(asctime)s - %(levelname)s - %(message)s", force=True
    )
    warnings.simplefilter("default", UserWarning)

    try:
        scenario = build_scenario(args, config, args.command)
        COMMANDS[args.command](scenario, config)
    except MemkinNumericError as e:
        logging.error(f"{args.command}: {e}")
        return EXIT_NUMERIC
    except (ValueError, FileNotFoundError) as e:
        logging.error(f"{args.command}: {e}")
        return EXIT_INPUT
    except Exception as e:
        logging.exception(f"Unexpected error in {args.command}: {e}")
        return EXIT_UNEXPECTED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
