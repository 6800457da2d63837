from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Sequence

from .. import __version__
from ..errors import EraserError, NoPhaseMatchingError
from .commands import COMMANDS
from .config import load_run_config

logger = logging.getLogger("ghz_eraser")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2


class _Parser(argparse.ArgumentParser):
    # Usage errors share exit code 1 with config errors.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="TOML run configuration")
    common.add_argument("--seed", type=int, default=None, help="Monte Carlo seed override")
    common.add_argument("--out", default=None, help="Write results here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(
        prog="ghz-eraser",
        description="Disentanglement-eraser simulator and calcite phase-matching calculator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    phase = sub.add_parser(
        "phase-match", parents=[common], help="Solve the three-photon phase-matching angle"
    )
    phase.add_argument("--crystal", default=None, help="Crystal name (default: from config)")
    phase.add_argument("--pump-nm", type=float, default=None, help="Pump wavelength in nm")
    phase.add_argument(
        "--length-mm", type=float, default=None, help="Crystal length for walk-off displacement"
    )

    sub.add_parser("sweep", parents=[common], help="Coincidence probability over an angle grid")
    sub.add_parser("chsh", parents=[common], help="CHSH value, analytic and Monte Carlo")
    sub.add_parser("tomography", parents=[common], help="Reconstruct the heralded A,B state")
    sub.add_parser("montecarlo", parents=[common], help="Sample one setting as a counts table")
    sub.add_parser("concurrence", parents=[common], help="Concurrence of heralded pairs vs gamma")

    geometry = sub.add_parser(
        "geometry", parents=[common], help="Emission directions and pump-diameter check"
    )
    geometry.add_argument("--phi-deg", type=float, default=None, help="Herald angle")
    geometry.add_argument("--ring-deg", type=float, default=None, help="o-pair ring radius")
    geometry.add_argument("--azimuth-deg", type=float, default=None, help="Ring azimuth")
    geometry.add_argument("--pump-diameter-mm", type=float, default=None)
    geometry.add_argument("--crystal-length-mm", type=float, default=None)
    geometry.add_argument("--waveplate-length-mm", type=float, default=None)
    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="[ghz-eraser] %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = load_run_config(args.config)
        text = COMMANDS[args.command](config, args)
        _write(text, args.out or config.output_path)
    except NoPhaseMatchingError as exc:
        print(f"ghz-eraser: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except EraserError as exc:
        print(f"ghz-eraser: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"ghz-eraser: {exc}", file=sys.stderr)
        return EXIT_ERROR
    logger.debug("%s finished", args.command)
    return EXIT_OK


__all__ = ["EXIT_ERROR", "EXIT_NO_SOLUTION", "EXIT_OK", "build_parser", "main"]
