"""Command-line entry point: python main.py --command spectrum --n-max 3 --potential quadratic."""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import click
from click.core import ParameterSource

from commands.regime import cmd_regime
from commands.scan import cmd_scan
from commands.shift import cmd_shift
from commands.spectrum import cmd_spectrum
from commands.verify import cmd_verify
from models.exceptions import HydroShiftError, QuadratureConvergenceError
from models.run_config import build_run_config
from utils.tables import render, write_output

logger = logging.getLogger("hydroshift")

EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, EXIT_QUADRATURE = 0, 1, 2, 3

TITLES = {
    "spectrum": "Fine-structure spectrum",
    "shift": "First-order shifts",
    "scan": "Shift scan",
    "regime": "Validity regime",
    "verify": "Closed form against quadrature",
}


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--command", type=click.Choice(["spectrum", "shift", "verify", "scan", "regime"]))
@click.option("--config", "config_path", type=click.Path(path_type=Path), help="Flat key=value config file.")
@click.option("--n-min", type=int, help="Smallest n.")
@click.option("--n-max", type=int, help="Largest n.")
@click.option("--Z", "Z", type=int, help="Nuclear charge.")
@click.option(
    "--potential", type=click.Choice(["none", "linear", "quadratic", "dq", "vdw", "lj", "constant"])
)
@click.option("--lambda", "strength", type=float, help="Strength: Ry/a0 (linear) or Ry/a0^2.")
@click.option("--z0", type=float, help="Displacement of the quadratic well, a0.")
@click.option("--gamma", type=float, help="van der Waals coupling, Ry/a0^2.")
@click.option("--beta", type=float, help="van der Waals anisotropy.")
@click.option("--d", "d", type=float, help="Wall distance, a0.")
@click.option("--constant", type=float, help="Constant shift, Ry.")
@click.option("--format", "format", type=click.Choice(["csv", "json", "markdown", "html"]))
@click.option("--tol", type=float, help="Relative verification tolerance.")
@click.option("--out", type=click.Path(path_type=Path), help="Output file instead of stdout.")
@click.option("--alpha2", type=float, help="Override of the fine-structure constant squared.")
@click.option("--radial-nodes", type=int)
@click.option("--polar-nodes", type=int)
@click.option("--azimuthal-nodes", type=int)
@click.option("--pressure", type=float, help="Gas pressure, Pa.")
@click.option("--temperature", type=float, help="Gas temperature, K.")
@click.option("--scan-variable", type=click.Choice(["lambda", "z0", "gamma", "beta", "d"]))
@click.option("--scan-start", type=float)
@click.option("--scan-stop", type=float)
@click.option("--scan-step", type=float)
@click.option("--inject-fault", is_flag=True, help="Corrupt one closed-form value checked by verify.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], **options) -> int:
    """Fine-structure levels of hydrogen-like atoms and their first-order shifts."""
    given = {
        name: value
        for name, value in options.items()
        if ctx.get_parameter_source(name) == ParameterSource.COMMANDLINE
    }
    config = build_run_config(given, config_path)
    if config.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    logger.debug("run configuration: %s", config.model_dump(exclude_none=True))

    exit_code = EXIT_OK
    if config.command == "spectrum":
        table = cmd_spectrum(config)
    elif config.command == "shift":
        table = cmd_shift(config)
    elif config.command == "scan":
        table = cmd_scan(config)
    elif config.command == "regime":
        table = cmd_regime(config)
    else:
        report = cmd_verify(config)
        table = report.table
        if not report.passed:
            logger.error("verification failed: %d of %d checks", report.failures, len(table))
            exit_code = EXIT_VERIFICATION

    write_output(render(table, config.format, TITLES[config.command]), config.out)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return cli.main(args=argv, prog_name="hydroshift", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except QuadratureConvergenceError as e:
        logger.error("%s", e)
        return EXIT_QUADRATURE
    except (HydroShiftError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
