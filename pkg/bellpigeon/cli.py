"""Command-line interface for scans, identity checks, sampling and witnesses."""

import logging
import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager

import click

from bellpigeon.bell import equal_interval_setup
from bellpigeon.config import MAX_QUBITS, OUTPUT_FORMATS, STATE_NAMES
from bellpigeon.data_io import (
    pigeonhole_payload,
    render_json,
    render_scan_csv,
    render_scan_json,
    sample_payload,
    witness_payload,
    write_output,
)
from bellpigeon.errors import BellPigeonError
from bellpigeon.models import RunConfig
from bellpigeon.optimizer import scan_curve
from bellpigeon.pigeonhole import LABELS, pigeonhole_report
from bellpigeon.samplers import (
    MODES,
    campaign,
    lhv_campaign,
    random_lhv_distribution,
    substream,
)
from bellpigeon.separability import ppt_check, werner_witness, witness_expectation
from bellpigeon.states import named_state, werner
from bellpigeon.verification import verify_identities

logger = logging.getLogger(__name__)

EXIT_IO = 1
EXIT_IDENTITY_FAILURE = 3
# Substream reserved for drawing the LHV distribution; pairs use 0..2
LHV_DISTRIBUTION_ORDINAL = 3


# ANSI color codes
class Colors:
    """ANSI color codes for terminal output."""

    RED = "\033[91m"
    YELLOW = "\033[93m"
    BLUE = "\033[94m"
    RESET = "\033[0m"


class ColoredFormatter(logging.Formatter):
    """Formatter with colors and emojis for different log levels."""

    LEVEL_COLORS = {
        "DEBUG": Colors.BLUE,
        "INFO": "",
        "WARNING": Colors.YELLOW,
        "ERROR": Colors.RED,
        "CRITICAL": Colors.RED,
    }

    LEVEL_EMOJIS = {
        "DEBUG": "🔍 ",
        "INFO": "",
        "WARNING": "⚠️  ",
        "ERROR": "❌ ",
        "CRITICAL": "💥 ",
    }

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with colors and emojis."""
        level_color = self.LEVEL_COLORS.get(record.levelname, "")
        level_emoji = self.LEVEL_EMOJIS.get(record.levelname, "")
        message = record.getMessage()
        if level_color:
            return f"{level_emoji}{level_color}{message}{Colors.RESET}"
        return f"{level_emoji}{message}"


def setup_logging(verbose: bool = False) -> None:
    """Send colored log lines to stderr; stdout is reserved for CSV/JSON.

    Args:
        verbose: If True, enable DEBUG level logging
    """
    level = logging.DEBUG if verbose else logging.INFO

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColoredFormatter())

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()
    root_logger.addHandler(handler)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map library errors to exit 2 (usage) and write failures to exit 1."""
    try:
        yield
    except BellPigeonError as e:
        raise click.UsageError(str(e)) from e
    except OSError as e:
        logger.error(f"Could not write output: {e}")
        sys.exit(EXIT_IO)


output_option = click.option(
    "--output",
    "output_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write to this file instead of standard output",
)


@click.group()
@click.option("--verbose", is_flag=True, help="Enable verbose (DEBUG level) logging")
def run(verbose: bool) -> None:
    """Pigeonhole Bell inequalities and the quantum pigeonhole effect."""
    setup_logging(verbose)


@run.command()
@click.option(
    "--state", type=click.Choice(STATE_NAMES), default="bell11", show_default=True
)
@click.option("--from", "theta_from", type=float, default=0.0, help="First theta (deg)")
@click.option("--to", "theta_to", type=float, default=180.0, help="Last theta (deg)")
@click.option("--step", type=float, default=1.0, help="Theta increment (deg)")
@click.option(
    "--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default="csv"
)
@output_option
def scan(
    state: str,
    theta_from: float,
    theta_to: float,
    step: float,
    output_format: str,
    output_path: str | None,
) -> None:
    """Reduced Bell-operator expectation along alpha = beta = theta."""
    with exit_codes():
        config = RunConfig(
            command="scan",
            state=state,
            angles=(theta_from, theta_to),
            output_format=output_format,
            output_path=output_path,
        )
        config.validate()
        points = scan_curve(
            named_state(state),
            math.radians(theta_from),
            math.radians(theta_to),
            math.radians(step),
        )
        if output_format == "csv":
            text = render_scan_csv(points)
        else:
            text = render_scan_json(points, state)
        write_output(text, output_path)


@run.command()
@output_option
def verify(output_path: str | None) -> None:
    """Run the deterministic identity suite; exit 3 if any identity fails."""
    result = verify_identities()
    with exit_codes():
        write_output("\n".join(result.messages) + "\n", output_path)
    if not result.all_passed():
        logger.error("Identity verification failed")
        sys.exit(EXIT_IDENTITY_FAILURE)
    logger.info(f"All {len(result.outcomes)} identities hold")


@run.command()
@click.option("--n", "n", type=int, default=3, help=f"Particles, 2..{MAX_QUBITS}")
@click.option("--label", type=click.Choice(LABELS), default="same", show_default=True)
@output_option
def pigeonhole(n: int, label: str, output_path: str | None) -> None:
    """Pair amplitudes for pre |+>^n and post |+i>^n."""
    with exit_codes():
        report = pigeonhole_report(n, label)
        write_output(render_json(pigeonhole_payload(n, label, report)), output_path)


@run.command()
@click.option(
    "--state", type=click.Choice(STATE_NAMES), default="bell00", show_default=True
)
@click.option("--theta", type=float, default=120.0, help="Equal interval (deg)")
@click.option("--n", "n", type=int, default=100_000, help="Draws per setting pair")
@click.option("--seed", type=int, default=0, help="Root RNG seed")
@click.option(
    "--model",
    type=click.Choice(("quantum", "lhv")),
    default="quantum",
    show_default=True,
)
@click.option(
    "--lhv-mode", type=click.Choice(MODES), default="pm1", help="LHV value set"
)
@output_option
def sample(
    state: str,
    theta: float,
    n: int,
    seed: int,
    model: str,
    lhv_mode: str,
    output_path: str | None,
) -> None:
    """Monte Carlo pigeonhole-sum campaign, quantum or local hidden variable."""
    with exit_codes():
        config = RunConfig(
            command="sample",
            state=state,
            angles=(theta,),
            n_samples=n,
            seed=seed,
            output_path=output_path,
        )
        config.validate()
        if model == "quantum":
            setup = equal_interval_setup(math.radians(theta))
            result = campaign(named_state(state), setup, n, seed)
        else:
            dist = random_lhv_distribution(substream(seed, LHV_DISTRIBUTION_ORDINAL))
            result = lhv_campaign(dist, n, seed, lhv_mode)
        payload = {"model": model, **sample_payload(result)}
        write_output(render_json(payload), output_path)


@run.command()
@click.option("--p", "p", type=float, required=True, help="Werner weight in [0, 1]")
@output_option
def witness(p: float, output_path: str | None) -> None:
    """Werner-state witness expectation and PPT verdict."""
    with exit_codes():
        rho = werner(p)
        value = witness_expectation(werner_witness(), rho)
        verdict = ppt_check(rho)
        write_output(render_json(witness_payload(p, value, verdict)), output_path)


if __name__ == "__main__":
    run()
