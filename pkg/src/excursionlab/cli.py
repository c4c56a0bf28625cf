"""Command-line entry point for excursionlab."""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

import click

from excursionlab import __version__
from excursionlab.commands import Outcome, run_command
from excursionlab.config import read_payload, to_dict, with_overrides
from excursionlab.errors import ConfigError, ExcursionLabError
from excursionlab.manifest import digest_mismatches, manifest_path, read_manifest, write_manifest
from excursionlab.verify import SUITES

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s|%(name)s|%(levelname)s| %(message)s"
EXIT_FAILED = 1
EXIT_RUNTIME = 3


@dataclass(slots=True)
class Settings:
    seed: int | None
    threads: int | None
    out_dir: Path | None
    config: Path | None

    @property
    def output(self) -> Path:
        return self.out_dir if self.out_dir is not None else Path(".")


@contextmanager
def _reported(ctx: click.Context) -> Iterator[None]:
    """Config problems are usage errors (exit 2); every other failure exits 3."""
    try:
        yield
    except ConfigError as exc:
        raise click.UsageError(str(exc), ctx=ctx) from exc
    except (click.ClickException, click.exceptions.Exit):
        raise
    except ExcursionLabError as exc:
        click.echo(f"Error: {exc}", err=True)
        ctx.exit(EXIT_RUNTIME)
    except Exception as exc:
        logger.debug("unexpected failure", exc_info=True)
        click.echo(f"Error: {type(exc).__name__}: {exc}", err=True)
        ctx.exit(EXIT_RUNTIME)


def _config_option(function):
    return click.option(
        "--config",
        "config_path",
        type=click.Path(path_type=Path, exists=True, dir_okay=False),
        default=None,
        help="JSON config document (overrides the global --config).",
    )(function)


def _run(ctx: click.Context, kind: str, config_path: Path | None, **options: Any) -> None:
    settings: Settings = ctx.obj
    with _reported(ctx):
        path = config_path or settings.config
        payload = read_payload(path) if path is not None else {}
        document = with_overrides(
            payload, kind, seed=settings.seed, threads=settings.threads, **options
        )
        logger.info("resolved %s config: %s", kind, json.dumps(to_dict(document), sort_keys=True))
        outcome = run_command(kind, document, settings.output, settings.threads)
    _finish(ctx, kind, outcome)


def _finish(ctx: click.Context, kind: str, outcome: Outcome) -> None:
    settings: Settings = ctx.obj
    with _reported(ctx):
        target = write_manifest(manifest_path(settings.output, kind), outcome.manifest)
    for name in outcome.manifest.outputs:
        click.echo(f"wrote {settings.output / name}")
    click.echo(f"manifest {target}")
    if not outcome.passed:
        click.echo(f"{kind}: checks failed", err=True)
        ctx.exit(EXIT_FAILED)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Master seed.")
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads (default: machine parallelism).",
)
@click.option(
    "--out-dir",
    type=click.Path(path_type=Path, file_okay=False),
    default=None,
    help="Directory for output files and the run manifest.",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path, exists=True, dir_okay=False),
    default=None,
    help="JSON config document for the subcommand.",
)
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or debug detail (-vv).")
@click.version_option(__version__, prog_name="excursionlab")
@click.pass_context
def main(
    ctx: click.Context,
    seed: int | None,
    threads: int | None,
    out_dir: Path | None,
    config_path: Path | None,
    verbose: int,
) -> None:
    """Excursion statistics and LIL experiments for random walks on diagonal products."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)
    ctx.obj = Settings(seed=seed, threads=threads, out_dir=out_dir, config=config_path)


@main.command()
@_config_option
@click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Number of steps.")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Independent walks.")
@click.option("--depth", "-k", "depths", type=click.IntRange(min=1), multiple=True, help="Tally k.")
@click.option("--completion", type=click.Choice(["return", "arrival"]), default=None)
@click.option("--walks", default=None, help="Per-trial summary CSV.")
@click.option("--tallies", default=None, help="Merged excursion tallies CSV.")
@click.option("--aggregates", default=None, help="Per-trial aggregate records JSON.")
@click.pass_context
def simulate(ctx: click.Context, config_path: Path | None, depths: tuple[int, ...], **options):
    """Simulate walks and tally excursions."""
    _run(ctx, "simulate", config_path, depths=depths or None, **options)


@main.command("build-layers")
@_config_option
@click.option("--f", "f", default=None, help="Speed function: powerlaw:ALPHA or table:PATH.")
@click.option("--m0", type=float, default=None, help="Growth factor, > 1.")
@click.option("--xmax", type=float, default=None, help="Largest x the layers must cover.")
@click.option("--epsilon", type=float, default=None, help="Slack of the concavity check.")
@click.option("--out", default=None, help="Output layers JSON.")
@click.pass_context
def build_layers(ctx: click.Context, config_path: Path | None, **options):
    """Build layer sequences approximating a speed function."""
    _run(ctx, "build-layers", config_path, **options)


@main.command()
@_config_option
@click.option("--f", "f", default=None, help="Speed function: powerlaw:ALPHA or table:PATH.")
@click.option("--n-max", "n_max", type=int, default=None, help="Final time.")
@click.option("--trials", type=int, default=None, help="Independent trials.")
@click.option("--out", "records", default=None, help="Checkpoint records CSV.")
@click.option("--summary", default=None, help="Band summary JSON.")
@click.option("--bounds", default=None, help="Per-layer distance bounds CSV.")
@click.pass_context
def lil(ctx: click.Context, config_path: Path | None, **options):
    """Run an LIL band experiment over an exponential checkpoint grid."""
    _run(ctx, "lil", config_path, **options)


@main.command()
@_config_option
@click.option("--suite", type=click.Choice(SUITES), default=None, help="Which checks to run.")
@click.option("--out", default=None, help="Report JSON.")
@click.pass_context
def verify(ctx: click.Context, config_path: Path | None, **options):
    """Run the exact and Monte Carlo verification checks."""
    _run(ctx, "verify", config_path, **options)


@main.command()
@click.argument("manifest", type=click.Path(path_type=Path, exists=True, dir_okay=False))
@click.pass_context
def replay(ctx: click.Context, manifest: Path):
    """Rerun the command recorded in MANIFEST and compare output digests."""
    settings: Settings = ctx.obj
    out_dir = settings.out_dir if settings.out_dir is not None else manifest.parent
    with _reported(ctx):
        recorded = read_manifest(manifest)
        document = with_overrides(recorded.config, recorded.command)
        outcome = run_command(recorded.command, document, out_dir, settings.threads)
    mismatches = digest_mismatches(recorded, outcome.manifest)
    for name, (expected, actual) in mismatches.items():
        click.echo(f"{name}: expected {expected or '-'}, got {actual or '-'}")
    if mismatches:
        ctx.exit(EXIT_FAILED)
    click.echo(f"replayed {recorded.command}: {len(recorded.outputs)} outputs match")


if __name__ == "__main__":
    main()
