import logging
from typing import Any, Dict, Optional

import asyncclick as click
from asyncclick import Context, UsageError
from pydantic import ValidationError

from gammoidkit import run
from gammoidkit.enums import CheckName, Color, CommandName, FieldMode, OutputFormat
from gammoidkit.models import RunConfig
from gammoidkit.utils import get_run_defaults, parse_subset, write_run_defaults
from gammoidkit.version import __version__

CONFIG_DEFAULT_VALUES: Dict[str, Any] = {
    "seed": 1,
    "field": FieldMode.fp.value,
    "format": OutputFormat.text.value,
    "max_retries": 3,
}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, "-V", "--version")
@click.option(
    "-c",
    "--config",
    default="pyproject.toml",
    show_default=True,
    help="Config file with a [tool.gammoidkit] table.",
)
@click.option("-i", "--input", "input_path", help="Presentation, digraph or matroid file.")
@click.option(
    "--field", type=click.Choice([mode.value for mode in FieldMode]), help="Scalar field."
)
@click.option("--seed", type=int, help="Seed of the weight generator (unsigned 64-bit).")
@click.option(
    "--format",
    "output_format",
    type=click.Choice([fmt.value for fmt in OutputFormat]),
    help="Output format.",
)
@click.option("--max-retries", type=int, help="Reseeds allowed when I - W is singular.")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log to stderr.")
@click.pass_context
async def cli(
    ctx: Context,
    config: str,
    input_path: Optional[str],
    field: Optional[str],
    seed: Optional[int],
    output_format: Optional[str],
    max_retries: Optional[int],
    verbose: bool,
) -> None:
    ctx.ensure_object(dict)
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj["config_file"] = config
    settings = {**CONFIG_DEFAULT_VALUES, **get_run_defaults(config)}
    flags = {"seed": seed, "field": field, "format": output_format, "max_retries": max_retries}
    settings.update({key: value for key, value in flags.items() if value is not None})
    settings["input"] = input_path
    ctx.obj["settings"] = settings


async def _execute(ctx: Context, command: CommandName, **extra: Any) -> None:
    try:
        config = RunConfig(command=command, **ctx.obj["settings"], **extra)
    except ValidationError as e:
        raise UsageError(e.errors()[0]["msg"], ctx=ctx) from e
    if config.input is None:
        raise UsageError("Missing option --input.", ctx=ctx)
    result = run(config)
    if result.output:
        click.echo(result.output, nl=False)
    if result.error:
        click.secho(result.error, fg=Color.red, err=True)
    if result.exit_code == 1:
        click.secho("Verification failed", fg=Color.red, err=True)
    ctx.exit(result.exit_code)


@cli.command(help="Print the bases of the input's matroid as canonical JSON.")
@click.pass_context
async def bases(ctx: Context) -> None:
    await _execute(ctx, CommandName.bases)


@cli.command(help="Print the rank of a subset of the ground set.")
@click.option("--subset", required=True, help="Comma separated elements, like 1,2,5.")
@click.pass_context
async def rank(ctx: Context, subset: str) -> None:
    await _execute(ctx, CommandName.rank, subset=parse_subset(subset))


@cli.command(help="Print the representation X (presentation) or Y (digraph) with its weights.")
@click.option(
    "--normalize",
    is_flag=True,
    default=False,
    help="Set the entries of a complete matching of X to 1.",
)
@click.pass_context
async def represent(ctx: Context, normalize: bool) -> None:
    await _execute(ctx, CommandName.represent, normalize=normalize)


@cli.command(help="Print the dual of the input's matroid.")
@click.pass_context
async def dualize(ctx: Context) -> None:
    await _execute(ctx, CommandName.dualize)


@cli.command(help="Convert a digraph with sinks to a presentation and back.")
@click.pass_context
async def convert(ctx: Context) -> None:
    await _execute(ctx, CommandName.convert)


@cli.command(help="Run a verification suite; exits 1 if any check fails.")
@click.option(
    "--check",
    type=click.Choice([name.value for name in CheckName]),
    default=CheckName.all.value,
    show_default=True,
    help="Which check to run.",
)
@click.pass_context
async def verify(ctx: Context, check: str) -> None:
    await _execute(ctx, CommandName.verify, check=check)


@cli.command(help="Write the current defaults to the [tool.gammoidkit] table of the config file.")
@click.pass_context
async def init(ctx: Context) -> None:
    config_file = ctx.obj["config_file"]
    settings = {key: ctx.obj["settings"][key] for key in CONFIG_DEFAULT_VALUES}
    try:
        RunConfig(command=CommandName.bases, **settings)
    except ValidationError as e:
        raise UsageError(e.errors()[0]["msg"], ctx=ctx) from e
    write_run_defaults(config_file, settings)
    click.secho(f"Success writing gammoidkit config to {config_file}", fg=Color.green)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
