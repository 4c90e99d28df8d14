"""FLEXT-Polar Command Line Interface.

Copyright (c) 2025 FLEXT Team. All rights reserved.
SPDX-License-Identifier: MIT

One entry point for code construction, frame encoding and decoding, Monte-Carlo
sweeps and architecture analysis. JSON results go to stdout, human summaries
and logs to stderr.
"""

from __future__ import annotations

import json
import sys
from datetime import UTC, datetime
from pathlib import Path

import click
from returns.pipeline import is_successful
from returns.result import Result
from rich.console import Console
from rich.table import Table

from flext_polar.api import FlextPolarAPI
from flext_polar.constants import (
    ASIC_PRESETS,
    DEFAULT_INFO_LENGTH,
    EXIT_FAILURE,
    FPGA_PRESETS,
    LIBRARY_NAME,
    LIBRARY_VERSION,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import DecoderVariant, FlextPolarModels
from flext_polar.utilities import FlextPolarUtilities

logger = FlextPolarUtilities.get_logger(__name__)

_DECODER_CHOICES: dict[str, DecoderVariant] = {
    "float": DecoderVariant.FLOAT_SC,
    "fast": DecoderVariant.FLOAT_FAST,
    "quant": DecoderVariant.QUANTIZED,
}


class FlextPolarCliService:
    """State shared by subcommands: settings, API, console and run manifest."""

    def __init__(
        self,
        config: FlextPolarModels.Config | None = None,
        *,
        manifest_path: Path | None = None,
        quiet: bool = False,
    ) -> None:
        self.config = config or FlextPolarModels.Config()
        self.api = FlextPolarAPI(self.config)
        self.console = Console(stderr=True, quiet=quiet)
        self.manifest_path = manifest_path
        self.started_at = datetime.now(UTC)

    def with_overrides(self, **overrides: object) -> FlextPolarCliService:
        """Service whose settings take explicit subcommand flags on top."""
        updates = {key: value for key, value in overrides.items() if value is not None}
        if not updates:
            return self
        config = FlextPolarModels.Config.from_file(None, **{**self.config.model_dump(), **updates})
        service = FlextPolarCliService(config, manifest_path=self.manifest_path)
        service.console = self.console
        service.started_at = self.started_at
        return service

    def output_path(self, path: Path | None, default_name: str) -> Path:
        return path if path is not None else self.config.out_dir / default_name

    def record_run(
        self,
        command: str,
        parameters: dict[str, object],
        outputs: list[Path],
    ) -> Path:
        """Write the run manifest listing every output with its digest."""
        manifest = FlextPolarModels.RunManifest(
            tool_version=LIBRARY_VERSION,
            command=command,
            config={
                "settings": self.config.model_dump(mode="json"),
                "parameters": parameters,
            },
            seed=self.config.seed,
            started_at=self.started_at,
            finished_at=datetime.now(UTC),
        )
        for output in outputs:
            manifest.add_output(output)
        target = self.output_path(self.manifest_path, "manifest.json")
        written = handle_result_or_exit(self.api.write_manifest(manifest, target))
        logger.info("run manifest written", path=str(written), outputs=len(outputs))
        return written

    def load_code(self, path: Path) -> FlextPolarModels.PolarCode:
        return handle_result_or_exit(self.api.load_code(path))

    def load_schedule(self, path: Path | None) -> FlextPolarModels.QuantSchedule | None:
        if path is None:
            return None
        return handle_result_or_exit(self.api.load_schedule(path))


def handle_result_or_exit[T](
    result: Result[T, FlextPolarExceptions.Error],
    success_msg: str | None = None,
) -> T:
    """Unwrap a result, or report the error and exit with its mapped code."""
    if is_successful(result):
        if success_msg:
            click.echo(success_msg, err=True)
        return result.unwrap()

    error = result.failure()
    click.echo(f"Error: {error}", err=True)
    logger.debug("command failed", error_code=error.error_code, exit_code=error.exit_code)
    sys.exit(error.exit_code)


def _service(ctx: click.Context) -> FlextPolarCliService:
    return ctx.obj["cli_service"]


def _echo_json(data: object) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@click.group(
    context_settings={"help_option_names": ["-h", "--help"]},
    invoke_without_command=True,
)
@click.version_option(version=LIBRARY_VERSION, prog_name=LIBRARY_NAME)
@click.option("--debug/--no-debug", default=False, help="Enable debug logging")
@click.option("--quiet/--no-quiet", "-q", default=False, help="Only log errors")
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    help="JSON settings file",
)
@click.option("--seed", type=click.IntRange(0, (1 << 64) - 1), help="Master seed")
@click.option("--out-dir", type=click.Path(path_type=Path), help="Directory for outputs")
@click.option(
    "--manifest",
    "manifest_path",
    type=click.Path(path_type=Path),
    help="Run manifest path (default <out-dir>/manifest.json)",
)
@click.option("--workers", type=click.IntRange(min=1), help="Monte-Carlo worker processes")
@click.pass_context
def cli(
    ctx: click.Context,
    *,
    debug: bool,
    quiet: bool,
    config_path: Path | None,
    seed: int | None,
    out_dir: Path | None,
    manifest_path: Path | None,
    workers: int | None,
) -> None:
    """FLEXT Polar - SC decoding, simulation and pipeline modeling."""
    log_level = "DEBUG" if debug else ("ERROR" if quiet else None)
    config_result = FlextPolarAPI.load_config(
        config_path, seed=seed, out_dir=out_dir, workers=workers, log_level=log_level,
    )
    config = handle_result_or_exit(config_result)
    FlextPolarUtilities.configure_logging(config.log_level, json_output=config.log_json)

    ctx.ensure_object(dict)
    ctx.obj["cli_service"] = FlextPolarCliService(
        config, manifest_path=manifest_path, quiet=quiet,
    )
    logger.debug("cli initialized", seed=config.seed, out_dir=str(config.out_dir))

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command()
@click.option("--n", "n", type=int, required=True, help="log2 of the block length")
@click.option("--k", "k", type=int, required=True, help="Information length")
@click.option("--design-snr", type=float, help="Design Eb/No in dB")
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Code file")
@click.pass_context
def construct(
    ctx: click.Context,
    n: int,
    k: int,
    design_snr: float | None,
    output: Path | None,
) -> None:
    """Construct a polar code and write its definition file."""
    service = _service(ctx)
    code = handle_result_or_exit(service.api.construct(n, k, design_snr))
    target = service.output_path(output, f"code_n{n}_k{k}.json")
    written = handle_result_or_exit(service.api.save_code(code, target))
    service.console.print(
        f"Constructed ({code.block_length},{code.k}) code: "
        f"{code.block_length - code.k} frozen, design Eb/No {code.design_snr_db} dB -> {written}",
    )
    service.record_run("construct", {"n": n, "k": k, "design_snr_db": code.design_snr_db}, [written])


@cli.command()
@click.option("--code", "code_path", type=click.Path(path_type=Path), required=True)
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", "-o", type=click.Path(path_type=Path))
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["bits", "llr", "q8"]),
    default="bits",
    show_default=True,
)
@click.option("--ebno", type=float, help="Add AWGN at this Eb/No (llr and q8 output)")
@click.option("--systematic/--non-systematic", default=False)
@click.option("--schedule", "schedule_path", type=click.Path(path_type=Path))
@click.pass_context
def encode(
    ctx: click.Context,
    code_path: Path,
    input_path: Path,
    output: Path | None,
    output_format: str,
    ebno: float | None,
    *,
    systematic: bool,
    schedule_path: Path | None,
) -> None:
    """Encode packed K-bit data frames."""
    service = _service(ctx)
    code = service.load_code(code_path)
    schedule = service.load_schedule(schedule_path)
    target = service.output_path(output, f"encoded.{output_format}")
    written = handle_result_or_exit(
        service.api.encode_file(
            code,
            input_path,
            target,
            output_format=output_format,
            ebno_db=ebno,
            systematic=systematic,
            schedule=schedule,
        ),
    )
    service.console.print(f"Encoded {input_path} -> {written} ({output_format})")
    service.record_run(
        "encode",
        {
            "code": str(code_path),
            "input": str(input_path),
            "format": output_format,
            "ebno_db": ebno,
            "systematic": systematic,
        },
        [written],
    )


@cli.command()
@click.option("--code", "code_path", type=click.Path(path_type=Path), required=True)
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", "-o", type=click.Path(path_type=Path))
@click.option(
    "--decoder",
    type=click.Choice(sorted(_DECODER_CHOICES)),
    default="fast",
    show_default=True,
)
@click.option("--schedule", "schedule_path", type=click.Path(path_type=Path))
@click.option(
    "--input-format",
    type=click.Choice(["llr", "q8"]),
    default="llr",
    show_default=True,
)
@click.option("--systematic/--non-systematic", default=False)
@click.pass_context
def decode(
    ctx: click.Context,
    code_path: Path,
    input_path: Path,
    output: Path | None,
    decoder: str,
    schedule_path: Path | None,
    input_format: str,
    *,
    systematic: bool,
) -> None:
    """Decode LLR or q8 frames into packed K-bit data frames."""
    service = _service(ctx)
    code = service.load_code(code_path)
    schedule = service.load_schedule(schedule_path)
    target = service.output_path(output, "decoded.bits")
    written = handle_result_or_exit(
        service.api.decode_file(
            code,
            input_path,
            target,
            decoder=_DECODER_CHOICES[decoder],
            input_format=input_format,
            schedule=schedule,
            systematic=systematic,
        ),
    )
    service.console.print(f"Decoded {input_path} -> {written} ({decoder})")
    service.record_run(
        "decode",
        {
            "code": str(code_path),
            "input": str(input_path),
            "decoder": decoder,
            "input_format": input_format,
            "systematic": systematic,
        },
        [written],
    )


@cli.command()
@click.option("--code", "code_path", type=click.Path(path_type=Path), required=True)
@click.option("--ebno", required=True, help='Eb/No list, "start:step:stop" or "a,b,c" (dB)')
@click.option(
    "--decoder",
    type=click.Choice(sorted(_DECODER_CHOICES)),
    default="fast",
    show_default=True,
)
@click.option("--schedule", "schedule_path", type=click.Path(path_type=Path))
@click.option("--min-fe", type=click.IntRange(min=1), help="Frame errors per point")
@click.option("--max-frames", type=click.IntRange(min=1), help="Frame cap per point")
@click.option("--batch-frames", type=click.IntRange(min=1), help="Frames per work chunk")
@click.option("--out", "output", type=click.Path(path_type=Path), help="Results CSV")
@click.pass_context
def simulate(
    ctx: click.Context,
    code_path: Path,
    ebno: str,
    decoder: str,
    schedule_path: Path | None,
    min_fe: int | None,
    max_frames: int | None,
    batch_frames: int | None,
    output: Path | None,
) -> None:
    """Monte-Carlo FER/BER sweep over an Eb/No list."""
    service = _service(ctx).with_overrides(
        min_frame_errors=min_fe, max_frames=max_frames, batch_frames=batch_frames,
    )
    code = service.load_code(code_path)
    schedule = service.load_schedule(schedule_path)
    ebno_list = handle_result_or_exit(FlextPolarAPI.parse_ebno(ebno))
    sim_cfg = handle_result_or_exit(
        service.api.sim_config(
            code, ebno_list, decoder=_DECODER_CHOICES[decoder], schedule=schedule,
        ),
    )
    target = service.output_path(output, "results.csv")
    stats = handle_result_or_exit(service.api.simulate(sim_cfg, target))

    table = Table(title=f"({code.block_length},{code.k}) {sim_cfg.decoder.value}")
    for column in ("Eb/No [dB]", "frames", "frame errors", "FER", "BER"):
        table.add_column(column, justify="right")
    for point in stats:
        table.add_row(
            f"{point.ebno_db:.2f}",
            str(point.frames),
            str(point.frame_errors),
            f"{point.fer:.3e}",
            f"{point.ber:.3e}",
        )
    service.console.print(table)
    service.record_run("simulate", sim_cfg.resolved(), [target])


@cli.command()
@click.option("--cores", type=click.IntRange(min=1), required=True, help="Core count P")
@click.option("--core-mhz", type=float, required=True, help="Core clock f_c in MHz")
@click.option("--depth", type=click.IntRange(min=1), help="Pipeline depth D")
@click.option("--theta", type=click.FloatRange(0.0, 360.0, max_open=True), help="Core phase")
@click.option("--t-io-ns", type=float, help="IO period override (within 1% of 1/(P f_c))")
@click.option("--k", "k", type=click.IntRange(min=1), default=DEFAULT_INFO_LENGTH, show_default=True)
@click.option("--q", "channel_bits", type=click.IntRange(1, 8), default=5, show_default=True)
@click.option("--code", "code_path", type=click.Path(path_type=Path))
@click.option("--delay-model", "delay_model_path", type=click.Path(path_type=Path))
@click.option("--calibrate-target", type=click.IntRange(min=1))
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Also write JSON here")
@click.pass_context
def arch(
    ctx: click.Context,
    cores: int,
    core_mhz: float,
    depth: int | None,
    theta: float | None,
    t_io_ns: float | None,
    k: int,
    channel_bits: int,
    code_path: Path | None,
    delay_model_path: Path | None,
    calibrate_target: int | None,
    output: Path | None,
) -> None:
    """Latency, throughput and pipeline depth of the multicore decoder."""
    service = _service(ctx)
    code = service.load_code(code_path) if code_path is not None else None
    delay_model = (
        handle_result_or_exit(service.api.load_delay_model(delay_model_path))
        if delay_model_path is not None
        else None
    )
    report = handle_result_or_exit(
        service.api.analyze_arch(
            cores=cores,
            core_mhz=core_mhz,
            depth=depth,
            theta_deg=theta,
            t_io_ns=t_io_ns,
            channel_bits=channel_bits,
            code=code,
            info_length=k,
            delay_model=delay_model,
            calibrate_target=calibrate_target,
        ),
    )
    _echo_json(report)
    if output is not None:
        written = handle_result_or_exit(service.api.write_report(report, output))
        service.record_run(
            "arch",
            {"cores": cores, "core_mhz": core_mhz, "depth": depth, "theta_deg": theta},
            [written],
        )


@cli.command("sweep-arch")
@click.option("--cores", "cores_spec", default="1,2,4,8", show_default=True)
@click.option("--core-mhz", "clock_spec", help="Comma separated core clocks in MHz")
@click.option("--depth", "depth_spec", help="Comma separated pipeline depths")
@click.option("--preset", type=click.Choice(["asic", "fpga"]), help="Published configurations")
@click.option("--k", "k", type=click.IntRange(min=1), default=DEFAULT_INFO_LENGTH, show_default=True)
@click.option("--theta", type=click.FloatRange(0.0, 360.0, max_open=True))
@click.option("--output", "-o", type=click.Path(path_type=Path), help=".json or .csv rows")
@click.pass_context
def sweep_arch(
    ctx: click.Context,
    cores_spec: str,
    clock_spec: str | None,
    depth_spec: str | None,
    preset: str | None,
    k: int,
    theta: float | None,
    output: Path | None,
) -> None:
    """Evaluate latency and throughput over a grid of (P, f_c, D)."""
    service = _service(ctx)
    if preset is not None:
        points = list(ASIC_PRESETS if preset == "asic" else FPGA_PRESETS)
    else:
        if clock_spec is None or depth_spec is None:
            raise click.UsageError("--core-mhz and --depth are required without --preset")
        points = handle_result_or_exit(
            FlextPolarAPI.grid_points(cores_spec, clock_spec, depth_spec),
        )
    rows = handle_result_or_exit(service.api.sweep_arch(points, info_length=k, theta_deg=theta))
    if output is None:
        _echo_json(rows)
        return
    written = handle_result_or_exit(service.api.write_report(rows, output))
    service.console.print(f"Wrote {len(rows)} configurations -> {written}")
    service.record_run("sweep-arch", {"points": [list(point) for point in points]}, [written])


def main() -> None:
    """Main entry point."""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\nOperation cancelled by user", err=True)
        logger.info("cli cancelled by user")
        sys.exit(EXIT_FAILURE)
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        logger.exception("cli failed with unexpected error")
        sys.exit(EXIT_FAILURE)


__all__ = ["FlextPolarCliService", "cli", "handle_result_or_exit", "main"]


if __name__ == "__main__":
    main()
