"""FLEXT-Polar API.

Copyright (c) 2025 FLEXT Team. All rights reserved.
SPDX-License-Identifier: MIT

Railway facade over the algorithm modules: every operation returns a
``returns`` ``Result`` holding either the value or the domain error that the
algorithm layer raised.
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

import numpy as np
from returns.pipeline import is_successful
from returns.result import Result, safe

from flext_polar.arch_model import (
    arch_grid,
    arch_report,
    budget_for_clock,
    build_unrolled_graph,
    calibrate,
    rrb_schedule,
    sweep_arch,
)
from flext_polar.constants import (
    DEFAULT_BLOCK_LOG2,
    DEFAULT_CALIBRATE_TARGET,
    DEFAULT_INFO_LENGTH,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.link_sim import awgn_llr, noise_variance, run_sweep, write_csv
from flext_polar.models import DecoderVariant, FlextPolarModels
from flext_polar.polar_core import construct_code, encode, encode_systematic
from flext_polar.quant import (
    QLlrBatch,
    channel_format,
    decode_sc_quantized,
    default_schedule,
    dequantize_array,
    from_q8_bytes,
    quantize_array,
    to_q8_bytes,
)
from flext_polar.sc_decoder import decode_fast, decode_sc, detect_shortcuts
from flext_polar.typings import BitArray, LlrArray
from flext_polar.utilities import FlextPolarUtilities

logger = FlextPolarUtilities.get_logger(__name__)

_domain_safe = safe(exceptions=(FlextPolarExceptions.Error,))


class FlextPolarAPI:
    """Polar toolkit API."""

    def __init__(self, config: FlextPolarModels.Config | None = None) -> None:
        self.config = config or FlextPolarModels.Config()

    # =========================================================================
    # SETTINGS AND ARGUMENTS
    # =========================================================================

    @staticmethod
    @_domain_safe
    def load_config(path: Path | None, **overrides: object) -> FlextPolarModels.Config:
        """Settings with precedence overrides > file > environment > defaults."""
        return FlextPolarModels.Config.from_file(path, **overrides)

    @staticmethod
    @_domain_safe
    def parse_ebno(spec: str) -> tuple[float, ...]:
        return FlextPolarUtilities.parse_ebno_list(spec)

    @staticmethod
    @_domain_safe
    def grid_points(
        cores_spec: str,
        clock_spec: str,
        depth_spec: str,
    ) -> list[tuple[int, float, int]]:
        """(P, f_c MHz, D) grid from comma separated lists."""
        cores = FlextPolarUtilities.parse_number_list(cores_spec, parameter="cores")
        clocks = FlextPolarUtilities.parse_number_list(clock_spec, parameter="core_mhz")
        depths = FlextPolarUtilities.parse_number_list(depth_spec, parameter="depth")
        for parameter, values in (("cores", cores), ("depth", depths)):
            if any(value != int(value) or value < 1 for value in values):
                msg = f"{parameter} values must be positive integers"
                raise FlextPolarExceptions.ParameterError(msg, parameter=parameter)
        return arch_grid([int(c) for c in cores], clocks, [int(d) for d in depths])

    # =========================================================================
    # CODES, SCHEDULES AND DELAY MODELS
    # =========================================================================

    @_domain_safe
    def construct(
        self,
        n: int,
        k: int,
        design_snr_db: float | None = None,
    ) -> FlextPolarModels.PolarCode:
        """Construct a code at the given (or configured) design Eb/No."""
        snr = self.config.design_snr_db if design_snr_db is None else design_snr_db
        return construct_code(n, k, snr)

    @_domain_safe
    def load_code(self, path: Path) -> FlextPolarModels.PolarCode:
        return FlextPolarModels.PolarCode.from_file_dict(FlextPolarUtilities.read_json(path))

    @_domain_safe
    def save_code(self, code: FlextPolarModels.PolarCode, path: Path) -> Path:
        return FlextPolarUtilities.write_json(path, code.to_file_dict())

    @_domain_safe
    def load_schedule(self, path: Path) -> FlextPolarModels.QuantSchedule:
        return FlextPolarModels.QuantSchedule.from_file_dict(FlextPolarUtilities.read_json(path))

    @_domain_safe
    def load_delay_model(self, path: Path) -> FlextPolarModels.DelayModel:
        return FlextPolarModels.DelayModel.from_mapping(FlextPolarUtilities.read_json(path))

    # =========================================================================
    # FRAME FILES
    # =========================================================================

    def _design_snr(self, code: FlextPolarModels.PolarCode) -> float:
        return code.design_snr_db if code.design_snr_db is not None else self.config.design_snr_db

    def _channel_format(
        self,
        code: FlextPolarModels.PolarCode,
        schedule: FlextPolarModels.QuantSchedule,
    ) -> FlextPolarModels.QFormat:
        return channel_format(code, schedule, self.config.design_snr_db)

    @_domain_safe
    def encode_file(
        self,
        code: FlextPolarModels.PolarCode,
        input_path: Path,
        output_path: Path,
        *,
        output_format: str = "bits",
        ebno_db: float | None = None,
        systematic: bool = False,
        schedule: FlextPolarModels.QuantSchedule | None = None,
    ) -> Path:
        """Encode packed K-bit data frames into bits, LLRs or q8 bytes."""
        raw = FlextPolarUtilities.read_bytes(input_path)
        data = FlextPolarUtilities.unpack_frames(raw, code.k, source=str(input_path))
        if systematic:
            codewords = encode_systematic(code, data)
        else:
            u = np.zeros((data.shape[0], code.block_length), dtype=np.uint8)
            u[:, code.free_indices] = data
            codewords = encode(code, u)

        if output_format == "bits":
            payload = FlextPolarUtilities.pack_frames(codewords)
        else:
            llr = self._codeword_llr(code, codewords, ebno_db)
            if output_format == "llr":
                payload = FlextPolarUtilities.llr_frames_to_bytes(llr)
            else:
                sched = schedule or default_schedule(code.n)
                payload = to_q8_bytes(quantize_array(llr, self._channel_format(code, sched)))
        logger.info(
            "frames encoded",
            frames=data.shape[0],
            output_format=output_format,
            output=str(output_path),
        )
        return FlextPolarUtilities.write_bytes(output_path, payload)

    def _codeword_llr(
        self,
        code: FlextPolarModels.PolarCode,
        codewords: BitArray,
        ebno_db: float | None,
    ) -> LlrArray:
        if ebno_db is None:
            # noiseless frames at the design point
            sigma2 = noise_variance(self._design_snr(code), code.rate)
            return 2.0 * (1.0 - 2.0 * codewords.astype(np.float64)) / sigma2
        rng = np.random.default_rng(np.random.SeedSequence(self.config.seed))
        return awgn_llr(codewords, ebno_db, code.rate, rng)

    @_domain_safe
    def decode_file(
        self,
        code: FlextPolarModels.PolarCode,
        input_path: Path,
        output_path: Path,
        *,
        decoder: DecoderVariant = DecoderVariant.FLOAT_FAST,
        input_format: str = "llr",
        schedule: FlextPolarModels.QuantSchedule | None = None,
        systematic: bool = False,
    ) -> Path:
        """Decode LLR or q8 frames into packed K-bit data frames."""
        sched = schedule or default_schedule(code.n)
        channel = self._channel_format(code, sched)
        if input_format == "q8":
            raw = FlextPolarUtilities.read_bytes(input_path)
            qllr = from_q8_bytes(raw, code.block_length, source=str(input_path))
            llr = dequantize_array(qllr, channel)
        else:
            llr = FlextPolarUtilities.read_llr_frames(input_path, code.block_length)
            qllr = quantize_array(llr, channel)
        decided = self._decode(code, llr, qllr, decoder, sched, systematic=systematic)
        logger.info(
            "frames decoded",
            frames=decided.shape[0],
            decoder=decoder.value,
            output=str(output_path),
        )
        return FlextPolarUtilities.write_bytes(output_path, FlextPolarUtilities.pack_frames(decided))

    def _decode(
        self,
        code: FlextPolarModels.PolarCode,
        llr: LlrArray,
        qllr: QLlrBatch,
        decoder: DecoderVariant,
        schedule: FlextPolarModels.QuantSchedule,
        *,
        systematic: bool,
    ) -> BitArray:
        shortcuts = detect_shortcuts(code, self.config.shortcut_caps())
        match decoder:
            case DecoderVariant.FLOAT_SC:
                return decode_sc(code, llr, systematic=systematic)
            case DecoderVariant.FLOAT_FAST:
                return decode_fast(code, llr, shortcuts, systematic=systematic)
            case _:
                return decode_sc_quantized(code, qllr, schedule, shortcuts, systematic=systematic)

    # =========================================================================
    # SIMULATION
    # =========================================================================

    def sim_config(
        self,
        code: FlextPolarModels.PolarCode,
        ebno_db_list: Iterable[float],
        *,
        decoder: DecoderVariant = DecoderVariant.FLOAT_FAST,
        schedule: FlextPolarModels.QuantSchedule | None = None,
    ) -> Result[FlextPolarModels.SimConfig, FlextPolarExceptions.Error]:
        """Simulation description from the runtime settings."""

        @_domain_safe
        def build() -> FlextPolarModels.SimConfig:
            return FlextPolarModels.SimConfig(
                code=code,
                ebno_db_list=tuple(ebno_db_list),
                decoder=decoder,
                schedule=schedule,
                seed=self.config.seed,
                stop=self.config.stop_rule(),
                lfsr=self.config.lfsr(),
                shortcut_caps=self.config.shortcut_caps(),
                workers=self.config.workers,
                batch_frames=self.config.batch_frames,
            )

        return build()

    @_domain_safe
    def simulate(
        self,
        cfg: FlextPolarModels.SimConfig,
        output_path: Path | None = None,
    ) -> list[FlextPolarModels.ErrorStats]:
        """Run the sweep and optionally write the curve CSV."""
        stats = run_sweep(cfg)
        if output_path is not None:
            write_csv(stats, output_path)
        return stats

    # =========================================================================
    # ARCHITECTURE
    # =========================================================================

    @_domain_safe
    def analyze_arch(
        self,
        *,
        cores: int,
        core_mhz: float,
        depth: int | None = None,
        theta_deg: float | None = None,
        t_io_ns: float | None = None,
        channel_bits: int = 5,
        code: FlextPolarModels.PolarCode | None = None,
        info_length: int | None = None,
        delay_model: FlextPolarModels.DelayModel | None = None,
        calibrate_target: int | None = None,
    ) -> dict[str, object]:
        """Latency, throughput and (with a delay model) the R-RB schedule."""
        schedule = None
        if depth is None or delay_model is not None or calibrate_target is not None:
            graph_code = code or self._arch_code(info_length)
            graph = build_unrolled_graph(
                graph_code, detect_shortcuts(graph_code, self.config.shortcut_caps()), delay_model,
            )
            unit_delay_s = calibrate(graph, calibrate_target or DEFAULT_CALIBRATE_TARGET)
            schedule = rrb_schedule(graph, budget_for_clock(core_mhz * 1e6, unit_delay_s))
            depth = schedule.depth if depth is None else depth
        block_length = code.block_length if code is not None else 1 << DEFAULT_BLOCK_LOG2
        k = code.k if code is not None else (info_length or DEFAULT_INFO_LENGTH)
        cfg = FlextPolarModels.ArchConfig(
            cores=cores,
            core_clock_hz=core_mhz * 1e6,
            depth=depth,
            theta_deg=theta_deg,
            channel_bits=channel_bits,
            block_length=block_length,
            info_length=k,
            t_io_s=None if t_io_ns is None else t_io_ns * 1e-9,
        )
        return arch_report(cfg, schedule)

    def _arch_code(self, info_length: int | None) -> FlextPolarModels.PolarCode:
        k = info_length or DEFAULT_INFO_LENGTH
        if k > 1 << DEFAULT_BLOCK_LOG2:
            msg = FlextPolarMessages.K_OUT_OF_RANGE.format(k=k, block_length=1 << DEFAULT_BLOCK_LOG2)
            raise FlextPolarExceptions.ParameterError(msg, parameter="K")
        return construct_code(DEFAULT_BLOCK_LOG2, k, self.config.design_snr_db)

    @_domain_safe
    def sweep_arch(
        self,
        points: Iterable[tuple[int, float, int]],
        *,
        info_length: int = DEFAULT_INFO_LENGTH,
        channel_bits: int = 5,
        theta_deg: float | None = None,
    ) -> list[dict[str, object]]:
        return sweep_arch(
            points, info_length=info_length, channel_bits=channel_bits, theta_deg=theta_deg,
        )

    # =========================================================================
    # MANIFESTS
    # =========================================================================

    @_domain_safe
    def write_report(
        self,
        data: dict[str, object] | list[dict[str, object]],
        path: Path,
    ) -> Path:
        """JSON report, or CSV rows when ``path`` ends in .csv."""
        if path.suffix == ".csv" and isinstance(data, list):
            return FlextPolarUtilities.write_rows_csv(path, data)
        return FlextPolarUtilities.write_json(path, data)

    @_domain_safe
    def write_manifest(self, manifest: FlextPolarModels.RunManifest, path: Path) -> Path:
        return FlextPolarUtilities.write_json(path, manifest.model_dump(mode="json"))


def unwrap_or_raise[T](result: Result[T, FlextPolarExceptions.Error]) -> T:
    """Value of a successful result, or re-raise its domain error."""
    if is_successful(result):
        return result.unwrap()
    raise result.failure()


__all__ = ["FlextPolarAPI", "unwrap_or_raise"]
