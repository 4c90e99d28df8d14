"""FLEXT-Polar Domain Models - Consolidated Class Structure.

Single consolidated class containing ALL polar toolkit models following FLEXT
patterns. Individual models available as nested classes for organization.
"""

from __future__ import annotations

import math
from datetime import datetime
from enum import StrEnum
from pathlib import Path
from typing import Self

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    computed_field,
    field_validator,
    model_validator,
)
from pydantic_settings import BaseSettings, SettingsConfigDict

from flext_polar.constants import (
    DEFAULT_BATCH_FRAMES,
    DEFAULT_CHANNEL_BITS,
    DEFAULT_DECISION_DELAY,
    DEFAULT_DESIGN_SNR_DB,
    DEFAULT_F_LAYER_DELAY,
    DEFAULT_FEEDBACK_XOR_DELAY,
    DEFAULT_G_LAYER_DELAY,
    DEFAULT_LFSR_SEED,
    DEFAULT_LFSR_TAPS,
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
    DEFAULT_REPETITION_CAP,
    DEFAULT_REPETITION_OFFSET,
    DEFAULT_REPETITION_SLOPE,
    DEFAULT_SEED,
    DEFAULT_SPC_CAP,
    DEFAULT_SPC_OFFSET,
    DEFAULT_SPC_SLOPE,
    ENV_PREFIX,
    MAX_BLOCK_LOG2,
    MAX_FORMAT_BITS,
    MIN_FORMAT_BITS,
    T_IO_OVERRIDE_TOLERANCE,
    UNLIMITED_SHORTCUT_LENGTH,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.typings import BoolMask, IndexArray
from flext_polar.utilities import FlextPolarUtilities


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


class NodeKind(StrEnum):
    """Leaf kinds of the pruned SC recursion tree."""

    RATE0 = "rate0"
    RATE1 = "rate1"
    REPETITION = "repetition"
    SPC = "spc"
    GENERIC = "generic"


class GraphNodeKind(StrEnum):
    """Node kinds of the unrolled decoder dataflow graph."""

    F_LAYER = "f_layer"
    G_LAYER = "g_layer"
    DECISION = "decision"
    FROZEN_DECISION = "frozen_decision"
    RATE0 = "rate0"
    RATE1 = "rate1"
    REPETITION = "repetition"
    SPC = "spc"
    FEEDBACK_XOR = "feedback_xor"


class DecoderVariant(StrEnum):
    """Decoder used by the Monte-Carlo chain."""

    FLOAT_SC = "float-sc"
    FLOAT_FAST = "float-fast"
    QUANTIZED = "quantized"


# =============================================================================
# CONSOLIDATED MODELS CLASS - Single class containing ALL polar models
# =============================================================================


class FlextPolarModels:
    """Single consolidated class containing ALL polar toolkit models."""

    # -------------------------------------------------------------------------
    # Codes and shortcut segments
    # -------------------------------------------------------------------------

    class PolarCode(BaseModel):
        """Static polar code definition: n, K and the frozen mask (True = frozen)."""

        model_config = ConfigDict(frozen=True)

        n: int = Field(ge=1, le=MAX_BLOCK_LOG2)
        k: int = Field(ge=1)
        frozen_mask: tuple[bool, ...]
        design_snr_db: float | None = None

        @model_validator(mode="after")
        def _check_shape(self) -> Self:
            block_length = 1 << self.n
            if len(self.frozen_mask) != block_length:
                msg = FlextPolarMessages.LENGTH_MISMATCH.format(
                    what="frozen_mask", actual=len(self.frozen_mask), expected=block_length,
                )
                raise FlextPolarExceptions.ParameterError(msg, parameter="frozen_mask")
            if not 1 <= self.k <= block_length:
                msg = FlextPolarMessages.K_OUT_OF_RANGE.format(k=self.k, block_length=block_length)
                raise FlextPolarExceptions.ParameterError(msg, parameter="K")
            frozen = sum(self.frozen_mask)
            if frozen != block_length - self.k:
                msg = FlextPolarMessages.FROZEN_COUNT_MISMATCH.format(
                    frozen=frozen, expected=block_length - self.k,
                )
                raise FlextPolarExceptions.ParameterError(msg, parameter="frozen_mask")
            return self

        @property
        def block_length(self) -> int:
            """N = 2^n."""
            return 1 << self.n

        @property
        def rate(self) -> float:
            """R = K/N."""
            return self.k / self.block_length

        @property
        def mask(self) -> BoolMask:
            """Frozen mask as a numpy boolean array."""
            return np.asarray(self.frozen_mask, dtype=np.bool_)

        @property
        def free_indices(self) -> IndexArray:
            """The information set A in ascending order."""
            return np.flatnonzero(~self.mask)

        @property
        def frozen_indices(self) -> IndexArray:
            """The frozen set A^c in ascending order."""
            return np.flatnonzero(self.mask)

        def to_file_dict(self) -> dict[str, object]:
            """Code definition file content."""
            return {
                "n": self.n,
                "K": self.k,
                "design_snr_db": self.design_snr_db,
                "frozen_mask": FlextPolarUtilities.mask_to_hex(self.frozen_mask),
            }

        @classmethod
        def from_file_dict(cls, data: dict[str, object]) -> FlextPolarModels.PolarCode:
            """Parse code definition file content."""
            try:
                n = int(str(data["n"]))
                k = int(str(data["K"]))
                mask_text = str(data["frozen_mask"])
                snr = data.get("design_snr_db")
                design_snr_db = None if snr is None else float(str(snr))
            except (KeyError, ValueError) as exc:
                msg = f"code file is missing or has a malformed field: {exc}"
                raise FlextPolarExceptions.FormatError(msg, cause=exc) from exc
            if not 1 <= n <= MAX_BLOCK_LOG2:
                msg = FlextPolarMessages.N_OUT_OF_RANGE.format(n=n, max_n=MAX_BLOCK_LOG2)
                raise FlextPolarExceptions.FormatError(msg)
            mask = FlextPolarUtilities.hex_to_mask(mask_text, 1 << n)
            try:
                return cls(n=n, k=k, frozen_mask=mask, design_snr_db=design_snr_db)
            except FlextPolarExceptions.ParameterError as exc:
                raise FlextPolarExceptions.FormatError(str(exc), cause=exc) from exc

    class ShortcutNode(BaseModel):
        """Leaf segment [start, start + length) of the pruned recursion tree."""

        model_config = ConfigDict(frozen=True)

        kind: NodeKind
        start: int = Field(ge=0)
        length: int = Field(ge=1)

        @property
        def stop(self) -> int:
            return self.start + self.length

    # -------------------------------------------------------------------------
    # Quantization
    # -------------------------------------------------------------------------

    class QFormat(BaseModel):
        """Sign-magnitude fixed-point format on a step grid."""

        model_config = ConfigDict(frozen=True)

        total_bits: int = Field(ge=MIN_FORMAT_BITS, le=MAX_FORMAT_BITS)
        step: float = Field(gt=0.0)

        @property
        def is_sign_only(self) -> bool:
            return self.total_bits == 1

        @property
        def max_magnitude(self) -> int:
            """Largest magnitude in LSBs; a sign-only value counts as one LSB."""
            if self.is_sign_only:
                return 1
            return (1 << (self.total_bits - 1)) - 1

    class QLlr(BaseModel):
        """A single sign-magnitude LLR; magnitude in LSB units of its format."""

        model_config = ConfigDict(frozen=True)

        negative: bool = False
        magnitude: int = Field(ge=0)

        @property
        def signed_lsb(self) -> int:
            """Signed integer value; a negative zero reads as 0."""
            return -self.magnitude if self.negative else self.magnitude

        @property
        def hard_bit(self) -> int:
            """Hard decision taken from the sign bit."""
            return int(self.negative)

    class QuantSchedule(BaseModel):
        """Per-depth bit widths on a shared step grid.

        Depth 0 is the channel and uses ``channel_bits``; ``per_depth_bits[t-1]``
        is the width of LLRs produced at recursion depth t. ``step=None`` means
        the step is derived from the channel statistics at each Eb/No point.
        """

        model_config = ConfigDict(frozen=True)

        channel_bits: int = Field(
            default=DEFAULT_CHANNEL_BITS, ge=MIN_FORMAT_BITS, le=MAX_FORMAT_BITS,
        )
        step: float | None = Field(default=None, gt=0.0)
        per_depth_bits: tuple[int, ...]

        @field_validator("per_depth_bits")
        @classmethod
        def _check_widths(cls, value: tuple[int, ...]) -> tuple[int, ...]:
            for bits in value:
                if not MIN_FORMAT_BITS <= bits <= MAX_FORMAT_BITS:
                    msg = f"stage width {bits} outside [{MIN_FORMAT_BITS}, {MAX_FORMAT_BITS}]"
                    raise FlextPolarExceptions.ConfigurationError(msg, config_key="per_depth_bits")
            return value

        def require_depths(self, n: int) -> None:
            """Fail unless the schedule covers exactly depths 1..n."""
            if len(self.per_depth_bits) != n:
                msg = FlextPolarMessages.SCHEDULE_DEPTH_MISMATCH.format(
                    actual=len(self.per_depth_bits), expected=n,
                )
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="per_depth_bits")

        def resolve_step(self, fallback: float | None = None) -> float:
            """The fixed step, or ``fallback`` for channel-adaptive schedules."""
            step = self.step if self.step is not None else fallback
            if step is None:
                msg = "schedule has no step and no channel-derived step was given"
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="step")
            return step

        def stage_formats(self, step: float) -> dict[int, FlextPolarModels.QFormat]:
            """Map depth 0..n to its format."""
            formats = {0: FlextPolarModels.QFormat(total_bits=self.channel_bits, step=step)}
            for depth, bits in enumerate(self.per_depth_bits, start=1):
                formats[depth] = FlextPolarModels.QFormat(total_bits=bits, step=step)
            return formats

        def to_file_dict(self) -> dict[str, object]:
            return {
                "channel_bits": self.channel_bits,
                "step": self.step,
                "per_depth_bits": list(self.per_depth_bits),
            }

        @classmethod
        def from_file_dict(cls, data: dict[str, object]) -> FlextPolarModels.QuantSchedule:
            """Parse schedule file content."""
            try:
                return cls.model_validate(data)
            except ValidationError as exc:
                msg = f"invalid quantization schedule: {exc.errors()[0]['msg']}"
                raise FlextPolarExceptions.ConfigurationError(
                    msg, config_key="schedule", cause=exc,
                ) from exc

    class SaturationStats(BaseModel):
        """Mutable saturation counter filled by quantized kernels."""

        count: int = 0

        def add(self, events: int) -> None:
            self.count += int(events)

    # -------------------------------------------------------------------------
    # Architecture model
    # -------------------------------------------------------------------------

    class DelayModel(BaseModel):
        """Normalized cell delays per unrolled-graph node kind."""

        model_config = ConfigDict(frozen=True, extra="forbid")

        f_layer: float = Field(default=DEFAULT_F_LAYER_DELAY, ge=0.0)
        g_layer: float = Field(default=DEFAULT_G_LAYER_DELAY, ge=0.0)
        decision: float = Field(default=DEFAULT_DECISION_DELAY, ge=0.0)
        frozen_decision: float = Field(default=0.0, ge=0.0)
        rate0: float = Field(default=0.0, ge=0.0)
        rate1: float = Field(default=DEFAULT_DECISION_DELAY, ge=0.0)
        repetition_slope: float = Field(default=DEFAULT_REPETITION_SLOPE, ge=0.0)
        repetition_offset: float = Field(default=DEFAULT_REPETITION_OFFSET, ge=0.0)
        spc_slope: float = Field(default=DEFAULT_SPC_SLOPE, ge=0.0)
        spc_offset: float = Field(default=DEFAULT_SPC_OFFSET, ge=0.0)
        feedback_xor: float = Field(default=DEFAULT_FEEDBACK_XOR_DELAY, ge=0.0)

        def delay_of(self, kind: str, length: int) -> float:
            """Delay of one node of ``kind`` covering a segment of ``length``."""
            try:
                node_kind = GraphNodeKind(kind)
            except ValueError as exc:
                msg = FlextPolarMessages.UNKNOWN_NODE_KIND.format(kind=kind)
                raise FlextPolarExceptions.ConfigurationError(
                    msg, config_key=kind, cause=exc,
                ) from exc
            match node_kind:
                case GraphNodeKind.REPETITION:
                    return self.repetition_slope * math.log2(length) + self.repetition_offset
                case GraphNodeKind.SPC:
                    return self.spc_slope * math.log2(length) + self.spc_offset
                case _:
                    return float(getattr(self, node_kind.value))

        def scaled(self, factor: float) -> FlextPolarModels.DelayModel:
            """Every delay multiplied by ``factor``."""
            return self.model_copy(
                update={name: value * factor for name, value in self.model_dump().items()},
            )

        @classmethod
        def from_mapping(cls, data: dict[str, object]) -> FlextPolarModels.DelayModel:
            """Parse a delay model file; unknown kinds are configuration errors."""
            try:
                return cls.model_validate(data)
            except ValidationError as exc:
                first = exc.errors()[0]
                key = ".".join(str(part) for part in first["loc"]) or "delay_model"
                if first["type"] == "extra_forbidden":
                    msg = FlextPolarMessages.UNKNOWN_NODE_KIND.format(kind=key)
                else:
                    msg = f"invalid delay model entry {key}: {first['msg']}"
                raise FlextPolarExceptions.ConfigurationError(
                    msg, config_key=key, cause=exc,
                ) from exc

    class ArchConfig(BaseModel):
        """Multicore wrapper configuration; f_IO = P * f_c."""

        model_config = ConfigDict(frozen=True)

        cores: int = Field(ge=1)
        core_clock_hz: float = Field(gt=0.0)
        depth: int = Field(ge=1)
        theta_deg: float | None = Field(default=None, ge=0.0, lt=360.0)
        channel_bits: int = Field(default=DEFAULT_CHANNEL_BITS, ge=1)
        block_length: int = Field(default=1024, ge=2)
        info_length: int = Field(default=854, ge=1)
        t_io_s: float | None = Field(default=None, gt=0.0)

        @model_validator(mode="after")
        def _check(self) -> Self:
            if not _is_power_of_two(self.cores):
                msg = f"core count {self.cores} is not a power of two"
                raise FlextPolarExceptions.ParameterError(msg, parameter="cores")
            if self.info_length > self.block_length:
                msg = FlextPolarMessages.K_OUT_OF_RANGE.format(
                    k=self.info_length, block_length=self.block_length,
                )
                raise FlextPolarExceptions.ParameterError(msg, parameter="K")
            if self.t_io_s is not None:
                nominal = 1.0 / (self.cores * self.core_clock_hz)
                if abs(self.t_io_s - nominal) > T_IO_OVERRIDE_TOLERANCE * nominal:
                    msg = FlextPolarMessages.T_IO_MISMATCH.format(t_io=self.t_io_s, nominal=nominal)
                    raise FlextPolarExceptions.ParameterError(msg, parameter="t_io")
            return self

        @property
        def io_clock_hz(self) -> float:
            return self.cores * self.core_clock_hz

        @property
        def t_io(self) -> float:
            """IO clock period in seconds."""
            return self.t_io_s if self.t_io_s is not None else 1.0 / self.io_clock_hz

        @property
        def input_bits_per_frame(self) -> int:
            """N*Q bits shifted into a core for one frame."""
            return self.block_length * self.channel_bits

        @property
        def output_bits_per_frame(self) -> int:
            return self.info_length

    class LatencyInterval(BaseModel):
        """Latency range in seconds; min == max when the phase is fixed."""

        model_config = ConfigDict(frozen=True)

        min_s: float
        max_s: float

    class Throughput(BaseModel):
        model_config = ConfigDict(frozen=True)

        info_bps: float
        coded_bps: float

    class FrameFlowResult(BaseModel):
        """Outcome of the cycle-accurate frame-flow simulation."""

        model_config = ConfigDict(frozen=True)

        per_frame_latency_s: tuple[float, ...]
        per_frame_latency_cycles: tuple[int, ...]
        completion_cycles: tuple[int, ...]
        sustained_info_bps: float

    class PipelineSchedule(BaseModel):
        """Stage assignment after register reduction and balancing."""

        model_config = ConfigDict(frozen=True)

        stage_of: dict[str, int]
        depth: int = Field(ge=1)
        per_stage_delay: tuple[float, ...]
        budget: float = Field(gt=0.0)

    # -------------------------------------------------------------------------
    # Link simulation
    # -------------------------------------------------------------------------

    class StopRule(BaseModel):
        model_config = ConfigDict(frozen=True)

        min_frame_errors: int = Field(default=DEFAULT_MIN_FRAME_ERRORS, ge=1)
        max_frames: int = Field(default=DEFAULT_MAX_FRAMES, ge=1)

    class LfsrConfig(BaseModel):
        """Fibonacci LFSR: ``taps[0]`` is the register length."""

        model_config = ConfigDict(frozen=True)

        taps: tuple[int, ...] = DEFAULT_LFSR_TAPS
        seed: int = DEFAULT_LFSR_SEED

        @model_validator(mode="after")
        def _check(self) -> Self:
            if len(self.taps) < 2 or any(not 1 <= tap <= self.taps[0] for tap in self.taps):
                msg = f"invalid LFSR taps {self.taps}"
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="lfsr.taps")
            if not 0 < self.seed < (1 << self.taps[0]):
                msg = FlextPolarMessages.ZERO_LFSR_STATE
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="lfsr.seed")
            return self

    class SimConfig(BaseModel):
        """Complete Monte-Carlo run description."""

        model_config = ConfigDict(frozen=True)

        code: FlextPolarModels.PolarCode
        ebno_db_list: tuple[float, ...]
        decoder: DecoderVariant = DecoderVariant.FLOAT_FAST
        schedule: FlextPolarModels.QuantSchedule | None = None
        seed: int = Field(default=DEFAULT_SEED, ge=0, lt=1 << 64)
        stop: FlextPolarModels.StopRule = Field(default_factory=lambda: FlextPolarModels.StopRule())
        lfsr: FlextPolarModels.LfsrConfig = Field(
            default_factory=lambda: FlextPolarModels.LfsrConfig(),
        )
        shortcut_caps: dict[NodeKind, int] = Field(
            default_factory=lambda: dict(DEFAULT_SHORTCUT_CAPS),
        )
        workers: int = Field(default=1, ge=1)
        batch_frames: int = Field(default=DEFAULT_BATCH_FRAMES, ge=1)

        @field_validator("ebno_db_list")
        @classmethod
        def _check_ebno(cls, value: tuple[float, ...]) -> tuple[float, ...]:
            if not value:
                msg = "Eb/No list is empty"
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="ebno_db_list")
            if any(b <= a for a, b in zip(value, value[1:], strict=False)):
                msg = "Eb/No list must be strictly ascending"
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="ebno_db_list")
            return value

        def resolved(self) -> dict[str, object]:
            """JSON-ready view used by manifests."""
            data = self.model_dump(mode="json", exclude={"code"})
            data["code"] = self.code.to_file_dict()
            return data

    class ErrorStats(BaseModel):
        """Error counters of one Eb/No point."""

        model_config = ConfigDict(frozen=True)

        ebno_db: float
        frames: int = Field(default=0, ge=0)
        frame_errors: int = Field(default=0, ge=0)
        bits: int = Field(default=0, ge=0)
        bit_errors: int = Field(default=0, ge=0)
        wall_time_s: float = Field(default=0.0, ge=0.0)

        @model_validator(mode="after")
        def _check(self) -> Self:
            if self.frame_errors > self.frames or self.bit_errors > self.bits:
                msg = "error counts exceed trial counts"
                raise FlextPolarExceptions.ParameterError(msg, parameter="error_stats")
            return self

        @computed_field  # type: ignore[prop-decorator]
        @property
        def fer(self) -> float:
            return self.frame_errors / self.frames if self.frames else 0.0

        @computed_field  # type: ignore[prop-decorator]
        @property
        def ber(self) -> float:
            return self.bit_errors / self.bits if self.bits else 0.0

        def merge(self, other: FlextPolarModels.ErrorStats) -> FlextPolarModels.ErrorStats:
            """Counter-wise sum; associative and commutative."""
            return FlextPolarModels.ErrorStats(
                ebno_db=self.ebno_db,
                frames=self.frames + other.frames,
                frame_errors=self.frame_errors + other.frame_errors,
                bits=self.bits + other.bits,
                bit_errors=self.bit_errors + other.bit_errors,
                wall_time_s=self.wall_time_s + other.wall_time_s,
            )

    class OutputDigest(BaseModel):
        model_config = ConfigDict(frozen=True)

        path: str
        sha256: str
        size_bytes: int

    class RunManifest(BaseModel):
        """Everything needed to reproduce a CLI run."""

        tool_version: str
        command: str
        config: dict[str, object]
        seed: int
        started_at: datetime
        finished_at: datetime
        outputs: list[FlextPolarModels.OutputDigest] = Field(default_factory=list)

        def add_output(self, path: Path) -> None:
            self.outputs.append(
                FlextPolarModels.OutputDigest(
                    path=str(path),
                    sha256=FlextPolarUtilities.file_digest(path),
                    size_bytes=path.stat().st_size,
                ),
            )

    # -------------------------------------------------------------------------
    # Runtime settings
    # -------------------------------------------------------------------------

    class Config(BaseSettings):
        """Runtime settings: flags > config file > environment > defaults."""

        model_config = SettingsConfigDict(
            env_prefix=ENV_PREFIX,
            extra="forbid",
            validate_assignment=True,
        )

        log_level: str = Field(default="WARNING")
        log_json: bool = Field(default=False)
        design_snr_db: float = Field(default=DEFAULT_DESIGN_SNR_DB)
        seed: int = Field(default=DEFAULT_SEED, ge=0, lt=1 << 64)
        workers: int = Field(default=1, ge=1)
        batch_frames: int = Field(default=DEFAULT_BATCH_FRAMES, ge=1)
        min_frame_errors: int = Field(default=DEFAULT_MIN_FRAME_ERRORS, ge=1)
        max_frames: int = Field(default=DEFAULT_MAX_FRAMES, ge=1)
        out_dir: Path = Field(default=Path())
        rate0_cap: int = Field(default=UNLIMITED_SHORTCUT_LENGTH, ge=0)
        rate1_cap: int = Field(default=UNLIMITED_SHORTCUT_LENGTH, ge=0)
        repetition_cap: int = Field(default=DEFAULT_REPETITION_CAP, ge=0)
        spc_cap: int = Field(default=DEFAULT_SPC_CAP, ge=0)
        lfsr_taps: tuple[int, ...] = Field(default=DEFAULT_LFSR_TAPS)
        lfsr_seed: int = Field(default=DEFAULT_LFSR_SEED, ge=1)

        @field_validator("log_level")
        @classmethod
        def _check_level(cls, value: str) -> str:
            level = value.upper()
            if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
                msg = f"unknown log level {value!r}"
                raise FlextPolarExceptions.ConfigurationError(msg, config_key="log_level")
            return level

        def shortcut_caps(self) -> dict[NodeKind, int]:
            """Caps per shortcut kind; a zero cap disables the kind."""
            caps = {
                NodeKind.RATE0: self.rate0_cap,
                NodeKind.RATE1: self.rate1_cap,
                NodeKind.REPETITION: self.repetition_cap,
                NodeKind.SPC: self.spc_cap,
            }
            return {kind: cap for kind, cap in caps.items() if cap > 0}

        def stop_rule(self) -> FlextPolarModels.StopRule:
            return FlextPolarModels.StopRule(
                min_frame_errors=self.min_frame_errors, max_frames=self.max_frames,
            )

        def lfsr(self) -> FlextPolarModels.LfsrConfig:
            return FlextPolarModels.LfsrConfig(taps=self.lfsr_taps, seed=self.lfsr_seed)

        @classmethod
        def from_file(cls, path: Path | None, **overrides: object) -> FlextPolarModels.Config:
            """Build settings from an optional JSON file plus explicit overrides."""
            values: dict[str, object] = {}
            if path is not None:
                values.update(FlextPolarUtilities.read_json(path))
            values.update({key: value for key, value in overrides.items() if value is not None})
            try:
                # init kwargs outrank the environment
                return cls(**values)  # type: ignore[arg-type]
            except ValidationError as exc:
                first = exc.errors()[0]
                key = ".".join(str(part) for part in first["loc"]) or "config"
                msg = f"invalid setting {key}: {first['msg']}"
                raise FlextPolarExceptions.ConfigurationError(
                    msg, config_key=key, cause=exc,
                ) from exc


DEFAULT_SHORTCUT_CAPS: dict[NodeKind, int] = {
    NodeKind.RATE0: UNLIMITED_SHORTCUT_LENGTH,
    NodeKind.RATE1: UNLIMITED_SHORTCUT_LENGTH,
    NodeKind.REPETITION: DEFAULT_REPETITION_CAP,
    NodeKind.SPC: DEFAULT_SPC_CAP,
}

FlextPolarModels.SimConfig.model_rebuild()
FlextPolarModels.RunManifest.model_rebuild()

FlextPolarConfig = FlextPolarModels.Config

__all__ = [
    "DEFAULT_SHORTCUT_CAPS",
    "DecoderVariant",
    "FlextPolarConfig",
    "FlextPolarModels",
    "GraphNodeKind",
    "NodeKind",
]
