"""Sign-magnitude fixed-point LLRs and the adaptively quantized SC decoder.

All formats of a schedule share one step grid, so kernels work on integer
magnitudes and only clip to the output width. A 1-bit format keeps the sign
alone and counts as one LSB in arithmetic. Shortcut leaves decide on the
signed LSB values exactly as the float decoder does on real LLRs.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from flext_polar.constants import (
    CHANNEL_RANGE_SIGMAS,
    DEFAULT_CHANNEL_BITS,
    DEFAULT_DESIGN_SNR_DB,
    Q8_MAGNITUDE_MASK,
    Q8_SIGN_BIT,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import FlextPolarModels
from flext_polar.sc_decoder import (
    SegmentNode,
    cached_segment_tree,
    detect_shortcuts,
    run_segment_tree,
    shortcut_leaf,
)
from flext_polar.typings import BitArray, LlrArray, MagnitudeArray, SignArray

QFormat = FlextPolarModels.QFormat
QLlr = FlextPolarModels.QLlr


class QLlrBatch(NamedTuple):
    """Sign-magnitude LLR arrays of identical shape; ``negative`` is the sign bit."""

    negative: SignArray
    magnitude: MagnitudeArray


# =============================================================================
# QUANTIZER
# =============================================================================


def _renormalize(
    negative: SignArray,
    magnitude: MagnitudeArray,
    fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None,
) -> QLlrBatch:
    limit = fmt.max_magnitude
    saturated = magnitude > limit
    if stats is not None:
        stats.add(int(np.count_nonzero(saturated)))
    if fmt.is_sign_only:
        clipped = np.ones_like(magnitude)
        return QLlrBatch(negative & (magnitude > 0), clipped)
    clipped = np.minimum(magnitude, limit).astype(np.int32)
    return QLlrBatch(negative & (clipped > 0), clipped)


def quantize_array(
    values: LlrArray,
    fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> QLlrBatch:
    """Round |x|/step half away from zero, saturate, keep the sign (negative zero kept)."""
    real = np.asarray(values, dtype=np.float64)
    negative = real < 0
    levels = np.floor(np.abs(real) / fmt.step + 0.5)
    limit = fmt.max_magnitude
    saturated = levels > limit
    if stats is not None:
        stats.add(int(np.count_nonzero(saturated)))
    if fmt.is_sign_only:
        return QLlrBatch(negative, np.ones(real.shape, dtype=np.int32))
    return QLlrBatch(negative, np.minimum(levels, limit).astype(np.int32))


def dequantize_array(batch: QLlrBatch, fmt: FlextPolarModels.QFormat) -> LlrArray:
    signed = np.where(batch.negative, -batch.magnitude, batch.magnitude)
    return signed.astype(np.float64) * fmt.step


def quantize(
    x: float,
    fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> FlextPolarModels.QLlr:
    """Scalar form of ``quantize_array``."""
    batch = quantize_array(np.asarray(x), fmt, stats)
    return QLlr(negative=bool(batch.negative), magnitude=int(batch.magnitude))


def dequantize(q: FlextPolarModels.QLlr, fmt: FlextPolarModels.QFormat) -> float:
    return float(q.signed_lsb * fmt.step)


def _scalar(batch: QLlrBatch) -> FlextPolarModels.QLlr:
    return QLlr(negative=bool(batch.negative), magnitude=int(batch.magnitude))


def _pair(q: FlextPolarModels.QLlr) -> QLlrBatch:
    return QLlrBatch(np.asarray(q.negative), np.asarray(q.magnitude, dtype=np.int32))


def q_f_array(
    a: QLlrBatch,
    b: QLlrBatch,
    out_fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> QLlrBatch:
    """Min-sum on magnitudes, XOR on signs, clipped into ``out_fmt``."""
    return _renormalize(
        a.negative ^ b.negative,
        np.minimum(a.magnitude, b.magnitude),
        out_fmt,
        stats,
    )


def q_g_array(
    a: QLlrBatch,
    b: QLlrBatch,
    z: int | BitArray,
    out_fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> QLlrBatch:
    """b + (1 - 2z) * a on the shared grid, clipped into ``out_fmt``."""
    signed_a = np.where(a.negative, -a.magnitude, a.magnitude)
    signed_b = np.where(b.negative, -b.magnitude, b.magnitude)
    total = np.where(np.asarray(z) != 0, signed_b - signed_a, signed_b + signed_a)
    return _renormalize(total < 0, np.abs(total).astype(np.int32), out_fmt, stats)


def q_f_kernel(
    a: FlextPolarModels.QLlr,
    b: FlextPolarModels.QLlr,
    out_fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> FlextPolarModels.QLlr:
    return _scalar(q_f_array(_pair(a), _pair(b), out_fmt, stats))


def q_g_kernel(
    a: FlextPolarModels.QLlr,
    b: FlextPolarModels.QLlr,
    z: int,
    out_fmt: FlextPolarModels.QFormat,
    stats: FlextPolarModels.SaturationStats | None = None,
) -> FlextPolarModels.QLlr:
    return _scalar(q_g_array(_pair(a), _pair(b), z, out_fmt, stats))


# =============================================================================
# SCHEDULES
# =============================================================================


def channel_step(
    design_snr_db: float,
    rate: float,
    channel_bits: int = DEFAULT_CHANNEL_BITS,
) -> float:
    """Step so that mean + 3 std of the channel LLR fills the channel format.

    With sigma^2 = 1/(2 R 10^(Eb/No/10)) the LLR of a 0 bit is Gaussian with
    mean 2/sigma^2 and standard deviation 2/sigma.
    """
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (design_snr_db / 10.0))
    sigma = math.sqrt(sigma2)
    span = 2.0 / sigma2 + CHANNEL_RANGE_SIGMAS * 2.0 / sigma
    return span / QFormat(total_bits=channel_bits, step=1.0).max_magnitude


def channel_format(
    code: FlextPolarModels.PolarCode,
    schedule: FlextPolarModels.QuantSchedule,
    fallback_snr_db: float = DEFAULT_DESIGN_SNR_DB,
) -> FlextPolarModels.QFormat:
    """Channel quantizer of ``schedule`` for ``code``, fixed at the design Eb/No.

    The operating Eb/No never moves the step; ``fallback_snr_db`` stands in
    for codes that carry no design point.
    """
    snr = fallback_snr_db if code.design_snr_db is None else code.design_snr_db
    step = schedule.resolve_step(channel_step(snr, code.rate, schedule.channel_bits))
    return schedule.stage_formats(step)[0]


def default_schedule(
    n: int,
    step: float | None = None,
    channel_bits: int = DEFAULT_CHANNEL_BITS,
) -> FlextPolarModels.QuantSchedule:
    """Widths decaying from 5 to 1 bit with depth; 5,5,4,4,3,3,2,2,1,1 for n=10."""
    widths = tuple(max(1, 5 - ((t - 1) * 10 // n) // 2) for t in range(1, n + 1))
    return FlextPolarModels.QuantSchedule(
        channel_bits=channel_bits, step=step, per_depth_bits=widths,
    )


def uniform_schedule(
    n: int,
    bits: int,
    step: float | None = None,
) -> FlextPolarModels.QuantSchedule:
    return FlextPolarModels.QuantSchedule(
        channel_bits=bits, step=step, per_depth_bits=(bits,) * n,
    )


# =============================================================================
# BYTE FRAME FORMAT
# =============================================================================


def to_q8_bytes(batch: QLlrBatch) -> bytes:
    """One byte per LLR: bit 7 sign, bits 3..0 magnitude."""
    if (batch.magnitude > Q8_MAGNITUDE_MASK).any():
        msg = "q8 frames hold magnitudes up to 15 (formats of at most 5 bits)"
        raise FlextPolarExceptions.ParameterError(msg, parameter="magnitude")
    data = (batch.negative.astype(np.uint8) << 7) | batch.magnitude.astype(np.uint8)
    return data.astype(np.uint8).tobytes()


def from_q8_bytes(data: bytes, block_length: int, *, source: str = "<bytes>") -> QLlrBatch:
    """Parse q8 frames into a (B, N) batch."""
    if len(data) % block_length:
        msg = FlextPolarMessages.FRAME_SIZE_MISMATCH.format(
            path=source, size=len(data), frame_bytes=block_length,
        )
        raise FlextPolarExceptions.FormatError(msg, file_path=source)
    raw = np.frombuffer(data, dtype=np.uint8).reshape(-1, block_length)
    if (raw & ~np.uint8(Q8_SIGN_BIT | Q8_MAGNITUDE_MASK)).any():
        msg = f"{source} has nonzero unused bits in q8 frames"
        raise FlextPolarExceptions.FormatError(msg, file_path=source)
    return QLlrBatch(
        (raw & Q8_SIGN_BIT) != 0,
        (raw & Q8_MAGNITUDE_MASK).astype(np.int32),
    )


# =============================================================================
# QUANTIZED DECODER
# =============================================================================


class QuantizedKernels:
    """Integer kernels storing depth-t LLRs in the depth-t format."""

    def __init__(
        self,
        formats: dict[int, FlextPolarModels.QFormat],
        stats: FlextPolarModels.SaturationStats | None,
    ) -> None:
        self.formats = formats
        self.stats = stats

    @staticmethod
    def _halves(alpha: QLlrBatch) -> tuple[QLlrBatch, QLlrBatch]:
        half = alpha.negative.shape[1] // 2
        return (
            QLlrBatch(alpha.negative[:, :half], alpha.magnitude[:, :half]),
            QLlrBatch(alpha.negative[:, half:], alpha.magnitude[:, half:]),
        )

    def f(self, alpha: QLlrBatch, depth: int) -> QLlrBatch:
        a, b = self._halves(alpha)
        return q_f_array(a, b, self.formats[depth], self.stats)

    def g(self, alpha: QLlrBatch, feedback: BitArray, depth: int) -> QLlrBatch:
        a, b = self._halves(alpha)
        return q_g_array(a, b, feedback, self.formats[depth], self.stats)

    def leaf(self, alpha: QLlrBatch, node: SegmentNode) -> tuple[BitArray, BitArray]:
        # signed LSBs in a widened accumulator, no clipping
        signed = np.where(alpha.negative, -alpha.magnitude, alpha.magnitude).astype(np.int64)
        return shortcut_leaf(signed, node)


def _as_qbatch(
    qllr: QLlrBatch | Sequence[FlextPolarModels.QLlr],
    block_length: int,
) -> tuple[QLlrBatch, bool]:
    if isinstance(qllr, QLlrBatch):
        negative = np.asarray(qllr.negative, dtype=np.bool_)
        magnitude = np.asarray(qllr.magnitude, dtype=np.int32)
    else:
        negative = np.array([q.negative for q in qllr], dtype=np.bool_)
        magnitude = np.array([q.magnitude for q in qllr], dtype=np.int32)
    single = negative.ndim == 1
    if single:
        negative, magnitude = negative[np.newaxis, :], magnitude[np.newaxis, :]
    if negative.ndim != 2 or negative.shape[1] != block_length:
        msg = FlextPolarMessages.LENGTH_MISMATCH.format(
            what="qllr", actual=negative.shape[-1], expected=block_length,
        )
        raise FlextPolarExceptions.ParameterError(msg, parameter="qllr")
    return QLlrBatch(negative, magnitude), single


def decode_sc_quantized(
    code: FlextPolarModels.PolarCode,
    qllr: QLlrBatch | Sequence[FlextPolarModels.QLlr],
    sched: FlextPolarModels.QuantSchedule,
    shortcuts: Sequence[FlextPolarModels.ShortcutNode] | None = None,
    *,
    stats: FlextPolarModels.SaturationStats | None = None,
    systematic: bool = False,
) -> BitArray:
    """Shortcut SC decoding with every depth-t LLR held in the depth-t format."""
    sched.require_depths(code.n)
    batch, single = _as_qbatch(qllr, code.block_length)
    # decisions only depend on integer magnitudes; the step just labels the grid
    formats = sched.stage_formats(sched.resolve_step(1.0))
    if (batch.magnitude > formats[0].max_magnitude).any() or (batch.magnitude < 0).any():
        msg = "channel magnitudes exceed the channel format"
        raise FlextPolarExceptions.ParameterError(msg, parameter="qllr")
    leaves = detect_shortcuts(code) if shortcuts is None else shortcuts
    tree = cached_segment_tree(code, tuple(leaves))
    x_hat, u_hat = run_segment_tree(
        tree, batch, batch.negative.shape[0], QuantizedKernels(formats, stats),
    )
    source = x_hat if systematic else u_hat
    decided = source[:, code.free_indices].astype(np.uint8)
    return decided[0] if single else decided


__all__ = [
    "QLlrBatch",
    "QuantizedKernels",
    "channel_format",
    "channel_step",
    "decode_sc_quantized",
    "default_schedule",
    "dequantize",
    "dequantize_array",
    "from_q8_bytes",
    "q_f_array",
    "q_f_kernel",
    "q_g_array",
    "q_g_kernel",
    "quantize",
    "quantize_array",
    "to_q8_bytes",
    "uniform_schedule",
]
