"""Monte-Carlo link simulation.

Chain per frame: LFSR data, systematic encoding, BPSK over AWGN, channel LLRs,
optional quantization, decoding and error counting. Work is split into
fixed-size frame chunks; chunk (p, c) of Eb/No point p draws noise from
``SeedSequence(seed, spawn_key=(p, c))`` and data from the PRBS stream jumped
to its first frame, so results do not depend on how chunks are scheduled.
"""

from __future__ import annotations

import csv
import math
import time
from collections.abc import Iterator, Sequence
from concurrent import futures
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import erfc
from scipy.stats import binomtest

from flext_polar.constants import (
    CSV_COLUMNS,
    DEFAULT_LFSR_TAPS,
    WILSON_CONFIDENCE,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import DecoderVariant, FlextPolarModels
from flext_polar.polar_core import encode_systematic
from flext_polar.quant import (
    channel_format,
    decode_sc_quantized,
    default_schedule,
    quantize_array,
)
from flext_polar.sc_decoder import decode_fast, decode_sc, detect_shortcuts
from flext_polar.typings import BitArray, LlrArray
from flext_polar.utilities import FlextPolarUtilities

logger = FlextPolarUtilities.get_logger(__name__)

# =============================================================================
# DATA SOURCE
# =============================================================================


def _gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


class Lfsr:
    """Fibonacci LFSR with b_t = XOR of b_(t - tap) over ``taps``.

    The register holds the last ``taps[0]`` output bits, oldest first; bit j
    of an integer state is register position j.
    """

    def __init__(self, taps: Sequence[int], state: int) -> None:
        self.taps = tuple(int(tap) for tap in taps)
        self.length = max(self.taps)
        if state == 0:
            raise FlextPolarExceptions.ParameterError(
                FlextPolarMessages.ZERO_LFSR_STATE, parameter="state",
            )
        if state >> self.length:
            msg = FlextPolarMessages.LFSR_STATE_TOO_WIDE.format(state=state, width=self.length)
            raise FlextPolarExceptions.ParameterError(msg, parameter="state")
        self.register = np.array(
            [(state >> j) & 1 for j in range(self.length)], dtype=np.uint8,
        )

    @classmethod
    def from_config(cls, config: FlextPolarModels.LfsrConfig) -> Lfsr:
        return cls(config.taps, config.seed)

    @property
    def state(self) -> int:
        return int(sum(int(bit) << j for j, bit in enumerate(self.register)))

    def next_block(self, k: int) -> BitArray:
        """Emit the next ``k`` bits and advance."""
        if k == 0:
            return np.zeros(0, dtype=np.uint8)
        length = self.length
        stream = np.concatenate([self.register, np.zeros(k, dtype=np.uint8)])
        # bits within min(taps) of each other never depend on each other
        chunk = min(self.taps)
        for start in range(length, length + k, chunk):
            stop = min(start + chunk, length + k)
            acc = np.zeros(stop - start, dtype=np.uint8)
            for tap in self.taps:
                acc ^= stream[start - tap : stop - tap]
            stream[start:stop] = acc
        self.register = stream[-length:].copy()
        return stream[length:]

    def _step_matrix(self) -> np.ndarray:
        length = self.length
        matrix = np.zeros((length, length), dtype=np.uint8)
        for j in range(length - 1):
            matrix[j, j + 1] = 1
        for tap in self.taps:
            matrix[length - 1, length - tap] ^= 1
        return matrix

    def jump(self, steps: int) -> Lfsr:
        """Advance ``steps`` bits without emitting them (GF(2) matrix power)."""
        power = np.eye(self.length, dtype=np.uint8)
        base = self._step_matrix()
        remaining = steps
        while remaining:
            if remaining & 1:
                power = _gf2_matmul(base, power)
            base = _gf2_matmul(base, base)
            remaining >>= 1
        self.register = _gf2_matmul(power, self.register[:, np.newaxis])[:, 0]
        return self


def lfsr_next_block(
    state: int,
    k: int,
    taps: Sequence[int] = DEFAULT_LFSR_TAPS,
) -> tuple[BitArray, int]:
    """Functional form of ``Lfsr.next_block``: (bits, next state)."""
    lfsr = Lfsr(taps, state)
    bits = lfsr.next_block(k)
    return bits, lfsr.state


# =============================================================================
# CHANNEL AND STATISTICS
# =============================================================================


def noise_variance(ebno_db: float, rate: float) -> float:
    return 1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0))


def awgn_llr(x: BitArray, ebno_db: float, rate: float, rng: np.random.Generator) -> LlrArray:
    """BPSK (0 -> +1) over AWGN; returns 2y/sigma^2."""
    if not 0.0 < rate <= 1.0:
        msg = f"code rate {rate} outside (0, 1]"
        raise FlextPolarExceptions.ParameterError(msg, parameter="rate")
    sigma2 = noise_variance(ebno_db, rate)
    symbols = 1.0 - 2.0 * np.asarray(x, dtype=np.float64)
    received = symbols + math.sqrt(sigma2) * rng.standard_normal(symbols.shape)
    return 2.0 * received / sigma2


def uncoded_ber(ebno_db: float) -> float:
    """Q(sqrt(2 Eb/No)) for uncoded BPSK."""
    return float(0.5 * erfc(math.sqrt(10.0 ** (ebno_db / 10.0))))


def wilson_interval(k: int, n: int, confidence: float = WILSON_CONFIDENCE) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    interval = binomtest(k, n).proportion_ci(confidence_level=confidence, method="wilson")
    return float(interval.low), float(interval.high)


# =============================================================================
# MONTE-CARLO LOOP
# =============================================================================


@dataclass(frozen=True, slots=True)
class _Chunk:
    cfg: FlextPolarModels.SimConfig
    ebno_db: float
    point_index: int
    chunk_index: int
    first_frame: int
    frames: int


def _decode_chunk(cfg: FlextPolarModels.SimConfig, llr: LlrArray) -> BitArray:
    code = cfg.code
    match cfg.decoder:
        case DecoderVariant.FLOAT_SC:
            return decode_sc(code, llr, systematic=True)
        case DecoderVariant.FLOAT_FAST:
            return decode_fast(code, llr, detect_shortcuts(code, cfg.shortcut_caps), systematic=True)
        case _:
            schedule = cfg.schedule or default_schedule(code.n)
            return decode_sc_quantized(
                code,
                quantize_array(llr, channel_format(code, schedule)),
                schedule,
                detect_shortcuts(code, cfg.shortcut_caps),
                systematic=True,
            )


def _run_chunk(chunk: _Chunk) -> FlextPolarModels.ErrorStats:
    cfg = chunk.cfg
    code = cfg.code
    started = time.perf_counter()
    rng = np.random.default_rng(
        np.random.SeedSequence(cfg.seed, spawn_key=(chunk.point_index, chunk.chunk_index)),
    )
    source = Lfsr.from_config(cfg.lfsr).jump(chunk.first_frame * code.k)
    data = source.next_block(chunk.frames * code.k).reshape(chunk.frames, code.k)
    codewords = encode_systematic(code, data)
    llr = awgn_llr(codewords, chunk.ebno_db, code.rate, rng)
    decided = _decode_chunk(cfg, llr)
    wrong = decided != data
    return FlextPolarModels.ErrorStats(
        ebno_db=chunk.ebno_db,
        frames=chunk.frames,
        frame_errors=int(wrong.any(axis=1).sum()),
        bits=chunk.frames * code.k,
        bit_errors=int(wrong.sum()),
        wall_time_s=time.perf_counter() - started,
    )


def _chunks(cfg: FlextPolarModels.SimConfig, ebno_db: float, point_index: int) -> Iterator[_Chunk]:
    batch = cfg.batch_frames
    for chunk_index in range(math.ceil(cfg.stop.max_frames / batch)):
        first = chunk_index * batch
        yield _Chunk(
            cfg=cfg,
            ebno_db=ebno_db,
            point_index=point_index,
            chunk_index=chunk_index,
            first_frame=first,
            frames=min(batch, cfg.stop.max_frames - first),
        )


def _stop(stats: FlextPolarModels.ErrorStats, rule: FlextPolarModels.StopRule) -> bool:
    return stats.frame_errors >= rule.min_frame_errors or stats.frames >= rule.max_frames


def run_point(
    cfg: FlextPolarModels.SimConfig,
    ebno_db: float,
    point_index: int = 0,
) -> FlextPolarModels.ErrorStats:
    """Accumulate chunks in index order until the stop rule fires."""
    started = time.perf_counter()
    total = FlextPolarModels.ErrorStats(ebno_db=ebno_db)
    chunks = _chunks(cfg, ebno_db, point_index)
    if cfg.workers == 1:
        for chunk in chunks:
            total = total.merge(_run_chunk(chunk))
            if _stop(total, cfg.stop):
                break
    else:
        with futures.ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            done = False
            while not done:
                wave = [chunk for _, chunk in zip(range(cfg.workers), chunks, strict=False)]
                if not wave:
                    break
                # chunks computed past the stopping one are discarded
                for stats in executor.map(_run_chunk, wave):
                    total = total.merge(stats)
                    if _stop(total, cfg.stop):
                        done = True
                        break

    elapsed = time.perf_counter() - started
    total = total.model_copy(update={"wall_time_s": elapsed})
    logger.info(
        "simulation point finished",
        ebno_db=ebno_db,
        frames=total.frames,
        frame_errors=total.frame_errors,
        fer=total.fer,
        wall_time_s=round(elapsed, 3),
    )
    return total


def run_sweep(cfg: FlextPolarModels.SimConfig) -> list[FlextPolarModels.ErrorStats]:
    """``run_point`` over the Eb/No list; point p uses spawn key prefix p."""
    logger.info(
        "simulation sweep started",
        points=len(cfg.ebno_db_list),
        decoder=cfg.decoder.value,
        n=cfg.code.n,
        k=cfg.code.k,
        seed=cfg.seed,
    )
    return [run_point(cfg, ebno, index) for index, ebno in enumerate(cfg.ebno_db_list)]


def sweep_rows(stats: Sequence[FlextPolarModels.ErrorStats]) -> list[dict[str, float | int]]:
    """Curve rows with Wilson FER bounds and the uncoded BPSK reference."""
    rows: list[dict[str, float | int]] = []
    for point in stats:
        low, high = wilson_interval(point.frame_errors, point.frames)
        rows.append({
            "ebno_db": point.ebno_db,
            "frames": point.frames,
            "frame_errors": point.frame_errors,
            "bit_errors": point.bit_errors,
            "fer": point.fer,
            "ber": point.ber,
            "fer_ci_lo": low,
            "fer_ci_hi": high,
            "uncoded_ber": uncoded_ber(point.ebno_db),
        })
    return rows


def write_csv(stats: Sequence[FlextPolarModels.ErrorStats], path: Path) -> Path:
    """Write the curve CSV; floats use fixed ``%.6e`` formatting."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in sweep_rows(stats):
                writer.writerow(
                    f"{row[column]:.6e}" if isinstance(row[column], float) else str(row[column])
                    for column in CSV_COLUMNS
                )
    except OSError as exc:
        msg = FlextPolarMessages.FILE_WRITE_FAILED.format(path=path, error=exc)
        raise FlextPolarExceptions.FileError(
            msg, file_path=str(path), operation="write", cause=exc,
        ) from exc
    return path


__all__ = [
    "Lfsr",
    "awgn_llr",
    "lfsr_next_block",
    "noise_variance",
    "run_point",
    "run_sweep",
    "sweep_rows",
    "uncoded_ber",
    "wilson_interval",
    "write_csv",
]
