"""FLEXT-Polar Utilities - Consolidated Module.

Logging setup, bit packing, frozen-mask hex codec, frame file IO and small
parsing helpers shared by the API and the CLI.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import cast

import numpy as np
import structlog
from structlog.typing import FilteringBoundLogger

from flext_polar.constants import ENV_PREFIX, FlextPolarMessages
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.typings import BitArray, LlrArray

_DEFAULT_LOG_LEVEL = "WARNING"


class FlextPolarUtilities:
    """Utility class for FLEXT-Polar operations using static methods."""

    # =========================================================================
    # LOGGING
    # =========================================================================

    @staticmethod
    def configure_logging(level: str = _DEFAULT_LOG_LEVEL, *, json_output: bool = False) -> None:
        """Install the structlog pipeline writing key-value events to stderr."""
        levels = logging.getLevelNamesMapping()
        numeric_level = levels.get(level.upper(), logging.WARNING)
        renderer: structlog.typing.Processor = (
            structlog.processors.JSONRenderer()
            if json_output
            else structlog.dev.ConsoleRenderer(colors=False)
        )
        structlog.configure(
            processors=[
                structlog.contextvars.merge_contextvars,
                structlog.processors.add_log_level,
                structlog.processors.TimeStamper(fmt="iso", utc=True),
                renderer,
            ],
            wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
            # stdout carries JSON/CSV results
            logger_factory=structlog.PrintLoggerFactory(file=sys.__stderr__ or sys.stderr),
            cache_logger_on_first_use=False,
        )

    @staticmethod
    def get_logger(name: str) -> FilteringBoundLogger:
        """Return a lazily bound structlog logger tagged with the module name."""
        if not structlog.is_configured():
            FlextPolarUtilities.configure_logging(
                os.environ.get(f"{ENV_PREFIX}LOG_LEVEL", _DEFAULT_LOG_LEVEL),
            )
        return cast("FilteringBoundLogger", structlog.get_logger(logger=name))

    # =========================================================================
    # BIT PACKING AND MASK CODEC
    # =========================================================================

    @staticmethod
    def mask_to_hex(mask: Sequence[bool] | np.ndarray) -> str:
        """Encode a boolean mask as an MSB-first hex string of ceil(N/4) digits."""
        bits = np.asarray(mask, dtype=np.uint8)
        digits = (bits.size + 3) // 4
        return np.packbits(bits).tobytes().hex()[:digits]

    @staticmethod
    def hex_to_mask(text: str, length: int) -> tuple[bool, ...]:
        """Decode an MSB-first hex mask; padding bits must be zero."""
        digits = (length + 3) // 4
        cleaned = text.strip().lower()
        if len(cleaned) != digits:
            msg = f"frozen_mask has {len(cleaned)} hex digits, expected {digits}"
            raise FlextPolarExceptions.FormatError(msg)
        try:
            raw = bytes.fromhex(cleaned + "0" * (digits % 2))
        except ValueError as exc:
            msg = f"frozen_mask is not a hex string: {text!r}"
            raise FlextPolarExceptions.FormatError(msg, cause=exc) from exc
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
        if bits[length:].any():
            msg = "frozen_mask has nonzero padding bits"
            raise FlextPolarExceptions.FormatError(msg)
        return tuple(bool(bit) for bit in bits[:length])

    @staticmethod
    def pack_frames(bits: BitArray) -> bytes:
        """Pack (B, L) bit frames MSB-first, each frame padded to whole bytes."""
        frames = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
        return np.packbits(frames, axis=1).tobytes()

    @staticmethod
    def unpack_frames(data: bytes, frame_bits: int, *, source: str = "<bytes>") -> BitArray:
        """Inverse of pack_frames, returning a (B, frame_bits) array."""
        frame_bytes = (frame_bits + 7) // 8
        if len(data) % frame_bytes:
            msg = FlextPolarMessages.FRAME_SIZE_MISMATCH.format(
                path=source, size=len(data), frame_bytes=frame_bytes,
            )
            raise FlextPolarExceptions.FormatError(msg, file_path=source)
        packed = np.frombuffer(data, dtype=np.uint8).reshape(-1, frame_bytes)
        return np.unpackbits(packed, axis=1)[:, :frame_bits]

    # =========================================================================
    # FILE IO
    # =========================================================================

    @staticmethod
    def read_bytes(path: Path) -> bytes:
        """Read a whole file, mapping OS errors to FileError."""
        if not path.is_file():
            msg = FlextPolarMessages.FILE_NOT_FOUND.format(path=path)
            raise FlextPolarExceptions.FileError(msg, file_path=str(path), operation="read")
        try:
            return path.read_bytes()
        except OSError as exc:
            msg = FlextPolarMessages.FILE_READ_FAILED.format(path=path, error=exc)
            raise FlextPolarExceptions.FileError(
                msg, file_path=str(path), operation="read", cause=exc,
            ) from exc

    @staticmethod
    def write_bytes(path: Path, data: bytes) -> Path:
        """Write a whole file, creating parent directories."""
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as exc:
            msg = FlextPolarMessages.FILE_WRITE_FAILED.format(path=path, error=exc)
            raise FlextPolarExceptions.FileError(
                msg, file_path=str(path), operation="write", cause=exc,
            ) from exc
        return path

    @staticmethod
    def read_json(path: Path) -> dict[str, object]:
        """Load a JSON object from disk."""
        raw = FlextPolarUtilities.read_bytes(path)
        try:
            data = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            msg = f"{path} is not valid JSON: {exc}"
            raise FlextPolarExceptions.FormatError(msg, file_path=str(path), cause=exc) from exc
        if not isinstance(data, dict):
            msg = f"{path} must hold a JSON object"
            raise FlextPolarExceptions.FormatError(msg, file_path=str(path))
        return cast("dict[str, object]", data)

    @staticmethod
    def write_json(path: Path, data: Mapping[str, object] | Sequence[object]) -> Path:
        """Write JSON with sorted keys so identical inputs give identical bytes."""
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        return FlextPolarUtilities.write_bytes(path, text.encode("utf-8"))

    @staticmethod
    def write_rows_csv(path: Path, rows: Sequence[Mapping[str, object]]) -> Path:
        """Write dict rows as CSV; the header follows the first row's key order."""
        buffer = io.StringIO()
        if rows:
            writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return FlextPolarUtilities.write_bytes(path, buffer.getvalue().encode("utf-8"))

    @staticmethod
    def read_llr_frames(path: Path, block_length: int) -> LlrArray:
        """Read little-endian float32 LLR frames into a (B, N) float64 array."""
        raw = FlextPolarUtilities.read_bytes(path)
        frame_bytes = 4 * block_length
        if len(raw) % frame_bytes:
            msg = FlextPolarMessages.FRAME_SIZE_MISMATCH.format(
                path=path, size=len(raw), frame_bytes=frame_bytes,
            )
            raise FlextPolarExceptions.FormatError(msg, file_path=str(path))
        values = np.frombuffer(raw, dtype="<f4").astype(np.float64)
        if not np.isfinite(values).all():
            msg = f"{path} contains non-finite LLR values"
            raise FlextPolarExceptions.FormatError(msg, file_path=str(path))
        return values.reshape(-1, block_length)

    @staticmethod
    def llr_frames_to_bytes(llr: LlrArray) -> bytes:
        """Serialize LLR frames as little-endian float32."""
        return np.asarray(llr, dtype="<f4").tobytes()

    @staticmethod
    def file_digest(path: Path) -> str:
        """sha256 hex digest of a file."""
        return hashlib.sha256(FlextPolarUtilities.read_bytes(path)).hexdigest()

    # =========================================================================
    # ARGUMENT PARSING
    # =========================================================================

    @staticmethod
    def parse_ebno_list(spec: str) -> tuple[float, ...]:
        """Parse "start:step:stop" (inclusive) or a comma separated list of dB values."""
        text = spec.strip()
        try:
            if ":" in text:
                start, step, stop = (float(part) for part in text.split(":"))
                if step <= 0 or stop < start:
                    msg = FlextPolarMessages.INVALID_EBNO_RANGE.format(
                        spec=spec, reason="need step > 0 and stop >= start",
                    )
                    raise FlextPolarExceptions.ParameterError(msg, parameter="ebno")
                count = math.floor((stop - start) / step + 1e-9) + 1
                return tuple(round(start + i * step, 10) for i in range(count))
            values = tuple(float(part) for part in text.split(",") if part.strip())
        except ValueError as exc:
            msg = FlextPolarMessages.INVALID_EBNO_RANGE.format(spec=spec, reason=exc)
            raise FlextPolarExceptions.ParameterError(msg, parameter="ebno", cause=exc) from exc
        if not values:
            msg = FlextPolarMessages.INVALID_EBNO_RANGE.format(spec=spec, reason="empty")
            raise FlextPolarExceptions.ParameterError(msg, parameter="ebno")
        return values

    @staticmethod
    def parse_number_list(spec: str, *, parameter: str) -> tuple[float, ...]:
        """Parse a comma separated list of numbers."""
        try:
            values = tuple(float(part) for part in spec.split(",") if part.strip())
        except ValueError as exc:
            msg = f"Invalid list for {parameter}: {spec!r}"
            raise FlextPolarExceptions.ParameterError(msg, parameter=parameter, cause=exc) from exc
        if not values:
            msg = f"Empty list for {parameter}"
            raise FlextPolarExceptions.ParameterError(msg, parameter=parameter)
        return values


__all__ = ["FlextPolarUtilities"]
