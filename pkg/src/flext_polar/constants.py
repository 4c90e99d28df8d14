"""FLEXT-Polar constants.

Copyright (c) 2025 FLEXT Team. All rights reserved.
SPDX-License-Identifier: MIT

"""

from __future__ import annotations

from typing import Final

# =============================================================================
# CODE CONSTRUCTION
# =============================================================================

DEFAULT_BLOCK_LOG2: Final[int] = 10
DEFAULT_INFO_LENGTH: Final[int] = 854
DEFAULT_DESIGN_SNR_DB: Final[float] = 6.0
MAX_BLOCK_LOG2: Final[int] = 20

# Gaussian approximation of the density-evolution phi function
GA_PHI_ALPHA: Final[float] = -0.4527
GA_PHI_BETA: Final[float] = 0.86
GA_PHI_GAMMA: Final[float] = 0.0218
GA_PHI_SWITCH: Final[float] = 10.0

# =============================================================================
# SHORTCUT NODES
# =============================================================================

UNLIMITED_SHORTCUT_LENGTH: Final[int] = 1 << 16
DEFAULT_REPETITION_CAP: Final[int] = 16
DEFAULT_SPC_CAP: Final[int] = 8

# =============================================================================
# QUANTIZATION
# =============================================================================

DEFAULT_CHANNEL_BITS: Final[int] = 5
MIN_FORMAT_BITS: Final[int] = 1
MAX_FORMAT_BITS: Final[int] = 8
# Standard deviations of the channel LLR covered by the channel format
CHANNEL_RANGE_SIGMAS: Final[float] = 3.0
Q8_SIGN_BIT: Final[int] = 0x80
Q8_MAGNITUDE_MASK: Final[int] = 0x0F

# =============================================================================
# ARCHITECTURE MODEL
# =============================================================================

REFERENCE_CLOCK_HZ: Final[float] = 1.2e9
DEFAULT_CALIBRATE_TARGET: Final[int] = 124
T_IO_OVERRIDE_TOLERANCE: Final[float] = 0.01

DEFAULT_F_LAYER_DELAY: Final[float] = 1.0
DEFAULT_G_LAYER_DELAY: Final[float] = 1.2
DEFAULT_DECISION_DELAY: Final[float] = 0.5
DEFAULT_FEEDBACK_XOR_DELAY: Final[float] = 0.3
DEFAULT_REPETITION_SLOPE: Final[float] = 0.5
DEFAULT_REPETITION_OFFSET: Final[float] = 0.5
DEFAULT_SPC_SLOPE: Final[float] = 0.5
DEFAULT_SPC_OFFSET: Final[float] = 1.0

# (cores, core clock MHz, pipeline depth)
ASIC_PRESETS: Final[tuple[tuple[int, float, int], ...]] = (
    (1, 1200.0, 124),
    (2, 600.0, 59),
    (4, 300.0, 25),
    (8, 150.0, 13),
)
FPGA_PRESETS: Final[tuple[tuple[int, float, int], ...]] = (
    (2, 50.0, 25),
    (4, 30.0, 25),
    (8, 30.0, 12),
)
THETA_GRID_DEG: Final[tuple[float, ...]] = (0.0, 90.0, 180.0, 270.0)

# =============================================================================
# LINK SIMULATION
# =============================================================================

DEFAULT_LFSR_TAPS: Final[tuple[int, int]] = (31, 28)
DEFAULT_LFSR_SEED: Final[int] = 0x1ACE_B00C
DEFAULT_MIN_FRAME_ERRORS: Final[int] = 100
DEFAULT_MAX_FRAMES: Final[int] = 100_000_000
DEFAULT_BATCH_FRAMES: Final[int] = 500
DEFAULT_SEED: Final[int] = 0
WILSON_CONFIDENCE: Final[float] = 0.95

CSV_COLUMNS: Final[tuple[str, ...]] = (
    "ebno_db",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "fer_ci_lo",
    "fer_ci_hi",
    "uncoded_ber",
)

# =============================================================================
# CLI EXIT CODES
# =============================================================================

EXIT_OK: Final[int] = 0
EXIT_FAILURE: Final[int] = 1
EXIT_USAGE: Final[int] = 2
EXIT_CONFIG: Final[int] = 3
EXIT_IO: Final[int] = 4
EXIT_INFEASIBLE: Final[int] = 5

# =============================================================================
# LIBRARY METADATA
# =============================================================================

LIBRARY_NAME: Final[str] = "flext-polar"
LIBRARY_VERSION: Final[str] = "0.9.0"
LIBRARY_DESCRIPTION: Final[str] = "Polar Code SC Decoding and Multicore Pipeline Modeling"
ENV_PREFIX: Final[str] = "FLEXT_POLAR_"

# =============================================================================
# FLEXT-POLAR MESSAGES
# =============================================================================


class FlextPolarMessages:
    """Message templates shared by models, services and the CLI."""

    K_OUT_OF_RANGE: Final[str] = "K={k} must lie in [1, {block_length}]"
    N_OUT_OF_RANGE: Final[str] = "n={n} must lie in [1, {max_n}]"
    LENGTH_MISMATCH: Final[str] = "{what} has length {actual}, expected {expected}"
    FROZEN_COUNT_MISMATCH: Final[str] = (
        "frozen mask freezes {frozen} positions, expected {expected}"
    )
    FROZEN_NOT_ZERO: Final[str] = "frozen positions of u must be zero"
    CAP_NOT_POWER_OF_TWO: Final[str] = (
        "shortcut cap for {kind} must be a power of two >= {minimum}, got {cap}"
    )
    SHORTCUTS_INCONSISTENT: Final[str] = "shortcut list does not match the code: {reason}"
    SCHEDULE_DEPTH_MISMATCH: Final[str] = (
        "quantization schedule covers {actual} stage depths, code needs {expected}"
    )
    UNKNOWN_NODE_KIND: Final[str] = "delay model has no entry for node kind {kind!r}"
    NODE_EXCEEDS_BUDGET: Final[str] = (
        "node {node} has delay {delay:.4f} above clock budget {budget:.4f}"
    )
    CALIBRATION_TARGET: Final[str] = (
        "calibration target {target} exceeds the {levels} dependency levels of the graph"
    )
    T_IO_MISMATCH: Final[str] = (
        "t_io override {t_io:.6g} s differs from 1/(P*f_c)={nominal:.6g} s by more than 1%"
    )
    ZERO_LFSR_STATE: Final[str] = "LFSR state must be nonzero"
    LFSR_STATE_TOO_WIDE: Final[str] = "LFSR state {state:#x} exceeds {width} bits"
    FILE_NOT_FOUND: Final[str] = "File not found: {path}"
    FILE_READ_FAILED: Final[str] = "Failed to read {path}: {error}"
    FILE_WRITE_FAILED: Final[str] = "Failed to write {path}: {error}"
    FRAME_SIZE_MISMATCH: Final[str] = (
        "{path} holds {size} bytes, not a multiple of the {frame_bytes}-byte frame"
    )
    INVALID_EBNO_RANGE: Final[str] = "Invalid Eb/No list {spec!r}: {reason}"
