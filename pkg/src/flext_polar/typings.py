"""FLEXT-Polar - Type System.

Copyright (c) 2025 FLEXT Team. All rights reserved.
SPDX-License-Identifier: MIT

Array aliases shared by the coding, decoding and simulation modules. Every
vector type accepts a single frame of shape (N,) or a batch of shape (B, N).
"""

from __future__ import annotations

from typing import TypeAlias

import numpy as np
import numpy.typing as npt

# Hard bits, values in {0, 1}
BitArray: TypeAlias = npt.NDArray[np.uint8]
# Real LLRs, positive favors bit 0
LlrArray: TypeAlias = npt.NDArray[np.float64]
# Sign bits of sign-magnitude LLRs, True = negative
SignArray: TypeAlias = npt.NDArray[np.bool_]
# Magnitudes of sign-magnitude LLRs in LSB units
MagnitudeArray: TypeAlias = npt.NDArray[np.int32]
BoolMask: TypeAlias = npt.NDArray[np.bool_]
IndexArray: TypeAlias = npt.NDArray[np.intp]

__all__ = [
    "BitArray",
    "BoolMask",
    "IndexArray",
    "LlrArray",
    "MagnitudeArray",
    "SignArray",
]
