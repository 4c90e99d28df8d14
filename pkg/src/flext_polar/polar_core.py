"""Polar code construction and encoding.

Codes are built with Gaussian-approximation density evolution; encoding uses
the in-place butterfly form of x = u * G_N in natural (non bit-reversed) order.
All functions accept a single vector (N,) or a batch (B, N).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from flext_polar.constants import (
    GA_PHI_ALPHA,
    GA_PHI_BETA,
    GA_PHI_GAMMA,
    GA_PHI_SWITCH,
    MAX_BLOCK_LOG2,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import FlextPolarModels
from flext_polar.typings import BitArray
from flext_polar.utilities import FlextPolarUtilities

logger = FlextPolarUtilities.get_logger(__name__)

# =============================================================================
# GAUSSIAN APPROXIMATION
# =============================================================================


def _log_phi(x: float) -> float:
    """log of the Gaussian-approximation phi function, clipped to <= 0."""
    if x <= 0.0:
        return 0.0
    if x < GA_PHI_SWITCH:
        return min(0.0, GA_PHI_ALPHA * x**GA_PHI_BETA + GA_PHI_GAMMA)
    return 0.5 * math.log(math.pi / x) - x / 4.0 + math.log1p(-10.0 / (7.0 * x))


def _phi_inverse_from_log(target: float) -> float:
    """Smallest mean m with log phi(m) = target.

    Each branch is decreasing but phi jumps up at the switch, so targets above
    the low branch end are inverted in closed form and the rest by brentq on
    the high branch.
    """
    if target >= 0.0:
        return 0.0
    if target > GA_PHI_ALPHA * GA_PHI_SWITCH**GA_PHI_BETA + GA_PHI_GAMMA:
        return float(((target - GA_PHI_GAMMA) / GA_PHI_ALPHA) ** (1.0 / GA_PHI_BETA))
    upper = 2.0 * GA_PHI_SWITCH
    while _log_phi(upper) > target:
        upper *= 2.0
    return float(
        brentq(lambda x: _log_phi(x) - target, GA_PHI_SWITCH, upper, xtol=1e-12, rtol=1e-12),
    )


def _check_node_mean(mean: float) -> float:
    # 1 - (1 - phi)^2 evaluated in the log domain so large means do not underflow
    log_phi = _log_phi(mean)
    log_check = log_phi + math.log(2.0 - math.exp(log_phi))
    return _phi_inverse_from_log(log_check)


def channel_reliabilities(n: int, rate: float, design_snr_db: float) -> np.ndarray:
    """Mean LLR of every synthetic channel in natural index order.

    ``design_snr_db`` is Eb/No at code rate ``rate``. The most significant index
    bit selects the first polarization step: 0 = check (minus) channel,
    1 = variable (plus) channel.
    """
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (design_snr_db / 10.0))
    means = np.array([2.0 / sigma2])
    for _ in range(n):
        minus = np.array([_check_node_mean(float(m)) for m in means])
        means = np.stack([minus, 2.0 * means], axis=1).reshape(-1)
    return means


def construct_code(n: int, k: int, design_snr_db: float) -> FlextPolarModels.PolarCode:
    """Freeze the N-K least reliable channels; ties freeze the lower index first."""
    if not 1 <= n <= MAX_BLOCK_LOG2:
        msg = FlextPolarMessages.N_OUT_OF_RANGE.format(n=n, max_n=MAX_BLOCK_LOG2)
        raise FlextPolarExceptions.ParameterError(msg, parameter="n")
    block_length = 1 << n
    if not 1 <= k <= block_length:
        msg = FlextPolarMessages.K_OUT_OF_RANGE.format(k=k, block_length=block_length)
        raise FlextPolarExceptions.ParameterError(msg, parameter="K")

    reliabilities = channel_reliabilities(n, k / block_length, design_snr_db)
    order = np.lexsort((np.arange(block_length), reliabilities))
    mask = np.zeros(block_length, dtype=np.bool_)
    mask[order[: block_length - k]] = True

    logger.debug(
        "code constructed",
        n=n,
        k=k,
        design_snr_db=design_snr_db,
        frozen=block_length - k,
    )
    return FlextPolarModels.PolarCode(
        n=n,
        k=k,
        frozen_mask=tuple(bool(bit) for bit in mask),
        design_snr_db=design_snr_db,
    )


# =============================================================================
# ENCODING
# =============================================================================


def polar_transform(bits: BitArray) -> BitArray:
    """x = u * G^{(x)n} over GF(2) along the last axis; the transform is an involution."""
    x = np.array(bits, dtype=np.uint8, copy=True)
    length = x.shape[-1]
    lead = x.shape[:-1]
    half = 1
    while half < length:
        view = x.reshape(*lead, length // (2 * half), 2, half)
        view[..., 0, :] ^= view[..., 1, :]
        half *= 2
    return x


def _check_length(bits: BitArray, expected: int, what: str) -> None:
    if bits.ndim not in {1, 2} or bits.shape[-1] != expected:
        msg = FlextPolarMessages.LENGTH_MISMATCH.format(
            what=what, actual=bits.shape[-1] if bits.ndim else 0, expected=expected,
        )
        raise FlextPolarExceptions.ParameterError(msg, parameter=what)


def encode(code: FlextPolarModels.PolarCode, u: BitArray) -> BitArray:
    """Non-systematic encoding; frozen positions of u must be zero."""
    u_bits = np.asarray(u, dtype=np.uint8)
    _check_length(u_bits, code.block_length, "u")
    if u_bits[..., code.frozen_indices].any():
        raise FlextPolarExceptions.ParameterError(
            FlextPolarMessages.FROZEN_NOT_ZERO, parameter="u",
        )
    return polar_transform(u_bits)


def encode_systematic(code: FlextPolarModels.PolarCode, d: BitArray) -> BitArray:
    """Systematic encoding by the two-pass transform; x restricted to A equals d."""
    data = np.asarray(d, dtype=np.uint8)
    _check_length(data, code.k, "d")
    v = np.zeros((*data.shape[:-1], code.block_length), dtype=np.uint8)
    v[..., code.free_indices] = data
    y = polar_transform(v)
    y[..., code.frozen_indices] = 0
    return polar_transform(y)


__all__ = [
    "channel_reliabilities",
    "construct_code",
    "encode",
    "encode_systematic",
    "polar_transform",
]
