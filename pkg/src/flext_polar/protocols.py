"""FLEXT-Polar Protocols.

Structural interfaces shared by the float and fixed-point SC decoders.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

from flext_polar.typings import BitArray, LlrArray

if TYPE_CHECKING:
    from flext_polar.models import FlextPolarModels
    from flext_polar.sc_decoder import SegmentNode


@runtime_checkable
class FlextPolarKernelProtocol[L](Protocol):
    """Node arithmetic plugged into the segment-tree SC executor.

    ``L`` is the batch LLR container of one tree node: a float array for the
    reference decoder, a sign/magnitude pair for the quantized one.
    """

    def f(self, alpha: L, depth: int) -> L:
        """LLRs of the left child, stored at ``depth``."""
        ...

    def g(self, alpha: L, feedback: BitArray, depth: int) -> L:
        """LLRs of the right child given the left child's partial sums."""
        ...

    def leaf(self, alpha: L, node: SegmentNode) -> tuple[BitArray, BitArray]:
        """Resolve a leaf: returns (x_hat, u_hat) for its segment."""
        ...


@runtime_checkable
class FlextPolarDecoderProtocol(Protocol):
    """A batch decoder mapping channel LLR frames to data decisions."""

    def __call__(
        self,
        code: FlextPolarModels.PolarCode,
        llr: LlrArray,
        *,
        systematic: bool = False,
    ) -> BitArray:
        """Decode (N,) or (B, N) LLRs into (K,) or (B, K) bits."""
        ...


__all__ = ["FlextPolarDecoderProtocol", "FlextPolarKernelProtocol"]
