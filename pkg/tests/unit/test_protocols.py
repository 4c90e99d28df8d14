"""Unit tests for FLEXT-Polar protocols and interfaces."""

from __future__ import annotations

import numpy as np

from flext_polar import (
    FlextPolarDecoderProtocol,
    FlextPolarKernelProtocol,
    FlextPolarModels,
    FloatKernels,
    QuantizedKernels,
    decode_fast,
    decode_sc,
    default_schedule,
)
from tests.polar_helpers import irrational_llrs


class TestProtocolDefinitions:
    """Test protocol definitions are properly defined."""

    def test_kernel_protocol_methods(self) -> None:
        """Test FlextPolarKernelProtocol declares the node arithmetic."""
        assert hasattr(FlextPolarKernelProtocol, "f")
        assert hasattr(FlextPolarKernelProtocol, "g")
        assert hasattr(FlextPolarKernelProtocol, "leaf")

    def test_float_kernels_satisfy_protocol(self) -> None:
        """Test the real-valued kernels are structural kernel implementations."""
        assert isinstance(FloatKernels(), FlextPolarKernelProtocol)

    def test_quantized_kernels_satisfy_protocol(self) -> None:
        """Test the fixed-point kernels are structural kernel implementations."""
        formats = default_schedule(4, step=0.5).stage_formats(0.5)
        kernels = QuantizedKernels(formats, FlextPolarModels.SaturationStats())
        assert isinstance(kernels, FlextPolarKernelProtocol)

    def test_decoders_satisfy_protocol(self, code_8_4: FlextPolarModels.PolarCode) -> None:
        """Test both float decoders share the decoder call shape."""
        decoders: list[FlextPolarDecoderProtocol] = [decode_sc, decode_fast]
        llr = irrational_llrs(8) * np.array([1, -1, 1, 1, -1, 1, -1, 1])
        results = [decoder(code_8_4, llr, systematic=False) for decoder in decoders]
        assert all(isinstance(decoder, FlextPolarDecoderProtocol) for decoder in decoders)
        assert np.array_equal(results[0], results[1])
