"""Tests for FlextPolarUtilities."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from flext_polar import FlextPolarExceptions, FlextPolarUtilities


class TestMaskCodec:
    """Test the frozen-mask hex codec."""

    def test_short_mask(self) -> None:
        """Test masks shorter than one byte."""
        assert FlextPolarUtilities.mask_to_hex([True, False]) == "8"
        assert FlextPolarUtilities.hex_to_mask("8", 2) == (True, False)

    def test_byte_aligned_mask(self) -> None:
        """Test an MSB-first byte-aligned mask."""
        mask = [True, True, True, False, True, False, False, False]
        assert FlextPolarUtilities.mask_to_hex(mask) == "e8"
        assert FlextPolarUtilities.hex_to_mask("E8", 8) == tuple(mask)

    @pytest.mark.parametrize(
        ("text", "length"),
        [("d", 2), ("zz", 8), ("abc", 8), ("", 4)],
    )
    def test_invalid_masks(self, text: str, length: int) -> None:
        """Test padding, alphabet and length errors."""
        with pytest.raises(FlextPolarExceptions.FormatError):
            FlextPolarUtilities.hex_to_mask(text, length)


class TestFrameIO:
    """Test frame packing and file IO."""

    def test_pack_pads_each_frame(self) -> None:
        """Test every frame starts on a byte boundary."""
        bits = np.array([[1, 0, 1, 1, 0, 0, 0, 0, 1, 1], [0] * 9 + [1]], dtype=np.uint8)
        data = FlextPolarUtilities.pack_frames(bits)
        assert data == bytes([0xB0, 0xC0, 0x00, 0x40])
        assert np.array_equal(FlextPolarUtilities.unpack_frames(data, 10), bits)

    def test_unpack_rejects_partial_frames(self) -> None:
        """Test trailing bytes are a format error."""
        with pytest.raises(FlextPolarExceptions.FormatError):
            FlextPolarUtilities.unpack_frames(bytes(3), 10)

    def test_llr_frames(self, tmp_path: Path) -> None:
        """Test float32 LLR frames."""
        llr = np.array([[1.5, -2.0, 0.25, 8.0], [-1.0, 0.0, 3.0, -4.5]])
        path = FlextPolarUtilities.write_bytes(
            tmp_path / "frames.llr", FlextPolarUtilities.llr_frames_to_bytes(llr),
        )
        assert np.array_equal(FlextPolarUtilities.read_llr_frames(path, 4), llr)
        with pytest.raises(FlextPolarExceptions.FormatError):
            FlextPolarUtilities.read_llr_frames(path, 3)

    def test_llr_frames_must_be_finite(self, tmp_path: Path) -> None:
        """Test NaN LLRs are rejected."""
        path = tmp_path / "nan.llr"
        path.write_bytes(np.array([np.nan, 1.0], dtype="<f4").tobytes())
        with pytest.raises(FlextPolarExceptions.FormatError):
            FlextPolarUtilities.read_llr_frames(path, 2)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test reading a missing file raises FileError."""
        with pytest.raises(FlextPolarExceptions.FileError) as caught:
            FlextPolarUtilities.read_bytes(tmp_path / "absent.bin")
        assert caught.value.exit_code == 4

    def test_json_round_trip_is_stable(self, tmp_path: Path) -> None:
        """Test JSON output is key-sorted."""
        path = FlextPolarUtilities.write_json(tmp_path / "out" / "data.json", {"b": 1, "a": [1, 2]})
        assert path.read_text(encoding="utf-8").index('"a"') < path.read_text(encoding="utf-8").index('"b"')
        assert FlextPolarUtilities.read_json(path) == {"a": [1, 2], "b": 1}

    @pytest.mark.parametrize("content", ["[1, 2]", "{broken"])
    def test_json_must_be_an_object(self, tmp_path: Path, content: str) -> None:
        """Test non-object and malformed JSON."""
        path = tmp_path / "data.json"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(FlextPolarExceptions.FormatError):
            FlextPolarUtilities.read_json(path)

    def test_rows_csv(self, tmp_path: Path) -> None:
        """Test dict rows become a CSV with the first row's header."""
        rows = [{"cores": 1, "info_gbps": 1024.8}, {"cores": 2, "info_gbps": 1024.8}]
        path = FlextPolarUtilities.write_rows_csv(tmp_path / "arch.csv", rows)
        assert path.read_text(encoding="utf-8") == "cores,info_gbps\n1,1024.8\n2,1024.8\n"

    def test_digest(self, tmp_path: Path) -> None:
        """Test sha256 digests of files."""
        path = tmp_path / "empty"
        path.write_bytes(b"")
        assert FlextPolarUtilities.file_digest(path).startswith("e3b0c442")


class TestArgumentParsing:
    """Test Eb/No and number list parsing."""

    def test_range(self) -> None:
        """Test inclusive start:step:stop ranges."""
        assert FlextPolarUtilities.parse_ebno_list("4.0:0.25:5.0") == (4.0, 4.25, 4.5, 4.75, 5.0)
        assert FlextPolarUtilities.parse_ebno_list("0:0.1:0.3") == (0.0, 0.1, 0.2, 0.3)

    def test_list(self) -> None:
        """Test comma separated lists."""
        assert FlextPolarUtilities.parse_ebno_list("1, 2.5") == (1.0, 2.5)

    @pytest.mark.parametrize("spec", ["5:1:4", "1:0:2", "a,b", "", "1:2"])
    def test_invalid_ebno(self, spec: str) -> None:
        """Test malformed Eb/No specifications."""
        with pytest.raises(FlextPolarExceptions.ParameterError):
            FlextPolarUtilities.parse_ebno_list(spec)

    def test_number_list(self) -> None:
        """Test number lists and their errors."""
        assert FlextPolarUtilities.parse_number_list("1,2,4", parameter="cores") == (1.0, 2.0, 4.0)
        with pytest.raises(FlextPolarExceptions.ParameterError):
            FlextPolarUtilities.parse_number_list("1,x", parameter="cores")
        with pytest.raises(FlextPolarExceptions.ParameterError):
            FlextPolarUtilities.parse_number_list(" , ", parameter="cores")


class TestLogging:
    """Test structlog configuration."""

    def test_logger_is_bound(self) -> None:
        """Test get_logger returns a usable logger."""
        FlextPolarUtilities.configure_logging("DEBUG")
        logger = FlextPolarUtilities.get_logger("tests")
        logger.debug("event", value=1)

    def test_json_output(self, capfd: pytest.CaptureFixture[str]) -> None:
        """Test JSON rendering writes one object per event to stderr."""
        FlextPolarUtilities.configure_logging("INFO", json_output=True)
        FlextPolarUtilities.get_logger("tests").info("point finished", frames=10)
        line = capfd.readouterr().err.strip().splitlines()[-1]
        assert json.loads(line)["frames"] == 10
        FlextPolarUtilities.configure_logging("WARNING")
