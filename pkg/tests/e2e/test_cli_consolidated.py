"""Consolidated CLI tests for FLEXT-Polar - real command execution."""

from __future__ import annotations

import json
import sys
from collections.abc import Generator
from contextlib import contextmanager
from pathlib import Path

import pytest
from click.testing import CliRunner

from flext_polar import cli_main
from flext_polar.cli import cli


@contextmanager
def argv_context(argv: list[str]) -> Generator[None]:
    """Context manager to temporarily replace sys.argv."""
    old_argv = sys.argv
    try:
        sys.argv = argv
        yield
    finally:
        sys.argv = old_argv


class TestCLIConsolidated:
    """CLI functionality through the click entry point."""

    @pytest.fixture
    def runner(self) -> CliRunner:
        """Click test runner."""
        return CliRunner()

    def test_main_version(self) -> None:
        """Test the console script prints its version and exits 0."""
        with argv_context(["flext-polar", "--version"]), pytest.raises(SystemExit) as caught:
            cli_main()
        assert caught.value.code == 0

    def test_main_usage_error(self) -> None:
        """Test unknown subcommands exit with 2."""
        with argv_context(["flext-polar", "no-such-command"]), pytest.raises(SystemExit) as caught:
            cli_main()
        assert caught.value.code == 2

    def test_help_without_subcommand(self, runner: CliRunner) -> None:
        """Test the bare group prints help."""
        result = runner.invoke(cli, [])
        assert result.exit_code == 0
        assert "sweep-arch" in result.output

    def test_construct(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test construct writes the (1024, 854) code and a manifest."""
        result = runner.invoke(
            cli,
            ["--out-dir", str(tmp_path), "construct", "--n", "10", "--k", "854", "--design-snr", "6.0"],
        )
        assert result.exit_code == 0, result.output
        code = json.loads((tmp_path / "code_n10_k854.json").read_text(encoding="utf-8"))
        assert code["n"] == 10
        assert code["K"] == 854
        assert sum(bin(int(digit, 16)).count("1") for digit in code["frozen_mask"]) == 170
        manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "construct"
        assert manifest["outputs"][0]["path"].endswith("code_n10_k854.json")
        assert len(manifest["outputs"][0]["sha256"]) == 64

    def test_construct_smallest_code(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the (2, 1) code freezes index 0."""
        target = tmp_path / "code.json"
        result = runner.invoke(
            cli, ["--out-dir", str(tmp_path), "construct", "--n", "1", "--k", "1", "-o", str(target)],
        )
        assert result.exit_code == 0, result.output
        assert json.loads(target.read_text(encoding="utf-8"))["frozen_mask"] == "8"

    def test_construct_k_too_large(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test K > N exits 2 without writing a file."""
        result = runner.invoke(cli, ["--out-dir", str(tmp_path), "construct", "--n", "3", "--k", "9"])
        assert result.exit_code == 2
        assert "Error:" in result.output
        assert not list(tmp_path.iterdir())

    def test_bad_config_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test unknown settings exit with 3."""
        config = tmp_path / "settings.json"
        config.write_text(json.dumps({"max_frame": 10}), encoding="utf-8")
        result = runner.invoke(cli, ["--config", str(config), "construct", "--n", "2", "--k", "2"])
        assert result.exit_code == 3

    def test_missing_code_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a missing input exits with 4."""
        result = runner.invoke(
            cli,
            [
                "--out-dir",
                str(tmp_path),
                "decode",
                "--code",
                str(tmp_path / "absent.json"),
                "--input",
                str(tmp_path / "absent.llr"),
            ],
        )
        assert result.exit_code == 4

    def test_malformed_code_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a malformed code file exits with 4."""
        code = tmp_path / "code.json"
        code.write_text('{"n": 2, "K": 1}', encoding="utf-8")
        data = tmp_path / "data.bin"
        data.write_bytes(bytes(1))
        result = runner.invoke(
            cli, ["--out-dir", str(tmp_path), "encode", "--code", str(code), "--input", str(data)],
        )
        assert result.exit_code == 4

    def test_infeasible_clock(self, runner: CliRunner) -> None:
        """Test a clock faster than any single node exits with 5."""
        result = runner.invoke(cli, ["arch", "--cores", "1", "--core-mhz", "10000000"])
        assert result.exit_code == 5
        assert "Error:" in result.output

    def test_bad_ebno_list(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a malformed Eb/No list exits with 2."""
        code = tmp_path / "code.json"
        args = ["--out-dir", str(tmp_path), "construct", "--n", "3", "--k", "4", "-o", str(code)]
        assert runner.invoke(cli, args).exit_code == 0
        result = runner.invoke(
            cli, ["--out-dir", str(tmp_path), "simulate", "--code", str(code), "--ebno", "5:1:4"],
        )
        assert result.exit_code == 2


class TestArchCommands:
    """Architecture analysis from the command line."""

    @pytest.fixture
    def runner(self) -> CliRunner:
        """Click test runner."""
        return CliRunner()

    def _report(self, runner: CliRunner, args: list[str]) -> dict[str, float]:
        result = runner.invoke(cli, ["arch", *args])
        assert result.exit_code == 0, result.output
        report: dict[str, float] = json.loads(result.output)
        return report

    def test_four_cores(self, runner: CliRunner) -> None:
        """Test the 4-core latency interval and throughput."""
        report = self._report(runner, ["--cores", "4", "--core-mhz", "300", "--depth", "25", "--k", "854"])
        assert report["latency_ns_min"] == pytest.approx(89.9, abs=0.15)
        assert report["latency_ns_max"] == pytest.approx(92.5, abs=0.1)
        assert report["info_gbps"] == pytest.approx(1024.8)

    def test_eight_cores_at_quoted_period(self, runner: CliRunner) -> None:
        """Test the 8-core interval with the 0.833 ns IO period."""
        report = self._report(
            runner,
            ["--cores", "8", "--core-mhz", "150", "--depth", "12", "--t-io-ns", "0.833"],
        )
        assert report["latency_ns_min"] == pytest.approx(93.296)
        assert report["latency_ns_max"] == pytest.approx(99.127)

    def test_single_core(self, runner: CliRunner) -> None:
        """Test one core has no phase term."""
        report = self._report(runner, ["--cores", "1", "--core-mhz", "1200", "--depth", "124"])
        assert report["latency_ns_min"] == pytest.approx(126 / 1.2)
        assert report["latency_ns_max"] == pytest.approx(126 / 1.2)
        assert report["info_gbps"] == pytest.approx(1024.8)

    def test_period_outside_tolerance(self, runner: CliRunner) -> None:
        """Test an IO period far from 1/(P f_c) is a parameter error."""
        result = runner.invoke(
            cli, ["arch", "--cores", "4", "--core-mhz", "300", "--depth", "25", "--t-io-ns", "1.0"],
        )
        assert result.exit_code == 2

    def test_report_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test --output writes the report and a manifest."""
        target = tmp_path / "arch.json"
        result = runner.invoke(
            cli,
            [
                "--out-dir",
                str(tmp_path),
                "arch",
                "--cores",
                "2",
                "--core-mhz",
                "600",
                "--depth",
                "59",
                "-o",
                str(target),
            ],
        )
        assert result.exit_code == 0, result.output
        assert json.loads(target.read_text(encoding="utf-8"))["depth"] == 59
        assert (tmp_path / "manifest.json").is_file()

    def test_sweep_presets(self, runner: CliRunner) -> None:
        """Test every ASIC preset runs at 1.2 GHz IO."""
        result = runner.invoke(cli, ["sweep-arch", "--preset", "asic"])
        assert result.exit_code == 0, result.output
        rows = json.loads(result.output)
        assert [row["cores"] for row in rows] == [1, 2, 4, 8]
        assert [row["io_mhz"] for row in rows] == pytest.approx([1200.0] * 4)
        assert [row["depth"] for row in rows] == [124, 59, 25, 13]

    def test_sweep_grid_csv(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a custom grid written as CSV rows."""
        target = tmp_path / "sweep.csv"
        result = runner.invoke(
            cli,
            [
                "--out-dir",
                str(tmp_path),
                "sweep-arch",
                "--cores",
                "1,2",
                "--core-mhz",
                "300,600",
                "--depth",
                "20",
                "-o",
                str(target),
            ],
        )
        assert result.exit_code == 0, result.output
        assert len(target.read_text(encoding="utf-8").splitlines()) == 5

    def test_sweep_needs_grid_or_preset(self, runner: CliRunner) -> None:
        """Test a grid without clocks is a usage error."""
        result = runner.invoke(cli, ["sweep-arch", "--cores", "1"])
        assert result.exit_code == 2
