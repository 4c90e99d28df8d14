"""Tests for the PRBS source, channel model and Monte-Carlo loop."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import norm

from flext_polar import (
    CSV_COLUMNS,
    DecoderVariant,
    FlextPolarExceptions,
    FlextPolarModels,
    Lfsr,
    QLlrBatch,
    awgn_llr,
    channel_format,
    default_schedule,
    lfsr_next_block,
    link_sim,
    noise_variance,
    quantize_array,
    run_point,
    run_sweep,
    sweep_rows,
    uncoded_ber,
    wilson_interval,
    write_csv,
)

PRBS7 = (7, 6)


def sim_config(
    code: FlextPolarModels.PolarCode,
    ebno: tuple[float, ...] = (2.0,),
    **overrides: object,
) -> FlextPolarModels.SimConfig:
    values: dict[str, object] = {
        "code": code,
        "ebno_db_list": ebno,
        "seed": 1234,
        "batch_frames": 50,
        "stop": FlextPolarModels.StopRule(min_frame_errors=20, max_frames=2000),
    }
    values.update(overrides)
    return FlextPolarModels.SimConfig.model_validate(values)


def counts(stats: FlextPolarModels.ErrorStats) -> tuple[int, int, int, int]:
    return stats.frames, stats.frame_errors, stats.bits, stats.bit_errors


@pytest.mark.unit
class TestLfsr:
    """Fibonacci LFSR data source."""

    def test_prbs7_period(self) -> None:
        bits = Lfsr(PRBS7, 1).next_block(254)
        assert np.array_equal(bits[:127], bits[127:])
        assert int(bits[:127].sum()) == 64

    def test_zero_length_block_keeps_state(self) -> None:
        bits, state = lfsr_next_block(0x55, 0, PRBS7)
        assert bits.size == 0
        assert state == 0x55

    def test_functional_form_matches_object(self) -> None:
        first, state = lfsr_next_block(0x1ACE_B00C, 100)
        second, _ = lfsr_next_block(state, 50)
        stream = Lfsr((31, 28), 0x1ACE_B00C).next_block(150)
        assert np.array_equal(np.concatenate([first, second]), stream)

    def test_split_blocks_match_one_block(self) -> None:
        whole = Lfsr(PRBS7, 3).next_block(300)
        lfsr = Lfsr(PRBS7, 3)
        parts = [lfsr.next_block(size) for size in (1, 5, 6, 7, 81, 200)]
        assert np.array_equal(np.concatenate(parts), whole)

    @pytest.mark.parametrize("steps", [0, 1, 28, 31, 1000, 854 * 37])
    def test_jump_equals_skipping(self, steps: int) -> None:
        skipped = Lfsr((31, 28), 0x1ACE_B00C).next_block(steps + 64)[steps:]
        jumped = Lfsr((31, 28), 0x1ACE_B00C).jump(steps).next_block(64)
        assert np.array_equal(jumped, skipped)

    @pytest.mark.parametrize("state", [0, 1 << 7])
    def test_invalid_state(self, state: int) -> None:
        with pytest.raises(FlextPolarExceptions.ParameterError):
            Lfsr(PRBS7, state)

    def test_wide_state_names_the_register_width(self) -> None:
        with pytest.raises(FlextPolarExceptions.ParameterError, match="exceeds 7 bits"):
            Lfsr(PRBS7, 1 << 7)
        with pytest.raises(FlextPolarExceptions.ParameterError, match="nonzero"):
            Lfsr(PRBS7, 0)

    def test_config_rejects_zero_seed(self) -> None:
        with pytest.raises(FlextPolarExceptions.ConfigurationError):
            FlextPolarModels.LfsrConfig(seed=0)


@pytest.mark.unit
class TestChannel:
    """AWGN channel, uncoded reference and confidence bounds."""

    def test_unit_noise_variance(self) -> None:
        assert noise_variance(0.0, 0.5) == pytest.approx(1.0)

    def test_llr_moments(self, rng: np.random.Generator) -> None:
        llr = awgn_llr(np.zeros(200_000, dtype=np.uint8), 0.0, 0.5, rng)
        assert float(llr.mean()) == pytest.approx(2.0, abs=0.03)
        assert float(llr.var()) == pytest.approx(4.0, rel=0.02)

    def test_one_bits_map_to_negative_mean(self, rng: np.random.Generator) -> None:
        llr = awgn_llr(np.ones(50_000, dtype=np.uint8), 3.0, 0.5, rng)
        assert float(llr.mean()) < 0

    @pytest.mark.parametrize("rate", [0.0, 1.5])
    def test_rate_outside_range(self, rate: float, rng: np.random.Generator) -> None:
        with pytest.raises(FlextPolarExceptions.ParameterError):
            awgn_llr(np.zeros(4, dtype=np.uint8), 3.0, rate, rng)

    def test_uncoded_ber(self) -> None:
        oracle = float(norm.sf(math.sqrt(2.0 * 10.0**0.96)))
        assert uncoded_ber(9.6) == pytest.approx(oracle, rel=1e-9)
        assert 9e-6 < uncoded_ber(9.6) < 1.1e-5
        assert uncoded_ber(0.0) == pytest.approx(0.0786496, rel=1e-5)

    def test_wilson_interval(self) -> None:
        low, high = wilson_interval(0, 10)
        assert low == pytest.approx(0.0, abs=1e-12)
        assert high == pytest.approx(0.27753, abs=1e-4)
        low, high = wilson_interval(5, 10)
        assert low == pytest.approx(1.0 - high)
        assert wilson_interval(0, 0) == (0.0, 1.0)


@pytest.mark.unit
class TestRunPoint:
    """Stopping rules and reproducibility."""

    @pytest.mark.parametrize(
        "decoder",
        [DecoderVariant.FLOAT_SC, DecoderVariant.FLOAT_FAST, DecoderVariant.QUANTIZED],
    )
    def test_high_snr_loop_is_error_free(
        self, decoder: DecoderVariant, code_64_32: FlextPolarModels.PolarCode,
    ) -> None:
        cfg = sim_config(
            code_64_32,
            (40.0,),
            decoder=decoder,
            batch_frames=2500,
            stop=FlextPolarModels.StopRule(min_frame_errors=1, max_frames=10_000),
        )
        stats = run_point(cfg, 40.0)
        assert stats.frames == 10_000
        assert stats.frame_errors == 0
        assert stats.bits == 10_000 * 32

    def test_stops_on_frame_errors(self, code_64_32: FlextPolarModels.PolarCode) -> None:
        cfg = sim_config(
            code_64_32,
            (-2.0,),
            batch_frames=10,
            stop=FlextPolarModels.StopRule(min_frame_errors=1, max_frames=10_000),
        )
        stats = run_point(cfg, -2.0)
        assert stats.frames == 10
        assert stats.frame_errors >= 1

    def test_stops_on_frame_cap(self, code_8_4: FlextPolarModels.PolarCode) -> None:
        cfg = sim_config(
            code_8_4,
            (40.0,),
            batch_frames=10,
            stop=FlextPolarModels.StopRule(min_frame_errors=5, max_frames=25),
        )
        assert run_point(cfg, 40.0).frames == 25

    def test_repeatable(self, code_64_32: FlextPolarModels.PolarCode) -> None:
        cfg = sim_config(code_64_32)
        assert counts(run_point(cfg, 2.0)) == counts(run_point(cfg, 2.0))

    def test_seed_changes_noise(self, code_64_32: FlextPolarModels.PolarCode) -> None:
        stop = FlextPolarModels.StopRule(min_frame_errors=10_000, max_frames=1000)
        first = run_point(sim_config(code_64_32, stop=stop), 2.0)
        second = run_point(sim_config(code_64_32, stop=stop, seed=99), 2.0)
        assert first.frames == second.frames == 1000
        assert first.bit_errors != second.bit_errors

    def test_worker_count_does_not_change_counts(
        self, code_64_32: FlextPolarModels.PolarCode,
    ) -> None:
        sequential = run_point(sim_config(code_64_32), 2.0)
        parallel = run_point(sim_config(code_64_32, workers=3), 2.0)
        assert counts(parallel) == counts(sequential)

    def test_quantizer_step_is_fixed_across_the_sweep(
        self, code_16_8: FlextPolarModels.PolarCode, monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        steps: list[float] = []

        def recording(values: np.ndarray, fmt: FlextPolarModels.QFormat) -> QLlrBatch:
            steps.append(fmt.step)
            return quantize_array(values, fmt)

        monkeypatch.setattr(link_sim, "quantize_array", recording)
        cfg = sim_config(
            code_16_8,
            (1.0, 4.0, 7.0),
            decoder=DecoderVariant.QUANTIZED,
            stop=FlextPolarModels.StopRule(min_frame_errors=1, max_frames=100),
        )
        stats = run_sweep(cfg)
        assert [point.ebno_db for point in stats] == [1.0, 4.0, 7.0]
        assert len(steps) >= 3
        assert set(steps) == {channel_format(code_16_8, default_schedule(4)).step}

    def test_sweep_uses_every_point(self, code_16_8: FlextPolarModels.PolarCode) -> None:
        stats = run_sweep(sim_config(code_16_8, (1.0, 3.0)))
        assert [point.ebno_db for point in stats] == [1.0, 3.0]
        assert stats[0].fer >= stats[1].fer


@pytest.mark.unit
class TestCurveOutput:
    """Curve rows and CSV files."""

    def test_rows_carry_bounds(self) -> None:
        stats = [FlextPolarModels.ErrorStats(ebno_db=4.0, frames=200, frame_errors=20, bits=800, bit_errors=41)]
        (row,) = sweep_rows(stats)
        assert row["fer"] == pytest.approx(0.1)
        assert row["ber"] == pytest.approx(41 / 800)
        assert row["fer_ci_lo"] < 0.1 < row["fer_ci_hi"]
        assert row["uncoded_ber"] == pytest.approx(uncoded_ber(4.0))

    def test_csv_columns_and_formatting(self, work_dir: Path) -> None:
        stats = [
            FlextPolarModels.ErrorStats(ebno_db=4.0, frames=200, frame_errors=20, bits=800, bit_errors=41),
            FlextPolarModels.ErrorStats(ebno_db=4.5, frames=1000, frame_errors=0, bits=4000, bit_errors=0),
        ]
        path = write_csv(stats, work_dir / "curves" / "results.csv")
        with path.open(encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert rows[1][:4] == ["4.000000e+00", "200", "20", "41"]
        assert rows[1][4] == "1.000000e-01"
        assert rows[2][4] == "0.000000e+00"
        assert len(rows) == 3

    def test_csv_write_failure(self, work_dir: Path) -> None:
        blocker = work_dir / "file"
        blocker.write_text("x")
        with pytest.raises(FlextPolarExceptions.FileError):
            write_csv([], blocker / "results.csv")
