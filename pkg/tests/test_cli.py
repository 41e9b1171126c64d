"""Tests for the command-line interface."""

import csv
import io
import json
import logging
from collections.abc import Callable, Iterator
from pathlib import Path

import pytest
from click.testing import CliRunner

from bellpigeon import verification
from bellpigeon.cli import ColoredFormatter, run
from bellpigeon.config import JSON_SCHEMA


@pytest.fixture(autouse=True)
def restore_root_logger() -> Iterator[None]:
    """Undo the handler swap done by setup_logging."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def runner() -> CliRunner:
    """Click test runner."""
    return CliRunner()


def scan_rows(text: str) -> list[dict[str, str]]:
    """Parse scan CSV output."""
    return list(csv.DictReader(io.StringIO(text)))


class TestScan:
    """Tests for the scan command."""

    def test_full_range(self, runner: CliRunner) -> None:
        """Test 0..180 in one-degree steps gives 181 rows peaking at 120."""
        args = ["--state", "bell11", "--from", "0", "--to", "180", "--step", "1"]
        result = runner.invoke(run, ["scan", *args])
        assert result.exit_code == 0, result.output
        rows = scan_rows(result.stdout)
        assert len(rows) == 181
        row_120 = next(row for row in rows if row["theta_deg"] == "120")
        assert float(row_120["total"]) == pytest.approx(1.5, abs=1e-10)

    def test_single_row_at_90(self, runner: CliRunner) -> None:
        """Test the violation boundary gives total 1."""
        args = ["--state", "bell11", "--from", "90", "--to", "90", "--step", "1"]
        result = runner.invoke(run, ["scan", *args])
        assert result.exit_code == 0
        (row,) = scan_rows(result.stdout)
        assert float(row["total"]) == pytest.approx(1.0, abs=1e-10)

    def test_rounding_noise_prints_as_zero(self, runner: CliRunner) -> None:
        """Test the vanishing X(x)X part at 180 deg prints as 0, not 1e-31."""
        args = ["--state", "bell11", "--from", "0", "--to", "180", "--step", "0.3"]
        result = runner.invoke(run, ["scan", *args])
        assert result.exit_code == 0
        assert scan_rows(result.stdout)[-1] == {
            "theta_deg": "180",
            "total": "1",
            "zz_component": "1",
            "xx_component": "0",
        }

    def test_bell00_collinear(self, runner: CliRunner) -> None:
        """Test beta_00 at theta = 0 gives 3."""
        args = ["--state", "bell00", "--from", "0", "--to", "0", "--step", "1"]
        result = runner.invoke(run, ["scan", *args])
        assert result.exit_code == 0
        (row,) = scan_rows(result.stdout)
        assert row == {
            "theta_deg": "0",
            "total": "3",
            "zz_component": "3",
            "xx_component": "0",
        }

    def test_json_format_to_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test JSON scan output written to a file."""
        target = tmp_path / "scan.json"
        args = ["--from", "120", "--to", "120", "--format", "json"]
        result = runner.invoke(run, ["scan", *args, "--output", str(target)])
        assert result.exit_code == 0
        document = json.loads(target.read_text())
        assert document["schema"] == JSON_SCHEMA
        assert document["points"][0]["total"] == pytest.approx(1.5)

    def test_byte_identical_reruns(self, runner: CliRunner) -> None:
        """Test the same arguments produce the same bytes."""
        args = ["scan", "--from", "10", "--to", "170", "--step", "7.5"]
        assert runner.invoke(run, args).stdout == runner.invoke(run, args).stdout

    def test_bad_step_is_usage_error(self, runner: CliRunner) -> None:
        """Test a zero step exits 2."""
        result = runner.invoke(run, ["scan", "--step", "0"])
        assert result.exit_code == 2

    def test_out_of_range_angle(self, runner: CliRunner) -> None:
        """Test a negative angle exits 2."""
        result = runner.invoke(run, ["scan", "--from", "-5"])
        assert result.exit_code == 2

    def test_unknown_state(self, runner: CliRunner) -> None:
        """Test an unknown state exits 2."""
        result = runner.invoke(run, ["scan", "--state", "bell22"])
        assert result.exit_code == 2

    def test_unwritable_output(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test an I/O failure exits 1."""
        blocker = tmp_path / "file"
        blocker.write_text("")
        result = runner.invoke(run, ["scan", "--output", str(blocker / "out.csv")])
        assert result.exit_code == 1


class TestVerify:
    """Tests for the verify command."""

    def test_all_pass(self, runner: CliRunner) -> None:
        """Test every identity passes and exits 0."""
        result = runner.invoke(run, ["verify"])
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert len(lines) >= 25
        assert all(line.startswith("✅") for line in lines)

    def test_output_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the report can be written to a file."""
        target = tmp_path / "verify.txt"
        result = runner.invoke(run, ["verify", "--output", str(target)])
        assert result.exit_code == 0
        assert "max residual" in target.read_text()

    def test_failure_exits_3(
        self, runner: CliRunner, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test a failing identity exits 3."""
        original = verification.identity_checks

        def with_broken_check() -> list[tuple[str, Callable[[], float], float]]:
            return original() + [("broken", lambda: 1.0, 1e-10)]

        monkeypatch.setattr(verification, "identity_checks", with_broken_check)
        result = runner.invoke(run, ["verify"])
        assert result.exit_code == 3
        assert "❌ broken" in result.stdout


class TestPigeonhole:
    """Tests for the pigeonhole command."""

    @pytest.mark.parametrize("n,pairs", [(2, 1), (3, 3), (5, 10)])
    def test_all_probabilities_zero(
        self, runner: CliRunner, n: int, pairs: int
    ) -> None:
        """Test every pair has zero same-box probability."""
        result = runner.invoke(run, ["pigeonhole", "--n", str(n)])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert len(document["pairs"]) == pairs
        assert all(entry["probability"] == 0.0 for entry in document["pairs"])

    def test_diff_label(self, runner: CliRunner) -> None:
        """Test the different-box label reports 1/8 for three particles."""
        result = runner.invoke(run, ["pigeonhole", "--n", "3", "--label", "diff"])
        document = json.loads(result.stdout)
        assert all(entry["probability"] == 0.125 for entry in document["pairs"])

    @pytest.mark.parametrize("n", ["1", "11"])
    def test_out_of_range(self, runner: CliRunner, n: str) -> None:
        """Test n outside [2, 10] exits 2."""
        assert runner.invoke(run, ["pigeonhole", "--n", n]).exit_code == 2


class TestSample:
    """Tests for the sample command."""

    def test_bell00_violation(self, runner: CliRunner) -> None:
        """Test the quantum campaign violates the lower bound."""
        args = ["--state", "bell00", "--theta", "120", "--n", "100000", "--seed", "7"]
        result = runner.invoke(run, ["sample", *args])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["violated"] is True
        assert document["seed"] == 7
        assert document["n"] == 100000
        assert abs(document["sum"] + 1.5) <= 4 * document["sum_stderr"]
        assert len(document["pairs"]) == 3

    def test_reproducible(self, runner: CliRunner) -> None:
        """Test the same seed gives byte-identical output."""
        args = ["sample", "--n", "2000", "--seed", "42"]
        assert runner.invoke(run, args).stdout == runner.invoke(run, args).stdout

    def test_lhv_model(self, runner: CliRunner) -> None:
        """Test the LHV model never violates and reports per-draw sums."""
        args = ["--model", "lhv", "--n", "5000", "--seed", "3"]
        result = runner.invoke(run, ["sample", *args])
        document = json.loads(result.stdout)
        assert document["model"] == "lhv"
        assert document["violated"] is False
        assert set(document["draw_sums"]) <= {-1.0, 3.0}

    def test_bad_arguments(self, runner: CliRunner) -> None:
        """Test zero draws and a negative seed exit 2."""
        assert runner.invoke(run, ["sample", "--n", "0"]).exit_code == 2
        assert runner.invoke(run, ["sample", "--seed", "-1"]).exit_code == 2


class TestWitness:
    """Tests for the witness command."""

    def test_entangled(self, runner: CliRunner) -> None:
        """Test p = 0.5 is flagged entangled and not PPT."""
        result = runner.invoke(run, ["witness", "--p", "0.5"])
        document = json.loads(result.stdout)
        assert document["expectation"] == pytest.approx(-0.125)
        assert document["entangled_flag"] is True
        assert document["ppt_verdict"]["ppt"] is False

    def test_inconclusive(self, runner: CliRunner) -> None:
        """Test p = 0.2 is not flagged and is PPT."""
        result = runner.invoke(run, ["witness", "--p", "0.2"])
        document = json.loads(result.stdout)
        assert document["expectation"] == pytest.approx(0.1)
        assert document["entangled_flag"] is False
        assert document["ppt_verdict"]["ppt"] is True

    def test_out_of_range(self, runner: CliRunner) -> None:
        """Test p outside [0, 1] exits 2."""
        assert runner.invoke(run, ["witness", "--p", "1.5"]).exit_code == 2


class TestLogging:
    """Tests for log formatting."""

    def test_verbose_sets_debug(self, runner: CliRunner) -> None:
        """Test --verbose switches the root logger to DEBUG."""
        runner.invoke(run, ["--verbose", "witness", "--p", "0.3"])
        assert logging.getLogger().level == logging.DEBUG

    def test_colored_formatter(self) -> None:
        """Test warnings get an emoji and a color reset."""
        record = logging.LogRecord("x", logging.WARNING, "", 0, "careful", None, None)
        text = ColoredFormatter().format(record)
        assert "careful" in text
        assert text.startswith("⚠️")
        assert text.endswith("\033[0m")
