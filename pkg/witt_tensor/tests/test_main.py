"""
Tests for the command-line interface.
"""

import argparse
import json

import pytest

from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.main import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    build_parser,
    build_selected_module,
    main,
    parse_primes,
)


# ============================================================================
# ARGUMENT HANDLING
# ============================================================================

class TestParsePrimes:
    """Test prime lists."""

    @pytest.mark.unit
    def test_single_and_batch(self):
        """Test -p and --primes."""
        assert parse_primes(argparse.Namespace(prime=7, primes=None)) == [7]
        assert parse_primes(argparse.Namespace(prime=None, primes="5, 7,11")) == [5, 7, 11]

    @pytest.mark.unit
    def test_garbage(self):
        """Test that non-integers are usage errors."""
        with pytest.raises(UsageError):
            parse_primes(argparse.Namespace(prime=None, primes="5,seven"))

    @pytest.mark.unit
    def test_parser_requires_prime(self):
        """Test that argparse exits with code 2 without -p."""
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["verify"])
        assert exc.value.code == 2


class TestModuleSelectors:
    """Test the -m selector of the series command."""

    @pytest.mark.unit
    @pytest.mark.parametrize("selector,dim", [
        ("A1", 5), ("A2", 25), ("AsPlus", 10), ("AaPlus", 6),
        ("LxL", 16), ("Z:3", 5), ("L:0", 1), ("L:4", 4), ("adjoint", 5),
    ])
    def test_dimensions(self, selector, dim):
        """Test the dimension of each selectable module for p = 5."""
        assert build_selected_module(WittAlgebra(5), selector).dim == dim

    @pytest.mark.unit
    @pytest.mark.parametrize("selector", ["B1", "Z:", "L:x", "Z:9"])
    def test_unknown(self, selector):
        """Test that bad selectors are usage errors."""
        with pytest.raises(UsageError):
            build_selected_module(WittAlgebra(5), selector)


# ============================================================================
# COMMANDS
# ============================================================================

class TestCommands:
    """Test main() end to end."""

    @pytest.mark.unit
    def test_series_text(self, capsys):
        """Test the series of A(1) for p = 5."""
        assert main(["series", "-p", "5", "-m", "A1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "A(1) (dim 5): 5 ⊃ 1 ⊃ 0; factors L⁻(1), L⁻(0)" in out

    @pytest.mark.integration
    def test_series_json(self, capsys):
        """Test [A] = [2,1,1,1,2] through the CLI."""
        assert main(["series", "-p", "5", "-m", "A2", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["grothendieck"] == [2, 1, 1, 1, 2]

    @pytest.mark.unit
    def test_composite_prime(self, capsys):
        """Test exit code 2 and the message for p = 9."""
        assert main(["verify", "-p", "9"]) == EXIT_USAGE
        assert "9 is not prime" in capsys.readouterr().err

    @pytest.mark.unit
    def test_prime_above_cli_cap(self, capsys):
        """Test that the CLI refuses primes beyond 2**15."""
        assert main(["series", "-p", "65537", "-m", "A1"]) == EXIT_USAGE
        assert "exceeds" in capsys.readouterr().err

    @pytest.mark.unit
    def test_unknown_selector(self, capsys):
        """Test exit code 2 for an unknown module."""
        assert main(["series", "-p", "5", "-m", "nope"]) == EXIT_USAGE
        assert "unknown module selector" in capsys.readouterr().err

    @pytest.mark.integration
    def test_selftest_json_without_timings(self, capsys):
        """Test the selftest command with JSON output."""
        assert main(["selftest", "-p", "5", "--format", "json", "--no-timings"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "pass"
        assert "timings" not in payload

    @pytest.mark.integration
    def test_out_file(self, tmp_path, capsys):
        """Test that --out writes the report instead of printing it."""
        target = tmp_path / "report.md"
        assert main(["selftest", "-p", "5", "--format", "md", "--out", str(target)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8").startswith("# witt-tensor selftest, p = 5")

    @pytest.mark.integration
    def test_batch_selftest(self, capsys):
        """Test a batch of primes in prime order."""
        assert main(["selftest", "--primes", "7,5", "--format", "json", "--no-timings"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert [r["prime"] for r in payload["reports"]] == [5, 7]

    @pytest.mark.integration
    def test_selftest_json_is_reproducible(self, capsys):
        """Test that two runs with --no-timings print the same JSON."""
        argv = ["selftest", "-p", "5", "--format", "json", "--no-timings"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == first

    @pytest.mark.integration
    def test_verify_reports_failed_claims(self, capsys):
        """Test exit code 1 when the alternating claims fail for p = 5."""
        assert main(["verify", "-p", "5", "--format", "json", "--no-timings"]) == EXIT_FAILED
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "fail"


class TestUsageErrors:
    """Test that bad option values exit with code 2 instead of a traceback."""

    @pytest.mark.unit
    @pytest.mark.parametrize("argv", [
        ["verify", "-p", "5", "--enumeration-cap", "0"],
        ["verify", "-p", "5", "--shuffles", "-1"],
        ["selftest", "-p", "5", "--enumeration-cap", "0"],
        ["series", "-p", "5", "-m", "A1", "--enumeration-cap", "0"],
    ])
    def test_out_of_range_knobs(self, argv, capsys):
        """Test option values rejected by the config model."""
        assert main(argv) == EXIT_USAGE
        assert "invalid option" in capsys.readouterr().err

    @pytest.mark.unit
    def test_unwritable_out(self, tmp_path, capsys):
        """Test an --out path whose directory does not exist."""
        target = tmp_path / "missing" / "series.txt"
        assert main(["series", "-p", "5", "-m", "A1", "--out", str(target)]) == EXIT_USAGE
        assert "cannot write" in capsys.readouterr().err
        assert not target.exists()
