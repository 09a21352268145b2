"""
Tests for the LangGraph verification workflow.
"""

import numpy as np
import pytest

from witt_tensor.errors import InvalidPrimeError, VerificationError
from witt_tensor.graph import (
    PhaseRecorder,
    build_verification_graph,
    check_rref_properties,
    check_subspace_properties,
    draw_graph,
    merge_dicts,
    run_verification,
)
from witt_tensor.schemas import CheckStatus, RunMode, VerificationConfig, VerificationPhase

ALT_CHAIN_FAILURES = {
    "chains.shape.alt",
    "chains.successors.alt",
    "theorem.series.alt",
    "theorem.dims.alt",
    "theorem.socle.alt",
}
ALT_FAILURES_P5 = ALT_CHAIN_FAILURES | {"chains.graded_dims.alt.v3.l2"}
ALT_FAILURES_P7 = ALT_CHAIN_FAILURES | {"chains.graded_dims.alt.v3.l4", "chains.graded_dims.alt.v5.l2"}


# ============================================================================
# HELPERS
# ============================================================================

class TestPhaseRecorder:
    """Test how node checks are recorded."""

    @pytest.mark.unit
    def test_string_result_becomes_detail(self):
        """Test that a returned string is stored as the detail."""
        recorder = PhaseRecorder(VerificationPhase.SPLIT)
        assert recorder.run("split.demo", lambda: "all good") == "all good"
        [check] = recorder.checks
        assert check.status == CheckStatus.PASS
        assert check.detail == "all good"
        assert check.phase == VerificationPhase.SPLIT

    @pytest.mark.unit
    def test_library_error_becomes_failure(self):
        """Test that a WittTensorError is caught and recorded."""
        def broken():
            raise VerificationError("dimension 3, expected 4")

        recorder = PhaseRecorder(VerificationPhase.CHAINS)
        assert recorder.run("chains.demo", broken) is None
        [check] = recorder.checks
        assert check.status == CheckStatus.FAIL
        assert "expected 4" in check.detail

    @pytest.mark.unit
    def test_other_errors_propagate(self):
        """Test that programming errors are not swallowed."""
        recorder = PhaseRecorder(VerificationPhase.CHAINS)
        with pytest.raises(ZeroDivisionError):
            recorder.run("chains.demo", lambda: 1 // 0)

    @pytest.mark.unit
    def test_expect_and_skip(self):
        """Test boolean expectations and skipped checks."""
        recorder = PhaseRecorder(VerificationPhase.WEIGHTS)
        assert not recorder.expect("weights.demo", False, "rows differ")
        recorder.skip("weights.other", "decomposition unavailable")
        assert [c.status for c in recorder.checks] == [CheckStatus.FAIL, CheckStatus.SKIPPED]

    @pytest.mark.unit
    def test_merge_dicts(self):
        """Test that later keys win."""
        assert merge_dicts({"a": 1, "b": 2}, {"b": 3}) == {"a": 1, "b": 3}


class TestLinalgProperties:
    """Test the randomized linear algebra suites."""

    @pytest.mark.unit
    @pytest.mark.parametrize("p", [5, 7, 13])
    def test_properties_hold(self, p):
        """Test both suites on a few primes."""
        rng = np.random.default_rng(0)
        assert check_rref_properties(p, 5, rng) == "5 random matrices"
        assert check_subspace_properties(p, 5, rng) == "5 random subspace pairs"


# ============================================================================
# GRAPH
# ============================================================================

class TestGraphConstruction:
    """Test the compiled graphs."""

    @pytest.mark.unit
    def test_graph_is_cached(self):
        """Test that each mode compiles once."""
        assert build_verification_graph(RunMode.VERIFY) is build_verification_graph(RunMode.VERIFY)

    @pytest.mark.unit
    def test_draw_graph(self):
        """Test the ASCII rendering names the phases."""
        drawing = draw_graph(RunMode.SELFTEST)
        for phase in ("structure", "constructors", "linalg"):
            assert phase in drawing

    @pytest.mark.unit
    def test_invalid_prime(self):
        """Test that the entry point validates the prime."""
        with pytest.raises(InvalidPrimeError):
            run_verification(9)


class TestRunVerification:
    """Test whole runs."""

    @pytest.mark.integration
    def test_selftest_p5(self, quick_config):
        """Test the selftest suite, which checks linear algebra over 5, 7 and p."""
        report = run_verification(5, quick_config, RunMode.SELFTEST)
        assert report.status == CheckStatus.PASS
        names = {check.name for check in report.checks}
        assert {"linalg.rref.p5", "linalg.rref.p7", "witt.jacobi", "constructors.simple_labels"} <= names
        assert report.series == []

    @pytest.mark.integration
    def test_verify_p5(self, quick_config):
        """Test that exactly the alternating chain claims fail for p = 5 and every other check passes."""
        report = run_verification(5, quick_config)
        assert report.status == CheckStatus.FAIL
        assert {check.name for check in report.failures()} == ALT_FAILURES_P5
        names = {check.name for check in report.checks}
        for expected in (
            "lemmas.injectivity",
            "split.canonical_submodules",
            "weights.table",
            "chains.build.sym",
            "chains.build.alt",
            "chains.bound_beyond_p",
            "chains.graded_dims.sym.v2",
            "chains.graded_dims.alt.v5",
            "theorem.claims",
            "theorem.series.sym",
            "theorem.socle.sym",
            "theorem.oracle.alt",
            "theorem.splitting",
            "theorem.stability.A_s+",
            "theorem.stability.A_a+",
            "grothendieck.identities",
        ):
            assert expected in names
        assert not any(check.status == CheckStatus.SKIPPED for check in report.checks)
        assert set(report.tables) == {"weights", "sym_chain", "alt_chain"}
        assert len(report.series) == 8
        assert [s.module_name for s in report.series[:2]] == ["A_s+ (explicit)", "A_a+"]
        assert set(report.timings) >= {"structure", "theorem", "grothendieck"}

    @pytest.mark.integration
    def test_without_timings(self):
        """Test that timings can be switched off."""
        report = run_verification(5, VerificationConfig(include_timings=False, shuffles=1), RunMode.SELFTEST)
        assert report.timings == {}

    @pytest.mark.integration
    def test_chain_tables_p7(self):
        """Test the chain tables and the failing claims for p = 7."""
        report = run_verification(7, VerificationConfig(shuffles=1))
        assert {check.name for check in report.failures()} == ALT_FAILURES_P7
        sym, alt = report.tables["sym_chain"], report.tables["alt_chain"]
        assert (sym["dims"], sym["nested"]) == ([21, 14, 7, 0], True)
        assert [head["lowest_weight"] for head in sym["heads"]] == [2, 4, 6]
        assert (alt["degrees"], alt["dims"], alt["nested"]) == ([3, 5, 7], [14, 7, 1, 0], False)
        assert [head["lowest_weight"] for head in alt["heads"]] == [3, 5, 0]

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [11, 13])
    def test_symmetric_claims_larger_primes(self, p):
        """Test that every symmetric check passes without the stability phase."""
        report = run_verification(p)
        failed = {check.name for check in report.failures()}
        assert not any(name.endswith(".sym") or ".sym." in name for name in failed)
        assert "grothendieck.identities" not in failed
        assert not any(check.name.startswith("theorem.stability") for check in report.checks)

    @pytest.mark.slow
    def test_alternating_failures_p11(self):
        """Test the failing alternating claims for p = 11."""
        report = run_verification(11)
        assert {check.name for check in report.failures()} == ALT_CHAIN_FAILURES | {
            "chains.graded_dims.alt.v3.l8",
            "chains.graded_dims.alt.v5.l6",
            "chains.graded_dims.alt.v7.l4",
            "chains.graded_dims.alt.v9.l2",
        }
