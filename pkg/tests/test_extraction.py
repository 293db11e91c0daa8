"""Tests for convergent subsequence extraction and its independent verification."""

import numpy as np
import pytest


def _parity_norms():
    """||A_n|| = 1 + (-1)^n / 2: 0.5 at odd n, 1.5 at even n."""
    from src.sequences import explicit_sequence

    return explicit_sequence([[[0.5]], [[1.5]]], label="parity")


class TestHelpers:
    """Test the binning and oscillation helpers."""

    def test_tail_keeps_last_two_thirds(self):
        """Oscillation ignores the first third of the values."""
        from src.extraction.extractor import oscillation, tail

        assert tail(np.array([5.0, 0.0, 1.0, 1.0])).tolist() == [0.0, 1.0, 1.0]
        assert oscillation([5.0, 0.0, 1.0, 1.0]) == 1.0
        assert oscillation([2.0]) == 0.0

    def test_most_populous_bin(self):
        """The fullest bin wins."""
        from src.extraction.extractor import most_populous_bin

        mask = most_populous_bin(np.array([0.0, 0.6, 0.7, 2.0]), 0.25)
        assert mask.tolist() == [False, True, True, False]

    def test_tie_goes_to_lowest_bin(self):
        """Equally full bins resolve to the one with the smallest values."""
        from src.extraction.extractor import most_populous_bin

        mask = most_populous_bin(np.array([1.0, 0.0, 1.0, 0.0]), 0.5)
        assert mask.tolist() == [False, True, False, True]

    def test_tracked_statistics(self):
        """k = 0 is the norm and only tracked without singular values."""
        from src.extraction.extractor import default_min_length, tracked_ks

        assert tracked_ks(0) == [0]
        assert tracked_ks(3) == [1, 2, 3]
        assert default_min_length(64) == 8
        assert default_min_length(512) == 32


class TestExtractionRequest:
    """Test request validation."""

    def test_defaults(self, alternating):
        """min_length defaults to max(8, horizon / 16)."""
        from src.extraction import ExtractionRequest

        req = ExtractionRequest([alternating], horizon=256, epsilon=0.1)
        assert req.min_length == 16
        assert req.k_max == 0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"epsilon": 0.0},
            {"epsilon": -0.1},
            {"k_max": -1},
            {"horizon": 3},
            {"min_length": 0},
            {"min_length": 129},
            {"max_family": 0},
        ],
    )
    def test_invalid(self, alternating, kwargs):
        """Out-of-range parameters are configuration errors."""
        from src.errors import ConfigurationError
        from src.extraction import ExtractionRequest

        params = {"horizon": 128, "epsilon": 0.1} | kwargs
        with pytest.raises(ConfigurationError):
            ExtractionRequest([alternating], **params)

    def test_empty_family(self):
        """A request needs at least one sequence."""
        from src.errors import ConfigurationError
        from src.extraction import ExtractionRequest

        with pytest.raises(ConfigurationError):
            ExtractionRequest([], horizon=64, epsilon=0.1)


class TestExtractConvergent:
    """Test the nested most-populous-bin refinement."""

    def test_parity_norms(self):
        """Norms alternating between 0.5 and 1.5 keep one parity class."""
        from src.extraction import ExtractionRequest, extract_convergent

        result = extract_convergent(
            ExtractionRequest([_parity_norms()], horizon=128, epsilon=0.1, k_max=0)
        )
        assert result.success
        assert result.indices == list(range(1, 129, 2))
        assert result.refined == [(0, 0)]
        assert result.oscillations[(0, 0)] == 0.0

    def test_alternating_keeps_even_indices(self, alternating):
        """Along the zero terms every Sigma_k vanishes."""
        from src.extraction import ExtractionRequest, extract_convergent

        result = extract_convergent(
            ExtractionRequest([alternating], horizon=128, epsilon=0.01, k_max=3)
        )
        assert result.success
        assert result.indices == list(range(2, 129, 2))
        assert all(v == 0.0 for v in result.oscillations.values())
        assert result.refined == [(0, 1)]

    def test_constant_sequence_unchanged(self):
        """Already convergent statistics leave every index in place."""
        from src.extraction import ExtractionRequest, extract_convergent
        from src.sequences import identity_sequence

        result = extract_convergent(
            ExtractionRequest([identity_sequence()], horizon=64, epsilon=0.05, k_max=2)
        )
        assert result.success
        assert result.indices == list(range(1, 65))
        assert result.refined == []

    def test_too_few_indices_fails(self):
        """Refinement below min_length reports failure with the last index set."""
        from src.extraction import ExtractionRequest, extract_convergent

        result = extract_convergent(
            ExtractionRequest([_parity_norms()], horizon=128, epsilon=0.1, min_length=100)
        )
        assert not result.success
        assert result.indices == list(range(1, 129))
        assert result.oscillations[(0, 0)] == 1.0

    def test_family_refined_in_order(self, alternating):
        """Later sequences refine the index set chosen for earlier ones."""
        from src.extraction import ExtractionRequest, extract_convergent
        from src.sequences import explicit_sequence

        thirds = explicit_sequence([[[1.0]], [[2.0]], [[4.0]]], label="thirds")
        result = extract_convergent(
            ExtractionRequest([alternating, thirds], horizon=128, epsilon=0.01)
        )
        assert result.success
        # even indices first, then the fullest residue class mod 3 among them
        assert all(i % 2 == 0 for i in result.indices)
        assert len({i % 3 for i in result.indices}) == 1
        assert result.refined == [(0, 0), (1, 0)]

    def test_deterministic(self):
        """Two runs on the same request agree."""
        from src.extraction import ExtractionRequest, extract_convergent

        req = ExtractionRequest([_parity_norms()], horizon=64, epsilon=0.1)
        assert extract_convergent(req).indices == extract_convergent(req).indices

    def test_idempotent(self, alternating):
        """Extracting again along a successful eta keeps every index."""
        from src.extraction import ExtractionRequest, extract_convergent
        from src.sequences import restrict

        first = extract_convergent(
            ExtractionRequest([alternating], horizon=128, epsilon=0.01, k_max=3)
        )
        restricted = restrict(alternating, first.eta)
        second = extract_convergent(
            ExtractionRequest([restricted], horizon=len(first.indices), epsilon=0.01, k_max=3)
        )
        assert second.success
        assert second.indices == list(range(1, len(first.indices) + 1))

    @pytest.mark.parametrize("epsilon", [0.01, 0.1, 1.0, 2.5, 10.0])
    def test_loosening_epsilon_keeps_success(self, epsilon):
        """Every width from tight to loose succeeds on the same family."""
        from src.extraction import ExtractionRequest, extract_convergent, verify_convergence
        from src.sequences import explicit_sequence

        seqs = [explicit_sequence([[[1.0]], [[2.0]], [[4.0]]])]
        result = extract_convergent(ExtractionRequest(seqs, horizon=128, epsilon=epsilon))
        assert result.success
        ok, _ = verify_convergence(seqs, result.eta, epsilon, 0, 128)
        assert ok

    def test_report(self, alternating):
        """Reports carry eta and one oscillation record per statistic."""
        from src.extraction import ExtractionRequest, extract_convergent

        result = extract_convergent(
            ExtractionRequest([alternating], horizon=64, epsilon=0.01, k_max=2)
        )
        report = result.to_report(verified=True, label="alt")
        assert report.command == "restrict"
        assert report.eta == list(range(2, 65, 2))
        assert [(r.sequence, r.k) for r in report.oscillations] == [(0, 1), (0, 2)]
        assert report.verified


class TestVerifyConvergence:
    """Test the independent re-check along eta."""

    def test_successful_extraction_verifies(self, alternating):
        """Soundness: a successful eta passes the independent check."""
        from src.extraction import ExtractionRequest, extract_convergent, verify_convergence

        result = extract_convergent(
            ExtractionRequest([alternating], horizon=128, epsilon=0.01, k_max=3)
        )
        ok, report = verify_convergence([alternating], result.eta, 0.01, 3, 128)
        assert ok
        assert set(report) == {(0, 1), (0, 2), (0, 3)}

    def test_identity_eta_on_alternating_fails(self, alternating):
        """Norms keep jumping between 0 and 1 along every index."""
        from src.extraction import verify_convergence
        from src.sequences import Restriction

        ok, report = verify_convergence([alternating], Restriction.identity(), 0.1, 0, 64)
        assert not ok
        assert report[(0, 0)] == pytest.approx(1.0)

    def test_zero_sequence_always_converges(self):
        """All statistics of the zero sequence vanish."""
        from src.extraction import verify_convergence
        from src.sequences import Restriction, zero_sequence

        for eta in (Restriction.identity(), Restriction.arithmetic(3, 1)):
            ok, _ = verify_convergence([zero_sequence()], eta, 1e-3, 2, 64)
            assert ok

    def test_eta_outside_horizon(self):
        """A restriction that starts past the horizon is a configuration error."""
        from src.errors import ConfigurationError
        from src.extraction import verify_convergence
        from src.sequences import Restriction, zero_sequence

        with pytest.raises(ConfigurationError):
            verify_convergence([zero_sequence()], Restriction.from_indices([70, 80]), 0.1, 0, 64)


class TestDichotomyAlongExtraction:
    """Test that extraction removes the undecided points of the audit."""

    def test_alternating(self, alternating):
        """Undecided points of alternate(I, 0) resolve along the extracted eta."""
        from src.extraction import ExtractionRequest, extract_convergent
        from src.sequences import restrict
        from src.spectral import dichotomy_audit

        grid = [0.0, 0.5, 1.0]
        before = dichotomy_audit(alternating, grid, horizon=128)
        assert before.undecided == [0.0, 1.0]

        result = extract_convergent(
            ExtractionRequest([alternating], horizon=128, epsilon=0.01, k_max=3)
        )
        after = dichotomy_audit(restrict(alternating, result.eta), grid, horizon=64)
        assert after.undecided == []
        assert after.dichotomy
        assert after.essential == [0.0]
