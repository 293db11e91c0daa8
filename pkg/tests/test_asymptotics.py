"""Tests for windows, singular value profiles and the finite-horizon estimators."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.conftest import decay_sequence, random_low_rank, random_unitary


def _hermitian_low_rank(rng, size: int, rank: int) -> np.ndarray:
    u = random_unitary(rng, size)[:, :rank]
    block = (u * rng.uniform(0.5, 1.5, rank)) @ u.conj().T
    return 0.5 * (block + block.conj().T)


class TestWindows:
    """Test the index windows over a horizon."""

    def test_horizon_16(self):
        """Quarters of 1..16."""
        from src.asymptotics.windows import Windows

        ns = np.arange(1, 17)
        w = Windows.over(ns, 16)
        assert ns[w.first_quarter].tolist() == [1, 2, 3, 4]
        assert ns[w.tail].tolist() == list(range(8, 17))
        assert ns[w.mid_quarter].tolist() == [8, 9, 10, 11]
        assert ns[w.last_quarter].tolist() == [12, 13, 14, 15, 16]

    def test_bounds_round_up(self):
        """Fractional window bounds are rounded up."""
        from src.asymptotics.windows import half, three_quarters

        assert half(15) == 8
        assert three_quarters(15) == 12

    @settings(max_examples=200, deadline=None)
    @given(horizon=st.integers(min_value=4, max_value=400))
    def test_tail_splits_into_quarters(self, horizon):
        """mid and last quarter partition the tail, which misses the first quarter."""
        from src.asymptotics.windows import Windows

        w = Windows.over(np.arange(1, horizon + 1), horizon)
        assert np.array_equal(w.mid_quarter | w.last_quarter, w.tail)
        assert not np.any(w.mid_quarter & w.last_quarter)
        assert not np.any(w.first_quarter & w.tail)
        assert w.last_quarter.any()

    def test_window_reductions_ignore_nan(self):
        """NaN entries are skipped; an empty window gives NaN."""
        from src.asymptotics.windows import window_max, window_min

        values = np.array([1.0, np.nan, 3.0])
        mask = np.array([True, True, False])
        assert window_max(values, mask) == 1.0
        assert window_min(values, ~mask | mask) == 1.0
        assert math.isnan(window_max(values, np.array([False, True, False])))

    def test_no_decay(self):
        """Last-quarter minimum against factor times mid-quarter minimum."""
        from src.asymptotics.windows import Windows, no_decay

        ns = np.arange(1, 17)
        w = Windows.over(ns, 16)
        assert no_decay(np.ones(16), w, 0.9)
        assert not no_decay(1.0 / ns, w, 0.9)


class TestSingularProfile:
    """Test profile tables."""

    def test_padding_beyond_dimension(self):
        """Sigma_k is 0 and sigma_k is NaN where k exceeds delta(n)."""
        from src.asymptotics import singular_profile
        from src.sequences import constant_sequence

        profile = singular_profile(constant_sequence(np.diag([2.0, 1.0])), 16, 4)
        assert profile.ns.tolist() == list(range(5, 17))
        assert profile.largest(1).tolist() == pytest.approx([2.0] * 12)
        assert profile.largest(3).tolist() == [0.0] * 12
        assert np.all(np.isnan(profile.smallest(3)))
        assert profile.smallest(1).tolist() == pytest.approx([1.0] * 12)

    def test_explicit_start(self, tridiagonal):
        """start=1 profiles every index."""
        from src.asymptotics import singular_profile

        profile = singular_profile(tridiagonal, 8, 2, start=1)
        assert profile.ns.tolist() == list(range(1, 9))
        assert profile.dims.tolist() == list(range(1, 9))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"horizon": 3, "k_max": 2},
            {"horizon": 8, "k_max": 0},
            {"horizon": 8, "k_max": 2, "start": 9},
        ],
    )
    def test_invalid_arguments(self, tridiagonal, kwargs):
        """Short horizons, k_max < 1 and out-of-range starts are rejected."""
        from src.asymptotics import singular_profile
        from src.errors import ConfigurationError

        with pytest.raises(ConfigurationError):
            singular_profile(tridiagonal, **kwargs)

    def test_restrict_reads_rows(self, alternating):
        """Restricting the profile to even n keeps the zero rows."""
        from src.asymptotics import singular_profile
        from src.sequences import Restriction

        profile = singular_profile(alternating, 32, 2, start=1)
        even = profile.restrict(Restriction.arithmetic(2))
        assert even.horizon == 16
        assert even.ns.tolist() == list(range(1, 17))
        assert even.norms.tolist() == [0.0] * 16

    def test_restrict_outside_horizon(self, tridiagonal):
        """A restriction with no index inside the horizon is rejected."""
        from src.asymptotics import singular_profile
        from src.errors import ConfigurationError
        from src.sequences import Restriction

        profile = singular_profile(tridiagonal, 8, 2)
        with pytest.raises(ConfigurationError):
            profile.restrict(Restriction.from_indices([20, 30]))

    def test_to_frame(self, tridiagonal):
        """Long CSV layout n, dim, k, sigma_desc."""
        from src.asymptotics import singular_profile

        frame = singular_profile(tridiagonal, 8, 3).to_frame()
        assert frame.columns == ["n", "dim", "k", "sigma_desc"]
        assert frame.height == 6 * 3


class TestZeroSequence:
    """Test the zero-sequence test on ||A_n||."""

    def test_decay_is_zero(self):
        """(1/n) I tends to zero at tolerance 0.05."""
        from src.asymptotics import singular_profile, zero_sequence_test

        profile = singular_profile(decay_sequence(), 64, 2)
        assert zero_sequence_test(profile, tol=0.05)

    def test_identity_not_zero(self):
        """||I_n|| = 1 never drops."""
        from src.asymptotics import singular_profile, zero_sequence_test
        from src.sequences import identity_sequence

        assert not zero_sequence_test(singular_profile(identity_sequence(), 64, 2))

    def test_alternating_not_zero(self, alternating):
        """Norm 1 at every odd n."""
        from src.asymptotics import singular_profile, zero_sequence_test

        assert not zero_sequence_test(singular_profile(alternating, 64, 2))

    def test_slow_decay_above_tolerance(self):
        """(1/sqrt n) I is still above 0.05 at n = 64."""
        from src.asymptotics import singular_profile, zero_sequence_test

        assert not zero_sequence_test(singular_profile(decay_sequence(power=0.5), 64, 2))


class TestCompactness:
    """Test the compactness verdict from tail suprema."""

    def test_rank_one_constant(self):
        """A constant rank-1 sequence is Compact(1)."""
        from src.asymptotics import CompactnessKind, compactness_test, singular_profile
        from src.sequences import constant_sequence

        profile = singular_profile(constant_sequence(np.diag([1.0, 0.0])), 32, 4)
        verdict = compactness_test(profile)
        assert verdict.kind == CompactnessKind.COMPACT
        assert verdict.ess_rank == 1
        assert verdict.tail_suprema[0] == pytest.approx(1.0)

    def test_identity_not_compact(self):
        """The identity has a floor of 1."""
        from src.asymptotics import CompactnessKind, compactness_test, singular_profile
        from src.sequences import identity_sequence

        verdict = compactness_test(singular_profile(identity_sequence(), 32, 4))
        assert verdict.kind == CompactnessKind.NOT_COMPACT
        assert verdict.floor == pytest.approx(1.0)
        assert verdict.witness_k == 4

    def test_structured_finite_rank(self, rng):
        """Zero symbol with rank-2 K and rank-1 L is Compact(3)."""
        from src.asymptotics import CompactnessKind, compactness_test, singular_profile
        from src.toeplitz import StructuredToeplitzSequence, Symbol, assemble

        spec = StructuredToeplitzSequence(
            Symbol(),
            k_pert=_hermitian_low_rank(rng, 8, 2),
            l_pert=_hermitian_low_rank(rng, 8, 1),
        )
        verdict = compactness_test(singular_profile(assemble(spec), 64, 6))
        assert verdict.kind == CompactnessKind.COMPACT
        assert verdict.ess_rank == 3

    def test_spread_suprema_undecided(self):
        """Suprema 1, 1/2, 1/4 neither vanish nor level off."""
        from src.asymptotics import CompactnessKind, compactness_test, singular_profile
        from src.sequences import constant_sequence

        profile = singular_profile(constant_sequence(np.diag([1.0, 0.5, 0.25])), 32, 3)
        verdict = compactness_test(profile)
        assert verdict.kind == CompactnessKind.UNDECIDED
        assert not verdict.decided

    def test_report(self):
        """The verdict serializes with its tail suprema."""
        from src.asymptotics import compactness_test, singular_profile
        from src.sequences import identity_sequence

        report = compactness_test(singular_profile(identity_sequence(), 32, 3)).to_report()
        assert report.verdict == "not_compact"
        assert len(report.tail_suprema) == 3

    @settings(max_examples=40, deadline=None)
    @given(
        phases=st.lists(
            st.lists(st.sampled_from([0.0, 0.5, 1.0]), min_size=4, max_size=4),
            min_size=1,
            max_size=3,
        ),
        step=st.integers(min_value=1, max_value=3),
        offset=st.integers(min_value=0, max_value=2),
    )
    def test_consistent_under_restriction(self, phases, step, offset):
        """Subsequences of a Compact(r) sequence are Compact(r') with r' <= r, never NotCompact."""
        from src.asymptotics import CompactnessKind, compactness_test, singular_profile
        from src.sequences import Restriction, explicit_sequence

        profile = singular_profile(explicit_sequence([np.diag(p) for p in phases]), 32, 4)
        full = compactness_test(profile)
        sub = compactness_test(profile.restrict(Restriction.arithmetic(step, offset)))
        if full.kind == CompactnessKind.COMPACT:
            assert sub.kind == CompactnessKind.COMPACT
            assert sub.ess_rank <= full.ess_rank
        if sub.kind == CompactnessKind.NOT_COMPACT:
            assert full.kind != CompactnessKind.COMPACT

    @settings(max_examples=200, deadline=None)
    @given(
        rows=st.lists(
            st.lists(st.floats(min_value=0.0, max_value=2.0), min_size=4, max_size=4),
            min_size=12,
            max_size=12,
        ),
        tol=st.floats(min_value=1e-8, max_value=1.0),
        factor=st.floats(min_value=1.0, max_value=100.0),
    )
    def test_monotone_in_tolerance(self, rows, tol, factor):
        """Loosening tol keeps Compact (with no larger rank); tightening it keeps NotCompact."""
        from src.asymptotics import CompactnessKind, SingularProfile, compactness_test

        descending = -np.sort(-np.array(rows), axis=1)
        profile = SingularProfile(
            horizon=16,
            k_max=4,
            ns=np.arange(5, 17),
            dims=np.full(12, 4),
            descending=descending,
            ascending=descending[:, ::-1].copy(),
        )
        tight = compactness_test(profile, tol=tol)
        loose = compactness_test(profile, tol=tol * factor)
        if tight.kind == CompactnessKind.COMPACT:
            assert loose.kind == CompactnessKind.COMPACT
            assert loose.ess_rank <= tight.ess_rank
        if loose.kind == CompactnessKind.NOT_COMPACT:
            assert tight.kind == CompactnessKind.NOT_COMPACT

    def test_needs_two_rows(self):
        """k_max = 1 cannot show a trend."""
        from src.asymptotics import compactness_test, singular_profile
        from src.errors import ConfigurationError
        from src.sequences import identity_sequence

        with pytest.raises(ConfigurationError):
            compactness_test(singular_profile(identity_sequence(), 32, 1))


class TestEssentialRank:
    """Test essential rank estimates."""

    def test_structured_sum_of_ranks(self, rng):
        """rank K + rank L under (1/n) I noise, over seeded cases."""
        from src.asymptotics import essential_rank, singular_profile
        from src.toeplitz import StructuredToeplitzSequence, Symbol, assemble

        for _ in range(20):
            r_k, r_l = (int(v) for v in rng.integers(0, 4, size=2))
            spec = StructuredToeplitzSequence(
                Symbol(),
                k_pert=random_low_rank(rng, 8, r_k) if r_k else None,
                l_pert=random_low_rank(rng, 8, r_l) if r_l else None,
                noise=decay_sequence(),
            )
            profile = singular_profile(assemble(spec), 128, 8)
            assert essential_rank(profile, tol=0.05) == r_k + r_l == spec.declared_rank

    def test_identity_infinite(self):
        """No Sigma_k row of the identity tends to zero."""
        from src.asymptotics import (
            INFINITE,
            essential_rank,
            essential_rank_report,
            singular_profile,
        )
        from src.sequences import identity_sequence

        profile = singular_profile(identity_sequence(), 32, 4)
        assert essential_rank(profile) == INFINITE
        assert essential_rank_report(profile).ess_rank is None

    def test_zero_sequence_rank_zero(self):
        """Sequences tending to zero have essential rank 0."""
        from src.asymptotics import essential_rank, singular_profile

        assert essential_rank(singular_profile(decay_sequence(), 64, 3)) == 0


class TestFredholm:
    """Test the Fredholm verdict from tail infima of sigma_k."""

    def test_identity_fredholm_zero(self):
        """sigma_1(I_n) = 1 gives Fredholm with k = 0."""
        from src.asymptotics import FredholmKind, fredholm_test, singular_profile
        from src.sequences import identity_sequence

        verdict = fredholm_test(singular_profile(identity_sequence(), 64, 3))
        assert verdict.kind == FredholmKind.FREDHOLM
        assert verdict.k == 0
        assert verdict.floor == pytest.approx(1.0)

    def test_shift_fredholm_one(self):
        """The shift loses one singular value: Fredholm(k=1) with floor 1."""
        from src.asymptotics import FredholmKind, fredholm_test, singular_profile
        from src.toeplitz import Symbol, section_sequence

        profile = singular_profile(section_sequence(Symbol.from_coeffs({1: 1.0})), 128, 4)
        verdict = fredholm_test(profile)
        assert verdict.kind == FredholmKind.FREDHOLM
        assert verdict.k == 1
        assert verdict.floor == pytest.approx(1.0)
        assert verdict.zero_rows[0]

    def test_vanishing_symbol_not_normally_solvable(self):
        """Every sigma_k of T_n(1 - t) tends to zero."""
        from src.asymptotics import FredholmKind, fredholm_test, singular_profile
        from src.toeplitz import Symbol, section_sequence

        profile = singular_profile(section_sequence(Symbol.from_coeffs({0: 1.0, 1: -1.0})), 512, 4)
        last = profile.ascending[-1]
        expected = [2 * math.sin((2 * k - 1) * math.pi / (2 * (2 * 512 + 1))) for k in range(1, 5)]
        assert last.tolist() == pytest.approx(expected, rel=1e-4)
        assert np.all(np.diff(last) > 0)

        verdict = fredholm_test(profile)
        assert verdict.kind == FredholmKind.NOT_NORMALLY_SOLVABLE
        assert all(verdict.zero_rows)

    def test_alternating_undecided(self, alternating):
        """sigma_1 jumps between 0 and 1: neither verdict applies."""
        from src.asymptotics import FredholmKind, fredholm_test, singular_profile

        verdict = fredholm_test(singular_profile(alternating, 64, 3))
        assert verdict.kind == FredholmKind.UNDECIDED
        assert not verdict.is_fredholm

    @settings(max_examples=30, deadline=None)
    @given(
        coeffs=st.dictionaries(
            st.integers(min_value=-1, max_value=1),
            st.sampled_from([0.0, 0.5, 1.0, -2.0]),
            max_size=3,
        ),
        k_diag=st.one_of(
            st.none(), st.lists(st.sampled_from([0.0, 1.0, 2.0]), min_size=2, max_size=2)
        ),
    )
    def test_compact_and_fredholm_exclusive(self, coeffs, k_diag):
        """With delta(n) = n a sequence is never both Compact and Fredholm."""
        from src.asymptotics import (
            CompactnessKind,
            FredholmKind,
            compactness_test,
            fredholm_test,
            singular_profile,
        )
        from src.toeplitz import StructuredToeplitzSequence, Symbol, assemble

        k_pert = None if k_diag is None else np.diag(k_diag)
        seq = assemble(StructuredToeplitzSequence(Symbol.from_coeffs(coeffs), k_pert=k_pert))
        assert seq.dims.filtration
        profile = singular_profile(seq, 32, 4)
        compact = compactness_test(profile).kind == CompactnessKind.COMPACT
        fredholm = fredholm_test(profile).kind == FredholmKind.FREDHOLM
        assert not (compact and fredholm)

    def test_report_replaces_nan(self):
        """Undefined infima serialize as null."""
        from src.asymptotics import fredholm_test, singular_profile
        from src.sequences import constant_sequence

        verdict = fredholm_test(singular_profile(constant_sequence(np.eye(2)), 32, 3))
        report = verdict.to_report()
        assert report.tail_infima[2] is None
        assert report.verdict == "fredholm"


class TestFractality:
    """Test norm and Hausdorff convergence diagnostics."""

    def test_hausdorff_distance(self):
        """Distances between finite sets."""
        from src.asymptotics import hausdorff_distance

        assert hausdorff_distance([0.0, 1.0], [0.0]) == 1.0
        assert hausdorff_distance([0.0, 1.0], [1.0, 0.0]) == 0.0
        assert hausdorff_distance([], []) == 0.0
        assert math.isinf(hausdorff_distance([], [1.0]))

    def test_identity_converges(self):
        """I_n has constant norm and singular value set {1}."""
        from src.asymptotics import fractality_diagnostics
        from src.sequences import identity_sequence

        diag = fractality_diagnostics(identity_sequence(), 64)
        assert diag.norm_oscillation == pytest.approx(0.0, abs=1e-12)
        assert diag.hausdorff_drift == pytest.approx(0.0, abs=1e-12)
        assert diag.sample_indices[0] == 32
        assert diag.sample_indices[-1] == 64

    def test_alternating_oscillates(self):
        """Odd and even sampled indices disagree by 1."""
        from src.asymptotics import fractality_diagnostics
        from src.sequences import alternate, identity_sequence, zero_sequence

        seq = alternate(identity_sequence(), zero_sequence())
        diag = fractality_diagnostics(seq, 64, samples=33)
        assert diag.norm_oscillation == pytest.approx(1.0)
        assert diag.hausdorff_drift == pytest.approx(1.0)

    def test_needs_two_samples(self, tridiagonal):
        """One sample cannot show oscillation."""
        from src.asymptotics import fractality_diagnostics
        from src.errors import ConfigurationError

        with pytest.raises(ConfigurationError):
            fractality_diagnostics(tridiagonal, 64, samples=1)
