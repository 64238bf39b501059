"""Gap lower bounds: formulas in exact arithmetic, hypotheses, graph variants."""

from fractions import Fraction

import numpy as np
import pytest

from cayleygap import (
    GroupSubset,
    RegularGraph,
    basis_bound_value,
    convolve,
    diameter,
    diameter_bound_value,
    exceptional_bound_value,
    exceptional_set,
    graph_lambda1,
    graph_paths,
    iterated_convolution,
    lambda1,
    make_group,
    rep_count,
    symmetrized_rep_count,
    verify_basis_bound,
    verify_diameter_bound,
    verify_exceptional_bound,
    verify_exceptional_bound_pair,
    verify_exceptional_bound_star,
    verify_fourier_norm_bound,
    verify_graph_bound,
    verify_uniformity,
)
from cayleygap.bounds import BoundReport
from cayleygap.errors import EmptySet, HypothesisFail, NotRegular
from cayleygap.sampling import random_nonempty_subset, random_symmetric_subset


def circulant_graph(n, connection):
    adj = np.zeros((n, n), dtype=int)
    for i in range(n):
        for c in connection:
            adj[i, (i + c) % n] = 1
    return RegularGraph(adj)


class TestRepCount:
    def test_first_power_is_indicator(self, z7):
        b = GroupSubset.from_indices(z7, [1, 3])
        assert np.array_equal(rep_count(b, 1).values, b.membership.astype(np.int64))

    def test_hand_case_z4(self):
        z4 = make_group("cyclic(4)")
        b = GroupSubset.from_indices(z4, [0, 1])
        assert rep_count(b, 2).values.tolist() == [1, 2, 1, 0]

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
    def test_mass_conservation(self, d, d6, rng):
        b = random_nonempty_subset(d6, rng)
        assert int(rep_count(b, d).values.sum()) == b.size**d

    def test_empty_rejected(self, z5):
        with pytest.raises(EmptySet):
            rep_count(GroupSubset.empty(z5), 2)


class TestExceptionalSet:
    def test_basis_has_empty_exceptional_set(self, z7):
        b = GroupSubset.from_indices(z7, [0, 1, 2, 4])
        assert exceptional_set(b, 2, 1).size == 0

    def test_hand_case_z4(self):
        z4 = make_group("cyclic(4)")
        b = GroupSubset.from_indices(z4, [0, 1])
        omega = exceptional_set(b, 2, 1)
        assert sorted(int(i) for i in omega.indices) == [3]

    def test_threshold_above_everything(self, z5):
        b = GroupSubset.from_indices(z5, [0, 1])
        assert exceptional_set(b, 2, b.size**2 + 1).size == 5


class TestBasisAndDiameterBounds:
    def test_exact_values_z7(self, z7):
        s = GroupSubset.from_indices(z7, [0, 1, 2, 4])
        d = diameter(s)
        assert d == 2
        assert diameter_bound_value(s.size, d) == Fraction(1, 32)
        assert basis_bound_value(7, s.size, d) == Fraction(7, 32)
        r1 = verify_diameter_bound(s, d)
        r2 = verify_basis_bound(s, d)
        assert r1.holds and r2.holds
        assert r1.bound_value == 0.03125
        assert r2.bound_value == 0.21875

    def test_complete_graph_case(self, d6):
        s = GroupSubset.full(d6)
        report = verify_basis_bound(s, 1)
        assert report.bound_exact == Fraction(1)
        assert abs(report.measured - 1.0) < 1e-9
        assert report.holds

    def test_better_than_diameter_bound_for_economical_bases(self, rng):
        # whenever |S|^(d-1) < 2 d |G| the basis form beats the diameter form
        confirmed = 0
        for n in (13, 17, 23):
            group = make_group(f"cyclic({n})")
            for _ in range(5):
                s = random_nonempty_subset(group, rng, max_size=n // 2)
                try:
                    d = diameter(s)
                except Exception:
                    continue
                if s.size ** (d - 1) < 2 * d * n:
                    assert basis_bound_value(n, s.size, d) > diameter_bound_value(s.size, d)
                    confirmed += 1
        assert confirmed >= 5


class TestExceptionalBound:
    def test_hand_case_negative_vacuous(self):
        z4 = make_group("cyclic(4)")
        b = GroupSubset.from_indices(z4, [0, 1])
        omega = exceptional_set(b, 2, 1)
        report = verify_exceptional_bound(b, 2, 1, omega)
        assert report.bound_exact == Fraction(-5, 18)
        assert report.verdict == "vacuous-pass"

    def test_perfect_equidistribution_gives_inverse_d(self):
        z4 = make_group("cyclic(4)")
        full = GroupSubset.full(z4)
        report = verify_exceptional_bound(full, 2, full.size**2 / 4)
        assert report.bound_exact == Fraction(1, 2)
        assert report.holds

    def test_empty_omega_reduces_to_basis_bound(self, z7):
        b = GroupSubset.from_indices(z7, [0, 1, 2, 4])
        report = verify_exceptional_bound(b, 2, 1)
        assert report.bound_exact == basis_bound_value(7, b.size, 2)

    def test_hypothesis_checked(self, z7):
        b = GroupSubset.from_indices(z7, [0, 1])
        with pytest.raises(HypothesisFail):
            verify_exceptional_bound(b, 2, 1)  # 2-fold sums miss elements

    def test_monotone_in_omega(self, z7):
        b = GroupSubset.from_indices(z7, [0, 1, 2, 4])
        values = []
        for omega_size in range(0, 4):
            value, _ = exceptional_bound_value(7, b.size, 2, 1, omega_size)
            values.append(value)
        assert all(x >= y for x, y in zip(values, values[1:]))

    def test_star_form(self, d6, rng):
        for _ in range(5):
            b = random_nonempty_subset(d6, rng)
            counts = symmetrized_rep_count(b, 2).values.real
            omega = GroupSubset(d6, (counts < 1).astype(np.int8))
            report = verify_exceptional_bound_star(b, 2, 1, omega)
            assert report.holds

    def test_pair_form(self, z12, rng):
        b1 = random_nonempty_subset(z12, rng)
        b2 = random_nonempty_subset(z12, rng)
        conv = convolve(b1.indicator(), b2.indicator())
        pair_counts = iterated_convolution(conv, 2).values.real
        omega = GroupSubset(z12, (pair_counts < 1).astype(np.int8))
        report = verify_exceptional_bound_pair(b1, b2, 2, 1, omega)
        assert report.holds


class TestFourierNormBound:
    def test_full_group(self, z7):
        report = verify_fourier_norm_bound(GroupSubset.full(z7), 1, 7)
        assert report.bound_value == 0.0
        assert report.measured < 1e-9
        assert report.holds

    def test_z7_hand_case(self, z7):
        b = GroupSubset.from_indices(z7, [0, 1, 3, 5])
        report = verify_fourier_norm_bound(b, 2, 1)
        assert report.holds

    def test_hypothesis_violated(self, z7):
        b = GroupSubset.from_indices(z7, [0])
        with pytest.raises(HypothesisFail):
            verify_fourier_norm_bound(b, 2, 2)


class TestUniformity:
    def test_full_group_zero_deviation(self, z7):
        report = verify_uniformity(GroupSubset.full(z7), 2, 3)
        assert report.measured < 1e-9
        assert report.holds

    @pytest.mark.parametrize("k", [0, 2, 8])
    def test_random_basis_z101(self, k, rng):
        group = make_group("cyclic(101)")
        from cayleygap.sampling import random_subset

        b = random_subset(group, 30, rng)
        for _ in range(50):
            if symmetrized_rep_count(b, 2).values.real.min() >= 1:
                break
            b = random_subset(group, 30, rng)
        else:
            pytest.fail("no covering random set found")
        report = verify_uniformity(b, 2, k)
        assert report.holds

    def test_hypothesis_checked(self, z7):
        b = GroupSubset.from_indices(z7, [0])
        with pytest.raises(HypothesisFail):
            verify_uniformity(b, 2, 2)


class TestGraphs:
    def test_complete_graph_with_loops(self):
        graph = RegularGraph(np.ones((5, 5), dtype=int))
        report = verify_graph_bound(graph, 1, 1)
        assert report.bound_value == 1.0
        assert abs(report.measured - 1.0) < 1e-9
        assert report.holds

    def test_cycle_fails_hypothesis(self):
        graph = circulant_graph(5, (1, 4))
        assert graph_paths(graph, 2).min() == 0
        with pytest.raises(HypothesisFail):
            verify_graph_bound(graph, 2, 1)

    def test_random_circulant(self):
        # mixed-parity connection set keeps the graph non-bipartite, so some
        # power of the adjacency matrix is strictly positive
        graph = circulant_graph(32, (1, 31, 2, 30))
        d = 1
        while graph_paths(graph, d).min() < 1:
            d += 1
            assert d <= 32
        report = verify_graph_bound(graph, d, int(graph_paths(graph, d).min()))
        assert report.holds

    def test_complete_graph_without_loops(self):
        n = 9
        graph = RegularGraph(np.ones((n, n), dtype=int) - np.eye(n, dtype=int))
        report = verify_graph_bound(graph, 2, n - 2)
        # nontrivial eigenvalues of I - A/(n-1) all equal n/(n-1)
        assert abs(report.measured - n / (n - 1)) < 1e-9
        assert report.holds

    def test_petersen_graph(self):
        # girth 5: adjacent vertices share no common neighbor, so depth 2
        # fails the path hypothesis; the primitive power covers later
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        adj = np.zeros((10, 10), dtype=int)
        for a, b in outer + inner + spokes:
            adj[a, b] = adj[b, a] = 1
        graph = RegularGraph(adj)
        with pytest.raises(HypothesisFail):
            verify_graph_bound(graph, 2, 1)
        d = 3
        while graph_paths(graph, d).min() < 1:
            d += 1
            assert d <= 10
        report = verify_graph_bound(graph, d, int(graph_paths(graph, d).min()))
        assert report.holds

    def test_not_regular_rejected(self):
        adj = np.zeros((3, 3), dtype=int)
        adj[0, 1] = adj[1, 0] = adj[1, 2] = adj[2, 1] = 1
        with pytest.raises(NotRegular):
            RegularGraph(adj)
        with pytest.raises(NotRegular):
            RegularGraph(2 * np.ones((3, 3), dtype=int))

    def test_graph_lambda1_matches_cayley(self, z12, rng):
        s = random_symmetric_subset(z12, 3, rng)
        graph = RegularGraph(np.asarray(s.membership[z12.conv_index], dtype=int))
        assert abs(graph_lambda1(graph) - lambda1(s)) < 1e-9


class TestBoundReport:
    def test_slack_and_holds(self):
        r = BoundReport(bound_name="x", bound_value=0.5, measured=0.6)
        assert r.slack == pytest.approx(0.1)
        assert r.holds and r.verdict == "pass"
        r2 = BoundReport(bound_name="x", bound_value=0.5, measured=0.4)
        assert not r2.holds and r2.verdict == "fail"
        r3 = BoundReport(bound_name="x", bound_value=-0.1, measured=0.0, vacuous=True)
        assert r3.verdict == "vacuous-pass"

    def test_upper_sense(self):
        r = BoundReport(bound_name="x", bound_value=1.0, measured=0.9, sense="<=")
        assert r.slack == pytest.approx(0.1)
        assert r.holds

    def test_tolerance_boundary(self):
        r = BoundReport(bound_name="x", bound_value=0.5, measured=0.5 - 5e-10)
        assert r.holds
        r2 = BoundReport(bound_name="x", bound_value=0.5, measured=0.5 - 5e-9)
        assert not r2.holds
