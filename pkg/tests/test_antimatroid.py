from __future__ import annotations

import pytest

from conftest import monotone_table
from decgreedy.core import BudgetExceededError, SequenceAlgorithm
from decgreedy.degeneracy import DegreeInstance, SimpleGraph
from decgreedy.greedy import (
    TableInstance, antimatroid_instance, check_antimatroid, check_t_invariant, decremental_greedy,
    enumerate_removal_sequences, improvement_chain
)


def triangle_with_pendant() -> DegreeInstance:
    return DegreeInstance(SimpleGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]))


class TestCheckAntimatroid:
    def test_symmetric_pair(self):
        assert check_antimatroid([[0, 1], [1, 0]])

    def test_unavailable_first_element(self):
        assert check_antimatroid([[0, 1]])

    def test_order_dependent_availability(self):
        # 2 is available after 0, 1 but not after 1, 0
        check = check_antimatroid([[0, 1, 2], [1, 0, 3, 2]])
        assert not check
        assert 'remove the same set' in check.counterexample

    def test_lost_availability(self):
        # 1 is available at the start but no longer once 0 is gone
        check = check_antimatroid([[1, 0], [0, 2, 1], [2, 0, 1]])
        assert not check

    def test_repeated_element(self):
        assert not check_antimatroid([[0, 0]])


class TestRemovalSequences:
    def test_single_element(self):
        instance = TableInstance(1, {(0, frozenset({0})): 1})
        assert enumerate_removal_sequences(instance) == {(0,)}
        assert enumerate_removal_sequences(instance, SequenceAlgorithm.KNOWN_BETA) == {()}

    def test_pendant_goes_first(self):
        sequences = enumerate_removal_sequences(triangle_with_pendant())
        assert all(seq[0] == 3 for seq in sequences)

        # known-beta stops at the triangle, the 2-core
        assert enumerate_removal_sequences(triangle_with_pendant(), 'known_beta') == {(3,)}

    def test_greedy_sequences_form_antimatroid(self, rng):
        for _ in range(100):
            instance = monotone_table(rng, int(rng.integers(1, 6)))
            for algorithm in SequenceAlgorithm:
                sequences = enumerate_removal_sequences(instance, algorithm)
                assert check_antimatroid(sequences), (algorithm, sequences)

    def test_known_beta_ends_at_maximal_subset(self, rng):
        for _ in range(30):
            instance = monotone_table(rng, int(rng.integers(1, 6)))
            _, subset, _ = decremental_greedy(instance.clone())
            for seq in enumerate_removal_sequences(instance, SequenceAlgorithm.KNOWN_BETA):
                assert set(range(instance.size)) - set(seq) == subset

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            enumerate_removal_sequences(DegreeInstance(SimpleGraph.complete(8)))


class TestImprovementChain:
    def test_chain_ends_at_maximal_subset(self, rng):
        for _ in range(50):
            instance = monotone_table(rng, int(rng.integers(1, 7)))
            chain = improvement_chain(instance)
            assert chain[0] == frozenset(range(instance.size))
            assert all(b <= a for a, b in zip(chain, chain[1:]))
            assert chain[-1] == decremental_greedy(instance.clone()).maximal_subset

    def test_t_invariant(self, rng):
        for _ in range(50):
            instance = monotone_table(rng, int(rng.integers(1, 6)))
            assert check_t_invariant(instance, enumerate_removal_sequences(instance))

    def test_k4_chain(self):
        assert improvement_chain(DegreeInstance(SimpleGraph.complete(4))) == [frozenset(range(4))]


class TestAntimatroidInstance:
    @pytest.mark.parametrize('family', [
        [[0, 1], [1, 0]],
        [[0, 1, 2], [0, 2, 1], [2, 0, 1]],
        [[0, 1, 2, 3], [0, 2, 1, 3], [2, 0, 1, 3], [0, 2, 3, 1], [2, 0, 3, 1], [2, 3, 0, 1]],
    ])
    def test_reproduces_family(self, family):
        assert check_antimatroid(family)
        instance = antimatroid_instance(family)
        expected = {tuple(seq) for seq in family}

        assert enumerate_removal_sequences(instance) == expected
        assert enumerate_removal_sequences(instance, SequenceAlgorithm.KNOWN_BETA, beta=1) == expected

    def test_greedy_family_round_trip(self, rng):
        for _ in range(20):
            instance = monotone_table(rng, int(rng.integers(2, 5)))
            family = enumerate_removal_sequences(instance)
            assert enumerate_removal_sequences(antimatroid_instance(family)) == family
