from unittest.mock import MagicMock

import pytest

from kemenyqa.core.baselines import brute_force
from kemenyqa.core.cycles import Cycle, detect_cycles
from kemenyqa.core.datagen import GenSpec, gen_synthetic
from kemenyqa.core.ranking import Dataset, ListKind, Ranking
from kemenyqa.errors import InvalidArgumentError, PairRemovalError
from kemenyqa.samplers import SaParams, SimulatedAnnealingSampler
from kemenyqa.solvers import (
    CycleLoop, IterOptions, resolve_parity, solve_base, solve_iterative, solve_pair_removal,
)


class TestResolveParity:
    def test_follows_total_weight(self, d3):
        assert resolve_parity(d3) == "odd"
        assert resolve_parity(Dataset.from_orders([(0, 1)] * 4, 2)) == "even"

    def test_explicit_value_wins(self, d3):
        assert resolve_parity(d3, "even") == "even"
        assert resolve_parity(d3, "auto") == "odd"

    def test_fractional_weights_use_even(self):
        ds = Dataset.from_orders([(0, 1), (1, 0)], 2, weights=[1.5, 1.0])
        assert resolve_parity(ds) == "even"


class TestBase:
    def test_d3(self, d3, exact, d3_rotations):
        solution = solve_base(d3, exact)
        assert solution.method == "base"
        assert solution.ranking.order in d3_rotations
        assert solution.cumulative_kt == 4
        assert solution.converged
        assert solution.iterations == 1
        assert solution.ledger == {}

    def test_unanimous(self, unanimous, exact):
        solution = solve_base(unanimous, exact)
        assert solution.ranking == Ranking((0, 1, 2))
        assert solution.cumulative_kt == 0

    @pytest.mark.parametrize("parity, penalty", [(None, 1.5), ("odd", 1.5), ("even", 3.5)])
    def test_parity_sets_the_uniform_penalty(self, unanimous, exact, parity, penalty):
        spy = MagicMock(wraps=exact)
        solution = solve_base(unanimous, spy, parity=parity)
        qubo = spy.sample.call_args[0][0]
        # x_02 carries its bias of -3 plus the penalty
        assert qubo.linear[qubo.index_of((0, 2))] == pytest.approx(penalty - 3)
        assert solution.cumulative_kt == 0

    def test_two_candidates(self, exact):
        solution = solve_base(Dataset.from_orders([(1, 0)], 2), exact)
        assert solution.ranking == Ranking((1, 0))
        assert solution.cumulative_kt == 0

    def test_single_candidate(self, exact):
        solution = solve_base(Dataset.from_orders([(0,)] * 3, 1), exact)
        assert solution.ranking == Ranking((0,))
        assert solution.converged


class TestIterative:
    def test_d3_converges_in_one_round(self, d3, exact):
        solution = solve_iterative(d3, exact)
        assert solution.iterations == 1
        assert solution.ledger == {"0,1,2": 1.5}
        assert solution.ranking == Ranking((1, 2, 0))
        assert solution.cumulative_kt == 4
        assert solution.converged

    def test_unanimous_needs_no_penalties(self, unanimous, exact):
        solution = solve_iterative(unanimous, exact)
        assert solution.iterations == 1
        assert solution.ledger == {}
        assert solution.ranking == Ranking((0, 1, 2))

    def test_small_initial_penalty_is_raised(self, d3, exact):
        solution = solve_iterative(d3, exact, IterOptions(parity="even"))
        assert solution.iterations == 2
        assert solution.ledger == {"0,1,2": 2.5}
        assert solution.converged
        assert solution.cumulative_kt == 4
        assert solution.trace[0].bumped_cycles == 1
        assert solution.trace[0].best_energy == -1.5

    def test_non_convergence_is_reported(self, d3, exact):
        solution = solve_iterative(d3, exact, IterOptions(parity="even", max_iterations=1))
        assert not solution.converged
        assert solution.iterations == 1
        assert solution.ledger == {"0,1,2": 0.5}

    def test_converged_output_is_acyclic(self, exact):
        for seed in range(5):
            ds = gen_synthetic(GenSpec(n=6, votes=9, seed=seed))
            solution = solve_iterative(ds, exact)
            assert solution.converged
            assert detect_cycles(solution.bits) == set()

    def test_ledger_never_shrinks(self, exact):
        ds = gen_synthetic(GenSpec(n=7, votes=8, seed=4))
        solution = solve_iterative(ds, exact, IterOptions(parity="even", initial_penalty="minimal"))
        sizes = [record.ledger_size for record in solution.trace]
        assert sizes == sorted(sizes)

    def test_matches_brute_force(self, exact):
        for seed in range(6):
            ds = gen_synthetic(GenSpec(n=6, votes=11, seed=100 + seed))
            assert solve_iterative(ds, exact).cumulative_kt == brute_force(ds).min_kt

    def test_double_check_and_pruning(self, exact):
        ds = gen_synthetic(GenSpec(n=6, votes=11, seed=7))
        plain = solve_iterative(ds, exact)
        checked = solve_iterative(ds, exact, IterOptions(double_check=2, prune_k=1))
        assert checked.converged
        assert checked.cumulative_kt == plain.cumulative_kt

    def test_deterministic_with_annealing(self):
        ds = gen_synthetic(GenSpec(n=6, votes=11, seed=21))
        sampler = SimulatedAnnealingSampler(SaParams(reads=200, sweeps=50))
        opts = IterOptions(seed=5)
        assert solve_iterative(ds, sampler, opts) == solve_iterative(ds, sampler, opts)

    def test_single_candidate(self, exact):
        solution = solve_iterative(Dataset.from_orders([(0,)] * 5, 1), exact)
        assert solution.ranking == Ranking((0,))
        assert solution.cumulative_kt == 0


class TestCycleLoop:
    def test_bias_scaled_initial_penalty(self, d3, exact):
        loop = CycleLoop(d3, exact, IterOptions(parity="even", initial_penalty="bias-scaled"))
        assert loop.ledger[Cycle(0, 1, 2)] == 1.5

    def test_partial_votes_scale_penalties_by_bias(self, exact):
        ds = Dataset.from_orders([(0, 1), (1, 2)], 3, ListKind.PARTIAL)
        loop = CycleLoop(ds, exact)
        assert loop.bias_scaled
        assert loop.increment == 1.0

    def test_balanced_votes_use_minimal_penalties(self, d3, exact):
        loop = CycleLoop(d3, exact)
        assert not loop.bias_scaled
        assert loop.increment == 2.0

    def test_update_ledger_adds_and_raises(self, d3, exact):
        loop = CycleLoop(d3, exact)
        assert loop.update_ledger({Cycle(0, 1, 2)}) == (0, 1)
        assert loop.ledger[Cycle(0, 1, 2)] == 3.5

    def test_unknown_mode(self, d3, exact):
        with pytest.raises(InvalidArgumentError):
            CycleLoop(d3, exact, mode="greedy")


class TestPairRemoval:
    def test_stall_reinstates_pairs(self, unanimous4, exact):
        solution = solve_pair_removal(unanimous4, exact, "prhb", 2)
        assert solution.method == "pair-removal"
        assert solution.removed_pairs == ((0, 1), (0, 2))
        assert solution.restarts == 1
        assert solution.iterations == 2
        assert solution.ranking == Ranking((0, 1, 2, 3))
        assert solution.cumulative_kt == 0

    def test_removed_pair_is_inferred(self, unanimous4, exact):
        solution = solve_pair_removal(unanimous4, exact, "promega", 1)
        assert solution.removed_pairs == ((0, 3),)
        assert solution.restarts == 0
        assert solution.ranking == Ranking((0, 1, 2, 3))

    def test_minmax_penalties(self, unanimous4, exact):
        solution = solve_pair_removal(unanimous4, exact, "promega", 1, penalty_mode="minmax")
        assert solution.ranking == Ranking((0, 1, 2, 3))
        assert solution.converged

    def test_exhausted_restarts_raise(self, unanimous4, exact):
        with pytest.raises(PairRemovalError) as excinfo:
            solve_pair_removal(unanimous4, exact, "prhb", 2, IterOptions(max_restarts=0))
        assert excinfo.value.best is None

    def test_zero_count_is_the_plain_pipeline(self, exact):
        ds = gen_synthetic(GenSpec(n=5, votes=7, seed=2))
        opts = IterOptions(seed=3)
        assert solve_pair_removal(ds, exact, "prhb", 0, opts) == solve_iterative(ds, exact, opts)

    def test_nothing_removable_in_a_full_cycle(self, d3, exact):
        assert solve_pair_removal(d3, exact, "prhb", 1) == solve_iterative(d3, exact)

    def test_unknown_strategy(self, d3, exact):
        with pytest.raises(InvalidArgumentError):
            solve_pair_removal(d3, exact, "random", 1)

    @pytest.mark.parametrize("strategy", ["prhb", "promega"])
    def test_matches_iterative(self, exact, strategy):
        for seed in range(4):
            ds = gen_synthetic(GenSpec(n=6, votes=11, seed=200 + seed))
            expected = solve_iterative(ds, exact).cumulative_kt
            for count in (1, 3):
                solution = solve_pair_removal(ds, exact, strategy, count)
                assert solution.converged
                assert solution.cumulative_kt == expected
