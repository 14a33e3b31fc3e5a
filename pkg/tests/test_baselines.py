import numpy as np
import pytest

from kemenyqa.core.baselines import brute_force, kwiksort, kwiksort_reachable, ranking_costs
from kemenyqa.core.datagen import GenSpec, gen_synthetic
from kemenyqa.core.pairwise import build_comparison
from kemenyqa.core.ranking import Dataset, Ranking, cumulative_kt
from kemenyqa.errors import ProblemTooLargeError
from kemenyqa.utils.parallel import ParallelProcessor


def first_pivot(pivot):
    return lambda items: pivot if pivot in items else items[0]


class TestBruteForce:
    def test_d3(self, d3, d3_rotations):
        oracle = brute_force(d3)
        assert oracle.min_kt == 4
        assert {r.order for r in oracle.optima} == d3_rotations

    def test_unanimous(self, unanimous):
        oracle = brute_force(unanimous)
        assert oracle.min_kt == 0
        assert oracle.optima == frozenset({Ranking((0, 1, 2))})

    def test_single_candidate(self):
        oracle = brute_force(Dataset.from_orders([(0,)], 1))
        assert oracle.min_kt == 0
        assert oracle.to_dict() == {"min_kt": 0, "optima": [[0]]}

    def test_kwiksort_trap(self, kwiksort_trap):
        oracle = brute_force(kwiksort_trap)
        assert oracle.min_kt == 41
        assert oracle.optima == frozenset({Ranking((2, 3, 0, 1, 4))})

    def test_cap(self):
        ds = gen_synthetic(GenSpec(n=10, votes=3, seed=0))
        with pytest.raises(ProblemTooLargeError):
            brute_force(ds, cap=9)

    def test_serial_and_threaded_agree(self):
        ds = gen_synthetic(GenSpec(n=8, votes=5, seed=1))
        serial = brute_force(ds, processor=ParallelProcessor(num_workers=1))
        threaded = brute_force(ds, processor=ParallelProcessor(num_workers=4))
        assert serial == threaded

    def test_ranking_costs_match_cumulative_kt(self, d3):
        orders = np.array([[0, 1, 2], [2, 1, 0], [1, 0, 2]])
        costs = ranking_costs(build_comparison(d3), orders)
        assert list(costs) == [cumulative_kt(d3, Ranking(tuple(o))) for o in orders]


class TestKwiksort:
    @pytest.mark.parametrize("pivot, expected", [(1, (0, 1, 2)), (0, (2, 0, 1)), (2, (1, 2, 0))])
    def test_d3_pivots(self, d3, pivot, expected):
        assert kwiksort(build_comparison(d3), pivot_rule=first_pivot(pivot)).order == expected

    def test_unanimous_any_seed(self, unanimous):
        pm = build_comparison(unanimous)
        assert all(kwiksort(pm, seed=s) == Ranking((0, 1, 2)) for s in range(20))

    def test_seeded(self):
        pm = build_comparison(gen_synthetic(GenSpec(n=8, votes=6, seed=3)))
        assert kwiksort(pm, seed=12) == kwiksort(pm, seed=12)
        assert sorted(kwiksort(pm, seed=12).order) == list(range(8))


class TestReachable:
    def test_d3(self, d3, d3_rotations):
        assert {r.order for r in kwiksort_reachable(build_comparison(d3))} == d3_rotations

    def test_unanimous(self, unanimous):
        assert kwiksort_reachable(build_comparison(unanimous)) == frozenset({Ranking((0, 1, 2))})

    def test_ties_reach_both_orders(self):
        pm = build_comparison(Dataset.from_orders([(0, 1), (1, 0)], 2))
        assert {r.order for r in kwiksort_reachable(pm)} == {(0, 1), (1, 0)}

    def test_trap_misses_the_optimum(self, kwiksort_trap):
        pm = build_comparison(kwiksort_trap)
        reachable = kwiksort_reachable(pm)
        assert Ranking((2, 3, 0, 1, 4)) not in reachable
        assert min(cumulative_kt(kwiksort_trap, r) for r in reachable) == 42
        assert Ranking((0, 2, 1, 3, 4)) in reachable

    def test_random_runs_stay_reachable(self, kwiksort_trap):
        pm = build_comparison(kwiksort_trap)
        reachable = kwiksort_reachable(pm)
        assert all(kwiksort(pm, seed=s) in reachable for s in range(50))

    def test_cap(self):
        pm = build_comparison(gen_synthetic(GenSpec(n=9, votes=3, seed=0)))
        with pytest.raises(ProblemTooLargeError):
            kwiksort_reachable(pm, cap=8)
