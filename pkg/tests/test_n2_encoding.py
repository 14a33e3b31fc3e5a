import itertools

import pytest

from kemenyqa.core.baselines import brute_force
from kemenyqa.core.datagen import GenSpec, gen_synthetic, unanimous_dataset
from kemenyqa.core.n2_encoding import build_n2_qubo
from kemenyqa.core.pairwise import build_comparison
from kemenyqa.core.ranking import Dataset, ListKind, Ranking, cumulative_kt
from kemenyqa.errors import DecodeError, InvalidArgumentError
from kemenyqa.samplers import exact_solve


def test_penalty_scales_with_size(d3):
    enc = build_n2_qubo(build_comparison(d3), 3)
    assert enc.penalty == 27
    assert enc.qubo.num_vars == 9


def test_unanimous_pair_decodes_to_the_vote():
    ds = unanimous_dataset([0, 1], votes=2)
    enc = build_n2_qubo(build_comparison(ds), 2)
    best = exact_solve(enc.qubo).best()
    assert best.energy == 0
    assert enc.decode(best.config) == Ranking((0, 1))


def test_feasible_energy_is_cumulative_kt(d3):
    enc = build_n2_qubo(build_comparison(d3), 3)
    for order in itertools.permutations(range(3)):
        r = Ranking(order)
        assert enc.qubo.energy(enc.encode(r)) == cumulative_kt(d3, r)
    assert enc.qubo.energy(enc.encode(Ranking((0, 1, 2)))) == 4


def test_ground_states_are_optimal_rankings(d3, d3_rotations):
    enc = build_n2_qubo(build_comparison(d3), 3)
    sample = exact_solve(enc.qubo)
    assert sample.lowest_energy == 4
    assert {enc.decode(r.config).order for r in sample.ground_states()} == d3_rotations


def test_infeasible_configuration_costs_at_least_the_penalty(d3):
    enc = build_n2_qubo(build_comparison(d3), 3)
    assert enc.qubo.energy((0,) * 9) == 6 * enc.penalty


def test_decode_rejects_non_permutation(d3):
    enc = build_n2_qubo(build_comparison(d3), 3)
    config = list(enc.encode(Ranking((0, 1, 2))))
    config[enc.variable(0, 1)] = 1
    with pytest.raises(DecodeError):
        enc.decode(config)


def test_requires_complete_unweighted_votes():
    partial = Dataset.from_orders([(0, 1), (1, 2)], 3, ListKind.PARTIAL)
    with pytest.raises(InvalidArgumentError):
        build_n2_qubo(build_comparison(partial), 2)
    weighted = Dataset.from_orders([(0, 1), (1, 0)], 2, weights=[1.5, 1])
    with pytest.raises(InvalidArgumentError):
        build_n2_qubo(build_comparison(weighted), 2)


@pytest.mark.parametrize("seed", range(10))
def test_exact_decoding_finds_the_optimum(seed):
    ds = gen_synthetic(GenSpec(n=4, votes=5 + 2 * (seed % 3), seed=4000 + seed))
    enc = build_n2_qubo(build_comparison(ds), len(ds.votes))
    oracle = brute_force(ds)
    sample = exact_solve(enc.qubo)
    assert sample.lowest_energy == pytest.approx(oracle.min_kt)
    decoded = {enc.decode(r.config) for r in sample.ground_states()}
    assert decoded <= set(oracle.optima)
    assert all(cumulative_kt(ds, r) == oracle.min_kt for r in decoded)
