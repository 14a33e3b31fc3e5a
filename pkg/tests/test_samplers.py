"""Tests for the exhaustive and annealing samplers."""
import itertools

import pytest

from kemenyqa.core.datagen import GenSpec, gen_synthetic
from kemenyqa.core.pairwise import bias_of, build_comparison, represent
from kemenyqa.core.qubo import Qubo, build_base_qubo, select_penalty
from kemenyqa.core.ranking import Ranking
from kemenyqa.errors import InvalidArgumentError, ProblemTooLargeError
from kemenyqa.samplers import (
    ExactSampler, SampleRecord, SampleSet, SaParams, SimulatedAnnealingSampler, exact_solve, sa_solve,
)
from kemenyqa.utils.parallel import ParallelProcessor


def base_qubo(ds):
    b = bias_of(build_comparison(ds))
    return build_base_qubo(b, select_penalty(b, ds.total_weight, "odd"))


class TestExact:
    def test_d3_ground_states(self, d3):
        sample = exact_solve(base_qubo(d3))
        assert len(sample) == 3
        assert sample.lowest_energy == -1
        assert sample.best().config == (0, 0, 1)

    def test_single_variable(self):
        sample = exact_solve(Qubo(1, linear={0: -1.0}))
        assert [(r.config, r.energy) for r in sample] == [((1,), -1.0)]

    def test_no_variables(self):
        sample = exact_solve(Qubo(0, offset=2.0))
        assert sample.best().config == ()
        assert sample.lowest_energy == 2.0

    def test_cap(self):
        with pytest.raises(ProblemTooLargeError):
            exact_solve(Qubo(25), cap=24)
        assert not ExactSampler(cap=3).fits(Qubo(4))

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("KEMENY_QA_EXACT_CAP", "2")
        with pytest.raises(ProblemTooLargeError):
            ExactSampler().sample(Qubo(3))

    def test_matches_enumeration_on_random_qubo(self):
        ds = gen_synthetic(GenSpec(n=6, votes=7, seed=3))
        qubo = base_qubo(ds)
        sample = exact_solve(qubo)
        brute = min(qubo.energy(c) for c in itertools.product((0, 1), repeat=qubo.num_vars))
        assert sample.lowest_energy == pytest.approx(brute)
        assert all(r.energy == pytest.approx(brute) for r in sample)


class TestSampleSet:
    def test_best_prefers_occurrences_then_smallest_config(self):
        records = (
            SampleRecord((1, 0), -1.0, 2),
            SampleRecord((0, 1), -1.0, 5),
            SampleRecord((0, 0), -1.0, 5),
            SampleRecord((1, 1), 0.0, 9),
        )
        sample = SampleSet(records, "test", 21)
        assert sample.best().config == (0, 0)
        assert sample.ground_occurrences() == 12
        assert sample.occurrences_of([(1, 1), (1, 0)]) == 11

    def test_from_configs_aggregates(self):
        qubo = Qubo(2, linear={0: -1.0})
        sample = SampleSet.from_configs(qubo, [[1, 0], [1, 0], [0, 1]], "test")
        assert sample.reads == 3
        assert [(r.config, r.num_occ) for r in sample] == [((1, 0), 2), ((0, 1), 1)]

    def test_to_dict_limit(self, d3):
        data = exact_solve(base_qubo(d3)).to_dict(limit=1)
        assert data["backend"] == "exact"
        assert len(data["records"]) == 1


class TestAnnealing:
    def test_params_validation(self):
        with pytest.raises(InvalidArgumentError):
            SaParams(reads=0)
        with pytest.raises(InvalidArgumentError):
            SaParams(beta_range=(1.0, 0.5))
        assert SaParams(reads=1200, batch_size=500).batches() == [500, 500, 200]

    def test_auto_beta_range(self, d3):
        assert SaParams().resolve_beta_range(base_qubo(d3)) == pytest.approx((0.1 / 2.5, 10.0))
        assert SaParams().resolve_beta_range(Qubo(2)) == (0.1, 10.0)

    def test_d3_reaches_ground_state(self, d3):
        qubo = base_qubo(d3)
        hits = sum(
            sa_solve(qubo, SaParams(reads=500, sweeps=100, seed=seed)).lowest_energy == -1
            for seed in range(20)
        )
        assert hits >= 19

    def test_unanimous_four(self, unanimous4):
        sample = sa_solve(base_qubo(unanimous4), SaParams(reads=500, sweeps=100, seed=1))
        assert sample.best().config == represent(Ranking((0, 1, 2, 3))).bits

    def test_matches_exact_on_small_problems(self):
        ds = gen_synthetic(GenSpec(n=6, votes=11, seed=11))
        qubo = base_qubo(ds)
        ground = exact_solve(qubo).lowest_energy
        hits = sum(
            sa_solve(qubo, SaParams(reads=1000, seed=seed)).lowest_energy == pytest.approx(ground)
            for seed in range(10)
        )
        assert hits >= 9

    def test_zero_qubo(self):
        sample = sa_solve(Qubo(3), SaParams(reads=50, sweeps=5, seed=0))
        assert sample.lowest_energy == 0
        assert sample.reads == 50

    def test_reproducible_across_worker_counts(self, d3):
        qubo = base_qubo(d3)
        params = SaParams(reads=1100, sweeps=20, seed=42)
        serial = sa_solve(qubo, params, ParallelProcessor(num_workers=1))
        threaded = sa_solve(qubo, params, ParallelProcessor(num_workers=4))
        assert serial.records == threaded.records

    def test_each_batch_has_its_own_seed(self):
        """Test adding a second batch leaves the reads of the first untouched."""
        qubo = base_qubo(gen_synthetic(GenSpec(n=5, votes=7, seed=3)))
        one = sa_solve(qubo, SaParams(reads=40, sweeps=5, seed=8, batch_size=40))
        two = sa_solve(qubo, SaParams(reads=80, sweeps=5, seed=8, batch_size=40))
        counts = {r.config: r.num_occ for r in two}
        assert all(counts.get(r.config, 0) >= r.num_occ for r in one)
        assert sum(counts.values()) == 80

    def test_energies_are_re_evaluated(self, d3):
        qubo = base_qubo(d3)
        for record in sa_solve(qubo, SaParams(reads=100, sweeps=10, seed=5)):
            assert record.energy == pytest.approx(qubo.energy(record.config))

    def test_sampler_seed_overrides_params(self, d3):
        sampler = SimulatedAnnealingSampler(SaParams(reads=100, sweeps=10, seed=1))
        first = sampler.sample(base_qubo(d3), seed=9)
        second = sampler.sample(base_qubo(d3), seed=9)
        assert first.seed == 9
        assert first.records == second.records
