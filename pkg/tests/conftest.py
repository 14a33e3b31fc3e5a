import json

import pytest

from kemenyqa.core.datagen import kwiksort_trap_dataset, unanimous_dataset
from kemenyqa.core.ranking import Dataset
from kemenyqa.core.votes import write_votes
from kemenyqa.samplers import ExactSampler


@pytest.fixture
def d3():
    """The three cyclic rotations of [0, 1, 2]: every rotation scores 4."""
    return Dataset.from_orders([(0, 1, 2), (1, 2, 0), (2, 0, 1)], 3)


@pytest.fixture
def d3_rotations():
    return {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


@pytest.fixture
def unanimous():
    return unanimous_dataset([0, 1, 2], votes=3)


@pytest.fixture
def unanimous4():
    return unanimous_dataset([0, 1, 2, 3], votes=3)


@pytest.fixture
def kwiksort_trap():
    return kwiksort_trap_dataset()


@pytest.fixture
def exact():
    return ExactSampler(cap=24)


@pytest.fixture
def d3_votes_file(tmp_path, d3):
    path = tmp_path / "d3.votes"
    write_votes(d3, path)
    return path


@pytest.fixture
def trap_votes_file(tmp_path, kwiksort_trap):
    path = tmp_path / "e.votes"
    write_votes(kwiksort_trap, path)
    return path


@pytest.fixture
def mock_config_file(tmp_path):
    """A configuration file with a reduced annealing budget."""
    config = {
        "epsilon": 0.25,
        "reads": 200,
        "sweeps": 50,
        "brute_force_cap": 8,
        "output_format": "json",
    }
    config_path = tmp_path / "config.json"
    with open(config_path, "w") as f:
        json.dump(config, f)
    return config_path
