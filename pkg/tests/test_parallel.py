"""Tests for parallel processing utilities."""
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import patch

import pytest

from kemenyqa.utils.parallel import ParallelProcessor


@pytest.fixture
def processor():
    """Create a parallel processor instance for testing."""
    return ParallelProcessor(num_workers=2)


def test_processor_initialization():
    """Test parallel processor initialization."""
    processor = ParallelProcessor(num_workers=4)
    assert processor.num_workers == 4


def test_workers_from_environment(monkeypatch):
    """Test that KEMENY_QA_WORKERS sets the default worker count."""
    monkeypatch.setenv("KEMENY_QA_WORKERS", "3")
    assert ParallelProcessor().num_workers == 3


def test_map_ordered_keeps_order(processor):
    """Test results come back in submission order."""
    assert processor.map_ordered(lambda x: x * x, range(20)) == [x * x for x in range(20)]


def test_map_ordered_uses_threads(processor):
    """Test work is spread over a pool of the configured size."""
    with patch("kemenyqa.utils.parallel.ThreadPoolExecutor", wraps=ThreadPoolExecutor) as pool:
        assert processor.map_ordered(str, [1, 2, 3]) == ["1", "2", "3"]
        pool.assert_called_once_with(max_workers=2)


def test_single_worker_runs_inline():
    """Test a single worker never starts a pool."""
    with patch("kemenyqa.utils.parallel.ThreadPoolExecutor") as pool:
        assert ParallelProcessor(num_workers=1).map_ordered(str, [1, 2]) == ["1", "2"]
        pool.assert_not_called()


def test_empty_input(processor):
    """Test an empty work list."""
    assert processor.map_ordered(str, []) == []


def test_error_handling(processor):
    """Test the first failure is re-raised after all items ran."""
    done = []

    def work(item):
        if item == 1:
            raise ValueError("bad item")
        done.append(item)
        return item

    with pytest.raises(ValueError, match="bad item"):
        processor.map_ordered(work, [0, 1, 2, 3])
    assert sorted(done) == [0, 2, 3]
