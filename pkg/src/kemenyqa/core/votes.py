"""Votes file format.

One vote per line, most preferred candidate first, indices separated by
spaces. A line may start with ``w=<float>;`` to give the vote a weight.
Lines starting with ``#`` are comments, except ``# candidates: <n>`` which
fixes the candidate count. The list kind is not stored in the file.
"""
from __future__ import annotations

import hashlib
import logging
import re
from pathlib import Path
from typing import Optional

from ..errors import InvalidArgumentError
from .ranking import Dataset, ListKind, Ranking, WeightScheme

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^#\s*candidates\s*:\s*(\d+)\s*$")
_WEIGHT = re.compile(r"^w\s*=\s*([^;]+);(.*)$")


def parse_votes(text: str, kind: ListKind = ListKind.COMPLETE,
                pair_weight: Optional[WeightScheme] = None) -> Dataset:
    """Parse votes file text into a dataset of the given kind."""
    kind = ListKind(kind)
    n: Optional[int] = None
    votes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = _HEADER.match(line)
            if header:
                n = int(header.group(1))
            continue
        weight = 1.0
        match = _WEIGHT.match(line)
        if match:
            try:
                weight = float(match.group(1))
            except ValueError:
                raise InvalidArgumentError(f"Line {lineno}: invalid weight {match.group(1)!r}")
            line = match.group(2)
        try:
            order = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise InvalidArgumentError(f"Line {lineno}: candidates must be integers: {raw.strip()!r}")
        try:
            votes.append(Ranking(order, kind, weight))
        except InvalidArgumentError as e:
            raise InvalidArgumentError(f"Line {lineno}: {e}")
    if not votes:
        raise InvalidArgumentError("Votes file contains no votes")
    if n is None:
        n = max((max(v.order) for v in votes if len(v)), default=-1) + 1
    return Dataset(n, tuple(votes), pair_weight or WeightScheme())


def read_votes(path: Path, kind: ListKind = ListKind.COMPLETE,
               pair_weight: Optional[WeightScheme] = None) -> Dataset:
    """Read a votes file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidArgumentError(f"Cannot read votes file {path}: {e}")
    ds = parse_votes(text, kind, pair_weight)
    logger.debug("Read %d votes over %d candidates from %s", len(ds.votes), ds.n, path)
    return ds


def format_votes(ds: Dataset) -> str:
    lines = [f"# candidates: {ds.n}"]
    for vote in ds.votes:
        prefix = "" if vote.weight == 1.0 else f"w={vote.weight!r};"
        lines.append(prefix + " ".join(str(c) for c in vote.order))
    return "\n".join(lines) + "\n"


def write_votes(ds: Dataset, path: Path) -> None:
    Path(path).write_text(format_votes(ds), encoding="utf-8")


def file_digest(path: Path) -> str:
    """SHA-256 of a file, read in chunks."""
    sha256_hash = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(4096), b""):
            sha256_hash.update(chunk)
    return sha256_hash.hexdigest()


def dataset_digest(ds: Dataset) -> str:
    """SHA-256 of the dataset's canonical votes text."""
    return hashlib.sha256(format_votes(ds).encode("utf-8")).hexdigest()
