"""Bundled benchmark problems.

The classic rectangle-assembly instances (Pfefferkorn, Lauriere, Tong,
the nine perfect squares) plus the dwelling studies (Maculet one-floor
house, the two-floor house, the office floor with a patio).  Problems
live as layout-problem documents under data/; expected.json records the
class counts each file is pinned to, together with the semantic switches
the count depends on.
"""

from __future__ import annotations

import json
from importlib import resources

from . import io
from .enumerate import enumerate_topologies


def _data_root():
    return resources.files(__package__) / "data"


def list_benchmarks():
    out = []
    for entry in _data_root().iterdir():
        if entry.name.endswith(".json") and entry.name != "expected.json":
            out.append(entry.name[:-5])
    return sorted(out)


def load_benchmark(name):
    entry = _data_root() / f"{name}.json"
    try:
        text = entry.read_text()
    except FileNotFoundError:
        raise KeyError(f"unknown benchmark {name!r}") from None
    return io.problem_from_dict(json.loads(text))


def expected_counts():
    """name -> {n1, n2, notes, ...} for the bundled corpus."""
    return json.loads((_data_root() / "expected.json").read_text())


def run_benchmark(name, progress=None, max_classes=None):
    problem = load_benchmark(name)
    return enumerate_topologies(problem, progress=progress, max_classes=max_classes)
