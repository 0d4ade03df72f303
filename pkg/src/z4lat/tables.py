"""Embedded reference data: generator grids and the reference tables.

The JSON file keeps every constant verbatim together with a ``cite`` locator
that golden-test failures print.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

BUILTIN_CODES = ("C26", "C27", "C28", "C29", "C33", "C34", "C36", "C41", "C43", "C44", "C45")


@lru_cache(maxsize=1)
def load() -> dict:
    with resources.files("z4lat").joinpath("data/tables.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def upper_grid(name: str) -> tuple[int, np.ndarray]:
    """``(n, M)`` for a builtin code; ``M`` is the ``k1 x (n - k1)`` grid."""
    entry = load()["codes"][name]
    M = np.array([[int(ch) for ch in row] for row in entry["upper"]], dtype=np.int64)
    return entry["n"], M


def swe26_terms() -> dict[tuple[int, int, int], int]:
    return {(i, j, k): c for i, j, k, c in load()["swe26"]["terms"]}


def table1_row(n: int) -> dict:
    for row in load()["table1"]:
        if row["n"] == n:
            return row
    raise KeyError(n)


def builtin_code(name: str):
    """The self-dual code completed from the embedded generator grid ``name``."""
    from z4lat.z4 import complete_from_upper

    n, M = upper_grid(name)
    return complete_from_upper(n, M, name=name)
