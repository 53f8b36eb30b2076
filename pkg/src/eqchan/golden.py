"""Loaders for the reference data shipped with the package."""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .numerics import qmatrix


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    return json.loads(resources.files("eqchan.data").joinpath(name).read_text())


def golden_tables() -> dict:
    return _load("golden_tables.json")


def golden_choi(table: str, kind: str) -> np.ndarray | None:
    """Exact reference Choi matrix for a half truth table, or None if absent."""
    for entry in _load("golden_choi.json")["matrices"]:
        if entry["table"] == table and entry["kind"] == kind:
            den = entry["denominator"]
            return qmatrix([[Fraction(v, den) for v in row] for row in entry["numerators"]])
    return None


def golden_choi_entries() -> list[dict]:
    return list(_load("golden_choi.json")["matrices"])
