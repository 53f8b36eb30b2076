"""Numerical tolerances and run settings shared by every module."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-12
    trace: float = 1e-12
    psd: float = -1e-10
    cptp: float = 1e-10
    gram_schmidt_drop: float = 1e-8
    rank: float = 1e-8
    min_det: float = 1e-6
    rational_max_den: int = 10**6
    rational_fit: float = 1e-9


@dataclass(frozen=True)
class RunConfig:
    seed: int = 20240611
    quadrature_grid: int = 64
    max_schur_n: int = 8
    max_choi_n: int = 5


TOL = Tolerances()
DEFAULTS = RunConfig()
