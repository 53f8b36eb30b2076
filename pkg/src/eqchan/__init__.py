"""Optimal unitary-equivariant channels for symmetric Boolean functions of qubit inputs."""
from .fidopt import BoolFn, solve_lp

__version__ = "0.1.0"
__all__ = ["BoolFn", "solve_lp", "__version__"]
