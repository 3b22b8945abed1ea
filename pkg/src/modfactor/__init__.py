"""Modulo-k factors of multigraphs with degrees close to half."""

from .errors import HypothesisError, Infeasible, InputError, LimitExceeded, ModFactorError, SolverGaveUp
from .graph import Bipartition, Factor, Multigraph, Orientation, ResidueMap

__all__ = [
    "Bipartition",
    "Factor",
    "HypothesisError",
    "Infeasible",
    "InputError",
    "LimitExceeded",
    "ModFactorError",
    "Multigraph",
    "Orientation",
    "ResidueMap",
    "SolverGaveUp",
]
__version__ = "0.1.0"
