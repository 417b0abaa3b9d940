"""Exact sign statistics of coflows and Tutte-style invariants of regular
oriented matroids, digraphs, and partial orientations."""

from .cocycles import omega_counts, reorientation_classes
from .coflows import a_even_poly, a_eval, a_poly, b_poly, digraph_a_eval
from .matroid import Digraph, OrientedMatroid
from .pom import PartialOrientedMatroid, make_pom, t1, t2
from .tutte import characteristic, potts, tutte

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "OrientedMatroid",
    "PartialOrientedMatroid",
    "a_even_poly",
    "a_eval",
    "a_poly",
    "b_poly",
    "characteristic",
    "digraph_a_eval",
    "make_pom",
    "omega_counts",
    "potts",
    "reorientation_classes",
    "t1",
    "t2",
    "tutte",
]
