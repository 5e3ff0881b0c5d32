"""Coarse-median combinatorics of right-angled Artin/Coxeter groups and finite median algebras."""
from .graphs import SimpGraph, GraphError, load_graph
from .words import Presentation, GroupElement, WordError

__version__ = "0.1.0"
