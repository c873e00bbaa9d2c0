"""Separating 2-factors and spanning cyclability of 3- and 4-valent Abelian Cayley graphs."""
from .algebra import GroupSpec, StructureClass, classify, verify_certificate
from .builders import Reason, Verdict, solve
from .graphs import Graph, build_cayley
from .oracle import find_separating_2factor, is_k_spanning_cyclable
from .twofactor import TwoFactor, separates, validate

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GroupSpec",
    "Reason",
    "StructureClass",
    "TwoFactor",
    "Verdict",
    "build_cayley",
    "classify",
    "find_separating_2factor",
    "is_k_spanning_cyclable",
    "separates",
    "solve",
    "validate",
    "verify_certificate",
]
