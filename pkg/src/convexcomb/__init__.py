"""Exact convex combinatorial optimization through zonotope refinement."""

from .oracles import EdgeGuaranteedFamily, FamilyPresentation, Subset, linear_optimize
from .reduce import ConvexObjective, SolveReport, VectorWeighting, convex_maximize
from .zonotope import GeneratorSet, enumerate_vertices, vertex_count_bound

__all__ = [
    "ConvexObjective",
    "EdgeGuaranteedFamily",
    "FamilyPresentation",
    "GeneratorSet",
    "SolveReport",
    "Subset",
    "VectorWeighting",
    "convex_maximize",
    "enumerate_vertices",
    "linear_optimize",
    "vertex_count_bound",
]

__version__ = "0.1.0"
