"""The full power set 2^N: every 0/1 vector is a member."""

from __future__ import annotations

from typing import Sequence

from ..numeric import matrix as as_matrix
from ..oracles import EdgeGuaranteedFamily, FamilyPresentation, Subset
from ..reduce import ConvexObjective, VectorWeighting
from ..zonotope import GeneratorSet


def powerset_linear_opt(n: int, b: Sequence) -> Subset:
    """``{j : b(j) > 0}``; zero weights are left out."""
    return Subset(n, tuple(j + 1 for j in range(n) if b[j] > 0))


def powerset_edge_directions(n: int) -> GeneratorSet:
    if n < 1:
        raise ValueError("n must be positive")
    return GeneratorSet(tuple(tuple(int(i == j) for i in range(n)) for j in range(n)), n)


def powerset_family(n: int) -> EdgeGuaranteedFamily:
    pres = FamilyPresentation(
        membership=lambda F: F.n == n,
        linear_optimize=lambda b: powerset_linear_opt(n, b),
    )
    return EdgeGuaranteedFamily(n, pres, Subset(n), powerset_edge_directions(n), name=f"powerset({n})")


def psd_qap_to_instance(W) -> tuple[EdgeGuaranteedFamily, VectorWeighting, ConvexObjective]:
    """Maximize ``x^T W^T W x`` over x in {0,1}^n as ``||w(F)||^2`` with w(j) = column j of W."""
    W = as_matrix(W)
    d, n = len(W), len(W[0])
    w = VectorWeighting(tuple(tuple(W[t][j] for t in range(d)) for j in range(n)))
    return powerset_family(n), w, ConvexObjective.squared_l2(d)
