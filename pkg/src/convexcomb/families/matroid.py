"""Uniform, graphic and linear matroids, as families of bases or independent sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ..numeric import rank_rational, vector
from ..oracles import EdgeGuaranteedFamily, FamilyPresentation, Subset
from ..zonotope import GeneratorSet

VARIANTS = ("uniform", "graphic", "linear")
MODES = ("bases", "independent_sets")


@dataclass(frozen=True)
class MatroidSpec:
    variant: str
    mode: str
    n: int
    rank: int | None = None  # uniform
    vertex_count: int | None = None  # graphic
    edges: tuple = ()  # graphic, 1-based vertex pairs
    columns: tuple = ()  # linear, one rational vector per element

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown matroid variant {self.variant!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise ValueError("a matroid needs at least one element")
        if self.variant == "uniform" and not (self.rank is not None and 0 <= self.rank <= self.n):
            raise ValueError("uniform matroid needs 0 <= r <= n")
        if self.variant == "graphic":
            if len(self.edges) != self.n or self.vertex_count is None:
                raise ValueError("graphic matroid needs a vertex count and n edges")
            for u, v in self.edges:
                if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                    raise ValueError(f"edge ({u},{v}) references a missing vertex")
        if self.variant == "linear":
            if len(self.columns) != self.n:
                raise ValueError("linear matroid needs n columns")
            if len({len(c) for c in self.columns}) != 1:
                raise ValueError("matrix columns differ in length")

    @classmethod
    def uniform(cls, n: int, r: int, mode: str = "bases") -> "MatroidSpec":
        return cls("uniform", mode, n, rank=r)

    @classmethod
    def graphic(cls, vertex_count: int, edges: Iterable[Sequence[int]], mode: str = "bases") -> "MatroidSpec":
        edges = tuple((int(u), int(v)) for u, v in edges)
        return cls("graphic", mode, len(edges), vertex_count=vertex_count, edges=edges)

    @classmethod
    def linear(cls, columns: Iterable[Iterable], mode: str = "bases") -> "MatroidSpec":
        cols = tuple(vector(c) for c in columns)
        return cls("linear", mode, len(cols), columns=cols)

    @cached_property
    def matroid_rank(self) -> int:
        return len(_greedy_scan(self, range(1, self.n + 1)))


def _is_forest(edges: Sequence[tuple[int, int]], vertex_count: int) -> bool:
    parent = list(range(vertex_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def matroid_independent(spec: MatroidSpec, F: Iterable[int]) -> bool:
    F = list(F)
    if spec.variant == "uniform":
        return len(F) <= spec.rank
    if spec.variant == "graphic":
        return _is_forest([spec.edges[j - 1] for j in F], spec.vertex_count)
    return not F or rank_rational([spec.columns[j - 1] for j in F]) == len(F)


def _greedy_scan(spec: MatroidSpec, order: Iterable[int]) -> list[int]:
    chosen: list[int] = []
    for j in order:
        if matroid_independent(spec, chosen + [j]):
            chosen.append(j)
    return chosen


def matroid_greedy(spec: MatroidSpec, b: Sequence) -> Subset:
    """Maximum b-weight basis (bases mode) or independent set (independent_sets mode)."""
    order = sorted(range(1, spec.n + 1), key=lambda j: (-b[j - 1], j))
    if spec.mode == "independent_sets":
        order = [j for j in order if b[j - 1] > 0]
        return Subset(spec.n, tuple(_greedy_scan(spec, order)))
    r = spec.matroid_rank
    chosen: list[int] = []
    for j in order:
        if len(chosen) == r:
            break
        if matroid_independent(spec, chosen + [j]):
            chosen.append(j)
    return Subset(spec.n, tuple(chosen))


def matroid_edge_directions(n: int, mode: str) -> GeneratorSet:
    """Differences 1_i - 1_j (i < j), plus the unit vectors for independent sets."""
    if n < 1:
        raise ValueError("n must be positive")
    dirs = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 1, -1
            dirs.append(tuple(e))
    if mode == "independent_sets":
        dirs.extend(tuple(int(i == j) for i in range(n)) for j in range(n))
    elif mode != "bases":
        raise ValueError(f"unknown mode {mode!r}")
    assert len(dirs) == (math.comb(n, 2) if mode == "bases" else math.comb(n + 1, 2))
    return GeneratorSet(tuple(dirs), n)


def matroid_member(spec: MatroidSpec, F: Subset) -> bool:
    if F.n != spec.n or not matroid_independent(spec, F.members):
        return False
    return spec.mode == "independent_sets" or len(F) == spec.matroid_rank


def matroid_family(spec: MatroidSpec) -> EdgeGuaranteedFamily:
    pres = FamilyPresentation(
        membership=lambda F: matroid_member(spec, F),
        linear_optimize=lambda b: matroid_greedy(spec, b),
    )
    if spec.mode == "bases":
        F0 = Subset(spec.n, tuple(_greedy_scan(spec, range(1, spec.n + 1))))
    else:
        F0 = Subset(spec.n)
    return EdgeGuaranteedFamily(
        spec.n, pres, F0, matroid_edge_directions(spec.n, spec.mode), name=f"{spec.variant}-{spec.mode}"
    )
