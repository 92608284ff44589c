"""Convex combinatorial optimization by zonotope refinement.

To maximize ``c(w(F))`` over an edge-guaranteed family: project the edge
directions through ``w``, list the vertices of the zonotope they generate
together with witness functionals, turn each witness ``a`` into the scalar
weighting ``b(j) = a . w(j)``, ask the linear oracle for a maximizer, and
keep the best member under ``c``. Every vertex of ``conv{w(F)}`` shows up
among the oracle answers, so for convex ``c`` the best one is optimal.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import numeric as nm
from .oracles import EdgeGuaranteedFamily, Subset, linear_optimize
from .zonotope import enumerate_vertices, project_generators


@dataclass(frozen=True)
class VectorWeighting:
    """``w: N -> Q^d`` stored as n rows of length d; row j-1 is w(j)."""

    rows: tuple

    def __post_init__(self):
        if not self.rows:
            raise ValueError("weighting needs at least one row")
        d = len(self.rows[0])
        if d == 0 or any(len(r) != d for r in self.rows):
            raise ValueError("weighting rows must share a positive dimension")

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "VectorWeighting":
        return cls(tuple(nm.vector(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    def of_subset(self, F: Iterable[int]) -> tuple:
        out = [Fraction(0)] * self.d
        for j in F:
            for t, v in enumerate(self.rows[j - 1]):
                out[t] += v
        return tuple(out)

    def scalarize(self, a: Sequence) -> tuple:
        """The scalar weighting ``j -> a . w(j)``."""
        return tuple(nm.inner_product(a, r) for r in self.rows)


class ConvexObjective:
    """A rational-valued objective on Q^d.

    Built-in kinds are convex by construction. Custom callbacks carry a
    ``declared_convex`` flag that is trusted, not checked; a non-convex
    callback voids the optimality guarantee of :func:`convex_maximize`.
    """

    def __init__(self, kind: str, dim: int | None = None, a: Sequence | None = None,
                 func: Callable | None = None, declared_convex: bool = True, stateless: bool = True):
        if kind not in ("squared_l2", "linear", "max_coordinate", "custom"):
            raise ValueError(f"unknown objective kind {kind!r}")
        if kind == "linear":
            if a is None:
                raise ValueError("linear objective needs a coefficient vector")
            a = nm.vector(a)
            dim = len(a)
        if kind == "custom" and func is None:
            raise ValueError("custom objective needs a callback")
        self.kind = kind
        self.dim = dim
        self.a = a
        self.func = func
        self.declared_convex = declared_convex if kind == "custom" else True
        self.stateless = stateless

    @classmethod
    def squared_l2(cls, dim: int | None = None) -> "ConvexObjective":
        return cls("squared_l2", dim=dim)

    @classmethod
    def linear(cls, a: Sequence) -> "ConvexObjective":
        return cls("linear", a=a)

    @classmethod
    def max_coordinate(cls, dim: int | None = None) -> "ConvexObjective":
        return cls("max_coordinate", dim=dim)

    @classmethod
    def custom(cls, func: Callable, dim: int | None = None, declared_convex: bool = True,
               stateless: bool = True) -> "ConvexObjective":
        return cls("custom", dim=dim, func=func, declared_convex=declared_convex, stateless=stateless)

    def __call__(self, x: Sequence) -> Fraction:
        return evaluate_objective(self, x)

    def __eq__(self, other):
        if not isinstance(other, ConvexObjective):
            return NotImplemented
        return (self.kind, self.dim, self.a, self.func) == (other.kind, other.dim, other.a, other.func)

    def __repr__(self):
        extra = f", a={[nm.format_rational(v) for v in self.a]}" if self.a is not None else ""
        return f"ConvexObjective({self.kind!r}, dim={self.dim}{extra})"


def evaluate_objective(c: ConvexObjective, x: Sequence) -> Fraction:
    if c.dim is not None and len(x) != c.dim:
        raise ValueError(f"objective expects dimension {c.dim}, got {len(x)}")
    if not x:
        raise ValueError("empty point")
    if c.kind == "squared_l2":
        return sum((Fraction(v) ** 2 for v in x), Fraction(0))
    if c.kind == "linear":
        return nm.inner_product(c.a, x)
    if c.kind == "max_coordinate":
        return max(Fraction(v) for v in x)
    value = c.func(tuple(x))
    if isinstance(value, float):
        raise TypeError("custom objective returned a float; exact rationals are required")
    return Fraction(value)


@dataclass(frozen=True)
class Candidate:
    vertex: tuple
    witness: tuple
    member: Subset
    point: tuple
    value: Fraction


@dataclass(frozen=True)
class SolveReport:
    optimum: Subset
    value: Fraction
    candidates: tuple
    zonotope_vertices: int
    oracle_queries: int
    evaluation_queries: int
    degenerate: bool = False
    generator_count: int = 0
    nonproportional_generators: int = 0

    @property
    def k(self) -> int:
        return self.zonotope_vertices


def convex_maximize(
    fam: EdgeGuaranteedFamily,
    w: VectorWeighting,
    c: ConvexObjective,
    jobs: int = 1,
    oracle: Callable[[Sequence], Subset] | None = None,
) -> SolveReport:
    """Maximize ``c(w(F))`` over the family.

    ``oracle`` overrides the linear optimization oracle (defaults to
    :func:`~convexcomb.oracles.linear_optimize` on ``fam``). With ``jobs > 1``
    and stateless oracle and objective, the per-vertex queries run on a thread
    pool; results are merged in vertex order either way.
    """
    if fam.n != w.n:
        raise ValueError(f"family has {fam.n} elements but the weighting has {w.n} rows")
    if c.dim is not None and c.dim != w.d:
        raise ValueError(f"objective dimension {c.dim} differs from weighting dimension {w.d}")
    if oracle is None:
        oracle = lambda b: linear_optimize(fam, b)  # noqa: E731

    projected = project_generators(fam.edge_directions, w)
    if all(nm.is_zero(g) for g in projected):
        F0 = fam.initial_member
        point = w.of_subset(F0)
        value = evaluate_objective(c, point)
        zero = nm.zero_vector(w.d)
        cand = Candidate(zero, zero, F0, point, value)
        return SolveReport(F0, value, (cand,), 1, 0, 1, degenerate=True,
                           generator_count=projected.m, nonproportional_generators=0)

    vertices = enumerate_vertices(projected)

    def query(vertex):
        b = w.scalarize(vertex.witness)
        F = oracle(b)
        point = w.of_subset(F)
        return Candidate(vertex.point, vertex.witness, F, point, evaluate_objective(c, point))

    parallel = jobs > 1 and fam.presentation.stateless and c.stateless
    if parallel:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            candidates = tuple(pool.map(query, vertices))
    else:
        candidates = tuple(query(v) for v in vertices)

    best = candidates[0]
    for cand in candidates[1:]:
        if cand.value > best.value:
            best = cand
    k = len(candidates)
    return SolveReport(best.member, best.value, candidates, k, k, k,
                       generator_count=projected.m,
                       nonproportional_generators=projected.nonproportional_count())
