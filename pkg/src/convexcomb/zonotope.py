"""Vertices of zonotopes with witness functionals.

The vertices of ``zone(E) = sum_i [-e_i, e_i]`` are in bijection with the
full-dimensional cells of the central hyperplane arrangement
``{a : a . e_i = 0}``: a functional ``a`` in a cell is uniquely maximized at
``sum_i sign(a . e_i) e_i``. Cells are enumerated exactly, one witness each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from operator import mul
from typing import Iterable, Sequence

from . import numeric as nm
from .hull import integer_hull_indices
from .simplex import maximize


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple  # tuple of RatVector
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("ambient dimension must be positive")
        for g in self.generators:
            if len(g) != self.d:
                raise ValueError(f"generator {g} does not have dimension {self.d}")

    @classmethod
    def of(cls, generators: Iterable[Iterable], d: int | None = None) -> "GeneratorSet":
        gens = tuple(nm.vector(g) for g in generators)
        if d is None:
            if not gens:
                raise ValueError("dimension needed for an empty generator set")
            d = len(gens[0])
        return cls(gens, d)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def zero_mask(self) -> tuple[bool, ...]:
        return tuple(nm.is_zero(g) for g in self.generators)

    def nonproportional_count(self) -> int:
        """Number of distinct lines spanned by the nonzero generators."""
        return len({nm.canonical_line(nm.integer_direction(g)) for g in self.generators if not nm.is_zero(g)})

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class ZonotopeVertex:
    point: tuple
    witness: tuple
    sign_vector: tuple


@dataclass(frozen=True)
class ZonotopeVertexList:
    vertices: tuple
    generator_set: GeneratorSet

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def points(self) -> set:
        return {v.point for v in self.vertices}


def vertex_count_bound(m: int, d: int) -> int:
    """Upper bound ``2 * sum_{i<d} C(m-1, i)`` on the vertices of a d-dimensional zonotope."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    return 2 * sum(math.comb(m - 1, i) for i in range(d))


def cell_witness(generators: GeneratorSet, signs: Sequence[int]) -> tuple | None:
    """A functional ``a`` with ``signs[i] * (a . e_i) > 0`` for all nonzero e_i, or None.

    Solved as ``max t`` subject to ``signs[i] * (a . e_i) >= t`` and
    ``-1 <= a_j <= 1``; the open cone is nonempty iff the optimum is positive.
    """
    if len(signs) != generators.m:
        raise ValueError("sign vector length differs from the number of generators")
    d = generators.d
    rows = [(s, g) for s, g in zip(signs, generators) if not nm.is_zero(g)]
    if not rows:
        return nm.zero_vector(d)
    # variables: a = p - q (p, q in [0, 1]^d), then t in [0, 1]
    A, b = [], []
    for s, g in rows:
        coeffs = [-s * g[j] for j in range(d)] + [s * g[j] for j in range(d)] + [Fraction(1)]
        A.append(coeffs)
        b.append(Fraction(0))
    for j in range(2 * d + 1):
        A.append([Fraction(int(k == j)) for k in range(2 * d + 1)])
        b.append(Fraction(1))
    c = [Fraction(0)] * (2 * d) + [Fraction(1)]
    opt, x = maximize(c, A, b)
    if opt <= 0:
        return None
    return tuple(x[j] - x[d + j] for j in range(d))


def _dot(u, v):
    return sum(map(mul, u, v))


def _independent_subset(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Greedy maximal independent subset, by fraction-free elimination on integers."""
    chosen: list[tuple[int, ...]] = []
    reduced: list[tuple[int, list[int]]] = []  # (pivot column, echelon row)
    for v in vectors:
        row = list(v)
        for col, piv in reduced:
            if row[col]:
                f, g = row[col], piv[col]
                row = [g * a - f * b for a, b in zip(row, piv)]
        col = next((c for c, x in enumerate(row) if x), None)
        if col is not None:
            chosen.append(v)
            reduced.append((col, row))
    return chosen


def _cells(normals: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Integer witnesses, one per full-dimensional cell of the central arrangement.

    Recursion: in an essential arrangement every cell is a pointed cone, so it
    has an extreme ray cut out by D-1 independent hyperplanes. Around each
    such ray the cells are those of the sub-arrangement of hyperplanes through
    the ray, nudged off the ray by a small multiple.
    """
    normals = [n for n in normals if any(n)]
    if not normals:
        raise ValueError("arrangement has no hyperplanes")
    D = len(normals[0])
    hyper = sorted({nm.canonical_line(n) for n in normals})
    basis = _independent_subset(hyper)
    r = len(basis)
    if r < D:
        # work in coordinates of the span of the normals, then map back
        coords = [tuple(_dot(bv, h) for bv in basis) for h in hyper]
        return [
            nm.primitive(tuple(sum(c[k] * basis[k][t] for k in range(r)) for t in range(D)))
            for c in _cells(coords)
        ]
    if D == 1:
        return [(1,), (-1,)]

    rays = set()
    for combo in combinations(hyper, D - 1):
        k = nm.generalized_cross(combo)
        if any(k):
            rays.add(nm.canonical_line(k))

    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for ray in sorted(rays):
        through = [h for h in hyper if _dot(h, ray) == 0]
        others = [h for h in hyper if _dot(h, ray) != 0]
        local = _cells(through)
        for s in (1, -1):
            v = tuple(s * x for x in ray)
            for b in local:
                K = 1
                for h in others:
                    # need K*|v.h| > |b.h| so the nudge keeps the sign of v.h
                    K = max(K, abs(_dot(b, h)) // abs(_dot(v, h)) + 1)
                a = nm.primitive(tuple(K * x + y for x, y in zip(v, b)))
                key = tuple(1 if _dot(a, h) > 0 else -1 for h in hyper)
                found.setdefault(key, a)
    return list(found.values())


def _vertices_from_witnesses(gens: GeneratorSet, witnesses: list[tuple[int, ...]]) -> list[ZonotopeVertex]:
    L = nm.lcm_of_denominators(v for g in gens for v in g)
    igens = [tuple(int(v * L) for v in g) for g in gens]
    out = []
    for w in witnesses:
        signs = []
        point = [0] * gens.d
        for g in igens:
            if not any(g):
                signs.append(1)
                continue
            val = _dot(w, g)
            if val == 0:
                raise AssertionError("witness lies on a hyperplane of the arrangement")
            s = 1 if val > 0 else -1
            signs.append(s)
            for j in range(gens.d):
                point[j] += s * g[j]
        out.append(ZonotopeVertex(
            tuple(Fraction(x, L) for x in point), tuple(Fraction(x) for x in w), tuple(signs)
        ))
    return out


def enumerate_vertices(generators: GeneratorSet) -> ZonotopeVertexList:
    """All vertices of zone(generators), each with a witness and its sign vector.

    Vertices are ordered lexicographically by sign vector, reading + before -.
    """
    nonzero = [g for g in generators if not nm.is_zero(g)]
    if not nonzero:
        raise ValueError("all generators are zero: the zonotope is a single point")
    normals = [nm.integer_direction(g) for g in nonzero]
    witnesses = _cells(normals)
    verts = sorted(_vertices_from_witnesses(generators, witnesses), key=lambda v: tuple(-s for s in v.sign_vector))
    return ZonotopeVertexList(tuple(verts), generators)


def sign_points(generators: GeneratorSet) -> list[tuple]:
    """All 2^m points ``sum_i lambda_i e_i`` with lambda_i = +-1 (with repetition)."""
    out = []
    for lam in product((1, -1), repeat=generators.m):
        p = [Fraction(0)] * generators.d
        for s, g in zip(lam, generators):
            for j in range(generators.d):
                p[j] += s * g[j]
        out.append(tuple(p))
    return out


def brute_force_vertices(generators: GeneratorSet) -> list[tuple]:
    """Vertices of zone(generators) from the exact hull of all 2^m sign points."""
    if generators.m > 16 or generators.d > 3:
        raise ValueError("brute force limited to m <= 16 generators and d <= 3")
    L = nm.lcm_of_denominators(v for g in generators for v in g)
    pts = {(0,) * generators.d}
    for g in generators:
        ig = tuple(int(v * L) for v in g)
        pts = {tuple(a + s * b for a, b in zip(p, ig)) for p in pts for s in (1, -1)}
    ipts = sorted(pts)
    return sorted(tuple(Fraction(v, L) for v in ipts[i]) for i in integer_hull_indices(ipts))


def project_generators(E: GeneratorSet, w) -> GeneratorSet:
    """Image of each direction under ``x -> sum_j w(j) x_j``; order is kept.

    ``w`` is a :class:`~convexcomb.reduce.VectorWeighting` or any n x d table.
    """
    rows = getattr(w, "rows", w)
    n = len(rows)
    if E.d != n:
        raise ValueError(f"directions have dimension {E.d} but the weighting has {n} rows")
    d = len(rows[0]) if rows else 0
    if d == 0:
        raise ValueError("weighting has no columns")
    out = []
    for e in E:
        img = [Fraction(0)] * d
        for j, x in enumerate(e):
            if x:
                for t in range(d):
                    img[t] += x * rows[j][t]
        out.append(tuple(img))
    return GeneratorSet(tuple(out), d)
