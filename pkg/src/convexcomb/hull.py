"""Exact convex hull vertices of small point sets in dimension at most 3.

Points are scaled to a common integer lattice first; all predicates are then
integer determinants, so the results are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .numeric import lcm_of_denominators


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _int_rank(vectors) -> int:
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                f, g = rows[i][c], rows[rank][c]
                rows[i] = [g * a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _hull_2d(pts: list[tuple[int, int]]) -> list[int]:
    """Indices of strict vertices (monotone chain, collinear points dropped)."""
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    if len(order) <= 2:
        return order

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and cross(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def _hull_3d(pts: list[tuple[int, int, int]]) -> list[int]:
    """Incremental hull; returns indices of strict vertices."""

    def plane(a, b, c):
        nrm = _cross(_sub(pts[b], pts[a]), _sub(pts[c], pts[a]))
        return nrm, _dot(nrm, pts[a])

    # initial tetrahedron
    i0 = 0
    i1 = next(i for i in range(len(pts)) if pts[i] != pts[i0])
    d01 = _sub(pts[i1], pts[i0])
    i2 = next(i for i in range(len(pts)) if any(_cross(d01, _sub(pts[i], pts[i0]))))
    nrm, off = plane(i0, i1, i2)
    i3 = next(i for i in range(len(pts)) if _dot(nrm, pts[i]) != off)
    if _dot(nrm, pts[i3]) > off:
        i1, i2 = i2, i1
    # faces oriented so that interior points lie strictly below each plane
    faces = {f: plane(*f) for f in ((i0, i1, i2), (i0, i3, i1), (i1, i3, i2), (i2, i3, i0))}

    # far points first: fewer faces get built and torn down
    cx = [sum(p[k] for p in pts) for k in range(3)]
    n = len(pts)
    order = sorted(range(n), key=lambda i: -sum((n * pts[i][k] - cx[k]) ** 2 for k in range(3)))
    for p in order:
        if p in (i0, i1, i2, i3):
            continue
        q = pts[p]
        visible = [f for f, (nv, o) in faces.items() if nv[0] * q[0] + nv[1] * q[1] + nv[2] * q[2] > o]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        for f in visible:
            del faces[f]
        for u, v in edges:
            if (v, u) not in edges:
                faces[(u, v, p)] = plane(u, v, p)

    normals: dict[int, list] = {}
    for f, (nrm, _) in faces.items():
        for v in f:
            normals.setdefault(v, []).append(nrm)
    # a point is a true vertex iff its incident facet normals span R^3
    return [v for v, ns in normals.items() if _int_rank(ns) == 3]


def integer_hull_indices(ipts: Sequence[tuple[int, ...]]) -> list[int]:
    """Indices of the vertices of conv(ipts) for distinct integer points, d <= 3."""
    if not ipts:
        return []
    d = len(ipts[0])
    if d > 3:
        raise ValueError("hull supports dimension <= 3")
    base = ipts[0]
    diffs = [_sub(p, base) for p in ipts]
    affine_dim = _int_rank(diffs)
    if affine_dim == 0:
        return [0]
    if affine_dim == 1:
        direction = next(v for v in diffs if any(v))
        proj = [_dot(direction, v) for v in diffs]
        return sorted({proj.index(min(proj)), proj.index(max(proj))})
    if affine_dim == 2:
        if d == 2:
            return _hull_2d(list(ipts))
        u = next(v for v in diffs if any(v))
        nrm = next(_cross(u, v) for v in diffs if any(_cross(u, v)))
        drop = next(k for k in range(3) if nrm[k] != 0)
        return _hull_2d([tuple(p[k] for k in range(3) if k != drop) for p in ipts])
    return _hull_3d(list(ipts))


def hull_vertices(points: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Vertices of conv(points), exact, for ambient dimension 1, 2 or 3.

    The result is sorted lexicographically and free of duplicates.
    """
    uniq = sorted(set(tuple(Fraction(v) for v in p) for p in points))
    if not uniq:
        return []
    L = lcm_of_denominators(v for p in uniq for v in p)
    ipts = [tuple(int(v * L) for v in p) for p in uniq]
    return sorted(uniq[i] for i in integer_hull_indices(ipts))
