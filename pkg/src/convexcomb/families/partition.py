"""Shaped vector partitioning.

Items ``1..n`` carrying vectors ``v^i`` in Q^d are split into ``p`` ordered
parts whose sizes lie in ``[l, u]``. The ground set is ``{(i, j)}`` with
(i, j) stored at flat position ``(i-1)*p + j`` (1-based), and a partition is
the subset ``{(i, j) : i in part j}``. The weight of (i, j) is the d x p
matrix with column j equal to v^i, flattened row-major.

Edge directions come from the cycles of the complete bipartite graph
K_{n+1,p} underlying the lifted transportation polytope (row 0 absorbs the
slack of the shape bounds); erasing row 0 projects them onto the family
polytope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from ..errors import InfeasibleError
from ..numeric import clear_denominators, vector
from ..oracles import EdgeGuaranteedFamily, FamilyPresentation, Subset
from ..reduce import ConvexObjective, VectorWeighting
from ..zonotope import GeneratorSet


@dataclass(frozen=True)
class ShapedPartitionInstance:
    points: tuple
    p: int
    lower: tuple
    upper: tuple

    def __post_init__(self):
        n = len(self.points)
        if n < 1 or self.p < 1:
            raise ValueError("need at least one item and one part")
        if len({len(v) for v in self.points}) != 1 or not self.points[0]:
            raise ValueError("points must share a positive dimension")
        if len(self.lower) != self.p or len(self.upper) != self.p:
            raise ValueError("shape bounds must have one entry per part")
        for lo, hi in zip(self.lower, self.upper):
            if not (0 <= lo <= hi <= n):
                raise ValueError(f"shape bounds need 0 <= l <= u <= n, got l={self.lower}, u={self.upper}")

    @classmethod
    def of(cls, points: Iterable[Iterable], p: int, lower: Sequence[int] | None = None,
           upper: Sequence[int] | None = None) -> "ShapedPartitionInstance":
        pts = tuple(vector(v) for v in points)
        n = len(pts)
        lower = tuple(lower) if lower is not None else (0,) * p
        upper = tuple(upper) if upper is not None else (n,) * p
        return cls(pts, p, tuple(int(x) for x in lower), tuple(int(x) for x in upper))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    @property
    def unrestricted(self) -> bool:
        return all(x == 0 for x in self.lower) and all(x == self.n for x in self.upper)

    @property
    def feasible(self) -> bool:
        return sum(self.lower) <= self.n <= sum(self.upper)

    def check_feasible(self) -> None:
        if not self.feasible:
            raise InfeasibleError(
                f"no partition of {self.n} items has shape between l={list(self.lower)} and u={list(self.upper)}"
            )


@dataclass(frozen=True)
class Partition:
    """``assignment[i-1]`` is the (1-based) part of item i."""

    assignment: tuple

    def parts(self, p: int) -> tuple:
        out = [[] for _ in range(p)]
        for i, j in enumerate(self.assignment, start=1):
            out[j - 1].append(i)
        return tuple(tuple(x) for x in out)

    def shape(self, p: int) -> tuple:
        return tuple(len(x) for x in self.parts(p))


def flat_index(i: int, j: int, p: int) -> int:
    """1-based ground-set index of the pair (item i, part j)."""
    return (i - 1) * p + j


def encode(partition: Partition, p: int) -> Subset:
    n = len(partition.assignment)
    return Subset(n * p, tuple(flat_index(i, j, p) for i, j in enumerate(partition.assignment, start=1)))


def decode(F: Subset, n: int, p: int) -> Partition | None:
    """The partition encoded by ``F``, or None if some item is not in exactly one part."""
    assignment = [0] * n
    for e in F:
        i, j = (e - 1) // p + 1, (e - 1) % p + 1
        if assignment[i - 1]:
            return None
        assignment[i - 1] = j
    if not all(assignment):
        return None
    return Partition(tuple(assignment))


def _admissible(inst: ShapedPartitionInstance, part: Partition) -> bool:
    return all(lo <= s <= hi for s, lo, hi in zip(part.shape(inst.p), inst.lower, inst.upper))


def circuit_count(n: int, p: int) -> int:
    """Number of cycles of K_{n+1,p}: sum_{i=2}^p C(p,i) C(n+1,i) i! (i-1)! / 2."""
    total = 0
    for i in range(2, p + 1):
        total += math.comb(p, i) * math.comb(n + 1, i) * math.factorial(i) * math.factorial(i - 1)
    return total // 2


def transportation_circuits(n: int, p: int) -> list[tuple]:
    """All cycles of K_{n+1,p} as (n+1) x p matrices with alternating +-1 entries.

    Each cycle appears once, oriented so that its entry of lowest row-major
    index is +1.
    """
    found: dict[tuple, None] = {}
    for i in range(2, min(p, n + 1) + 1):
        for cols in combinations(range(p), i):
            for rest in permutations(cols[1:]):
                colseq = (cols[0],) + rest
                for rows in permutations(range(n + 1), i):
                    z = [[0] * p for _ in range(n + 1)]
                    for k in range(i):
                        z[rows[k]][colseq[k]] = 1
                        z[rows[k]][colseq[(k + 1) % i]] = -1
                    flat = [v for row in z for v in row]
                    lead = next(v for v in flat if v)
                    if lead < 0:
                        z = [[-v for v in row] for row in z]
                    found.setdefault(tuple(tuple(row) for row in z), None)
    return list(found)


def transportation_matrix(n: int, p: int) -> tuple:
    """Coefficients of the lifted system: item rows sum to 1, columns (with row 0) sum to n.

    Columns are indexed row-major over the (n+1) x p matrix entries.
    """
    rows = []
    for i in range(1, n + 1):
        rows.append(tuple(Fraction(int(r == i)) for r in range(n + 1) for _ in range(p)))
    for j in range(p):
        rows.append(tuple(Fraction(int(c == j)) for _ in range(n + 1) for c in range(p)))
    return tuple(rows)


def partition_edge_directions(inst: ShapedPartitionInstance) -> GeneratorSet:
    n, p = inst.n, inst.p
    dirs = []
    if inst.unrestricted:
        # moving item i from part j to part j2
        for i in range(1, n + 1):
            for j, j2 in combinations(range(1, p + 1), 2):
                e = [0] * (n * p)
                e[flat_index(i, j2, p) - 1] = 1
                e[flat_index(i, j, p) - 1] = -1
                dirs.append(tuple(e))
    else:
        for z in transportation_circuits(n, p):
            dirs.append(tuple(v for row in z[1:] for v in row))
    return GeneratorSet(tuple(dirs), n * p)


def _min_cost_assignment(inst: ShapedPartitionInstance, cost: list[list[int]]) -> Partition:
    """Successive shortest paths on source -> items -> parts -> sink.

    Part j's arc to the sink is split into a mandatory arc of capacity l_j
    with a large negative cost and an optional arc of capacity u_j - l_j, so a
    min-cost flow of value n fills every lower bound whenever that is possible.
    """
    n, p = inst.n, inst.p
    big = 1 + 2 * sum(max(abs(c) for c in row) for row in cost)
    S, T = 0, n + p + 1
    graph: list[list[int]] = [[] for _ in range(T + 1)]
    to, cap, cst = [], [], []

    def arc(u, v, c, w):
        for a, b, cc, ww in ((u, v, c, w), (v, u, 0, -w)):
            graph[a].append(len(to))
            to.append(b)
            cap.append(cc)
            cst.append(ww)

    for i in range(1, n + 1):
        arc(S, i, 1, 0)
    item_arcs = {}
    for i in range(1, n + 1):
        for j in range(1, p + 1):
            item_arcs[(i, j)] = len(to)
            arc(i, n + j, 1, cost[i - 1][j - 1])
    mandatory = []
    for j in range(1, p + 1):
        mandatory.append(len(to))
        arc(n + j, T, inst.lower[j - 1], -big)
        arc(n + j, T, inst.upper[j - 1] - inst.lower[j - 1], 0)

    for _ in range(n):
        dist = [None] * (T + 1)
        via = [None] * (T + 1)
        dist[S] = 0
        for _ in range(T + 1):
            changed = False
            for u in range(T + 1):
                if dist[u] is None:
                    continue
                for a in graph[u]:
                    if cap[a] > 0 and (dist[to[a]] is None or dist[u] + cst[a] < dist[to[a]]):
                        dist[to[a]] = dist[u] + cst[a]
                        via[to[a]] = a
                        changed = True
            if not changed:
                break
        if dist[T] is None:
            raise InfeasibleError("no admissible partition exists")
        v = T
        while v != S:
            a = via[v]
            cap[a] -= 1
            cap[a ^ 1] += 1
            v = to[a ^ 1]

    if any(cap[a] for a in mandatory):
        raise InfeasibleError("shape lower bounds cannot be met")
    assignment = [0] * n
    for (i, j), a in item_arcs.items():
        if cap[a] == 0:
            assignment[i - 1] = j
    return Partition(tuple(assignment))


def partition_linear_opt(inst: ShapedPartitionInstance, b: Sequence) -> Partition:
    """An admissible partition maximizing ``sum_i b(i, part(i))``."""
    inst.check_feasible()
    n, p = inst.n, inst.p
    if len(b) != n * p:
        raise ValueError(f"weighting must have n*p = {n * p} entries")
    if inst.unrestricted:
        # no coupling between items: best part per item, ties to the lowest index
        return Partition(tuple(
            max(range(1, p + 1), key=lambda j: (b[flat_index(i, j, p) - 1], -j)) for i in range(1, n + 1)
        ))
    a, _ = clear_denominators(b)
    cost = [[-a[flat_index(i, j, p) - 1] for j in range(1, p + 1)] for i in range(1, n + 1)]
    return _min_cost_assignment(inst, cost)


def partition_weighting(inst: ShapedPartitionInstance) -> VectorWeighting:
    """w(i, j) = v^i placed in column j of a d x p matrix, flattened row-major."""
    n, p, d = inst.n, inst.p, inst.d
    rows = []
    for i in range(n):
        for j in range(p):
            row = [Fraction(0)] * (d * p)
            for t in range(d):
                row[t * p + j] = inst.points[i][t]
            rows.append(tuple(row))
    return VectorWeighting(tuple(rows))


def part_sums(points: Sequence[Sequence], partition: Partition, p: int) -> tuple:
    """The d x p matrix whose column j is the sum of the vectors in part j."""
    d = len(points[0])
    cols = [[Fraction(0)] * d for _ in range(p)]
    for i, j in enumerate(partition.assignment):
        for t in range(d):
            cols[j - 1][t] += Fraction(points[i][t])
    return tuple(tuple(cols[j][t] for j in range(p)) for t in range(d))


def partition_family(inst: ShapedPartitionInstance) -> EdgeGuaranteedFamily:
    inst.check_feasible()
    n, p = inst.n, inst.p

    def member(F: Subset) -> bool:
        if F.n != n * p:
            return False
        part = decode(F, n, p)
        return part is not None and _admissible(inst, part)

    def candidates():
        for assignment in product(range(1, p + 1), repeat=n):
            yield encode(Partition(assignment), p)

    pres = FamilyPresentation(
        membership=member,
        linear_optimize=lambda b: encode(partition_linear_opt(inst, b), p),
        candidates=candidates,
    )
    F0 = encode(partition_linear_opt(inst, [0] * (n * p)), p)
    return EdgeGuaranteedFamily(n * p, pres, F0, partition_edge_directions(inst), name="shaped_partition")


def clustering_to_instance(points: Iterable[Iterable], p: int, m: int) -> tuple[ShapedPartitionInstance, ConvexObjective]:
    """Balanced clustering (p clusters of size m) as a shaped partition problem.

    Maximizing the squared norm of the matrix of cluster sums is equivalent to
    minimizing the sum of cluster variances when all clusters have size m.
    """
    pts = tuple(vector(v) for v in points)
    if len(pts) != p * m:
        raise ValueError(f"balanced clustering needs n = p*m points, got n={len(pts)}, p={p}, m={m}")
    inst = ShapedPartitionInstance(pts, p, (m,) * p, (m,) * p)
    return inst, ConvexObjective.squared_l2(inst.d * p)


def cluster_variance(points: Sequence[Sequence], partition: Partition, p: int | None = None) -> Fraction:
    """Sum over parts of (1/|part|) * sum of squared distances to the part mean."""
    if p is None:
        p = max(partition.assignment)
    total = Fraction(0)
    pts = [tuple(Fraction(x) for x in v) for v in points]
    for part in partition.parts(p):
        if not part:
            raise ValueError("cluster variance is undefined for an empty part")
        size = len(part)
        mean = [sum(pts[i - 1][t] for i in part) / size for t in range(len(pts[0]))]
        sq = sum(sum((pts[i - 1][t] - mean[t]) ** 2 for t in range(len(mean))) for i in part)
        total += sq / size
    return total
