import math
import random
from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import pytest

from convexcomb.bruteforce import brute_convex_max, brute_linear_max, enumerate_members, is_circuit
from convexcomb.errors import InfeasibleError
from convexcomb.families import (
    MatroidSpec,
    Partition,
    ShapedPartitionInstance,
    cluster_variance,
    clustering_to_instance,
    matroid_edge_directions,
    matroid_family,
    matroid_greedy,
    matroid_independent,
    partition_edge_directions,
    partition_family,
    partition_linear_opt,
    partition_weighting,
    powerset_edge_directions,
    powerset_linear_opt,
    psd_qap_to_instance,
    transportation_circuits,
)
from convexcomb.families.partition import (
    circuit_count,
    decode,
    encode,
    flat_index,
    part_sums,
    transportation_matrix,
)
from convexcomb.oracles import Subset
from convexcomb.reduce import convex_maximize

from conftest import rand_bounds, rand_matroid


def S(n, *xs):
    return Subset(n, xs)


# -- power set -------------------------------------------------------------


def test_powerset_linear_opt():
    assert powerset_linear_opt(4, (3, -1, 0, 2)) == S(4, 1, 4)
    assert powerset_linear_opt(3, (-1, -2, -3)) == S(3)
    assert powerset_linear_opt(3, (0, 0, 0)) == S(3)


def test_powerset_edge_directions():
    assert powerset_edge_directions(2).generators == ((1, 0), (0, 1))
    assert powerset_edge_directions(1).generators == ((1,),)
    assert powerset_edge_directions(3).m == 3


def test_psd_qap_examples():
    fam, w, c = psd_qap_to_instance([[1, -1, 2]])
    r = convex_maximize(fam, w, c)
    assert r.optimum == S(3, 1, 3) and r.value == 9
    fam, w, c = psd_qap_to_instance([[0, 0, 0]])
    assert convex_maximize(fam, w, c).value == 0
    fam, w, c = psd_qap_to_instance([[1, 0], [0, 1]])
    r = convex_maximize(fam, w, c)
    assert r.optimum == S(2, 1, 2) and r.value == 2


def test_psd_qap_quadratic_form_identity():
    rng = random.Random(3)
    W = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)]
    fam, w, c = psd_qap_to_instance(W)
    for x in product((0, 1), repeat=4):
        Wx = [sum(W[t][j] * x[j] for j in range(4)) for t in range(2)]
        F = Subset.from_indicator(x)
        assert c(w.of_subset(F)) == sum(v * v for v in Wx)


# -- matroids --------------------------------------------------------------

TRIANGLE = MatroidSpec.graphic(3, [(1, 2), (2, 3), (1, 3)])


def test_matroid_independent_examples():
    u = MatroidSpec.uniform(3, 2)
    assert matroid_independent(u, [1, 3])
    assert not matroid_independent(u, [1, 2, 3])
    assert not matroid_independent(TRIANGLE, [1, 2, 3])
    lin = MatroidSpec.linear([(1, 0), (0, 1), (1, 1)])
    assert not matroid_independent(lin, [1, 2, 3])
    assert matroid_independent(lin, [1, 3])


def test_matroid_greedy_examples():
    assert matroid_greedy(MatroidSpec.uniform(3, 2), (5, 1, 3)) == S(3, 1, 3)
    F = matroid_greedy(TRIANGLE, (2, 2, 1))
    assert F == S(3, 1, 2) and F.weight((2, 2, 1)) == 4
    assert F.weight((2, 2, 1)) == brute_linear_max(matroid_family(TRIANGLE), (2, 2, 1))[1]
    ind = MatroidSpec.uniform(3, 2, "independent_sets")
    assert matroid_greedy(ind, (5, -1, 3)) == S(3, 1, 3)
    assert brute_linear_max(matroid_family(ind), (5, -1, 3)) == (S(3, 1, 3), 8)


def test_rank_zero_matroid_has_empty_basis():
    spec = MatroidSpec.uniform(3, 0)
    assert matroid_greedy(spec, (1, 2, 3)) == S(3)


def test_matroid_edge_directions():
    assert matroid_edge_directions(3, "bases").m == 3
    assert matroid_edge_directions(3, "independent_sets").m == 6
    assert matroid_edge_directions(1, "bases").m == 0


def test_matroid_spec_validation():
    with pytest.raises(ValueError):
        MatroidSpec.uniform(2, 3)
    with pytest.raises(ValueError):
        MatroidSpec.graphic(2, [(1, 3)])
    with pytest.raises(ValueError):
        MatroidSpec.linear([(1, 0), (1,)])


@pytest.mark.parametrize("seed", range(40))
def test_greedy_optimality(seed):
    rng = random.Random(seed)
    spec = rand_matroid(rng, rng.randint(1, 10), rng.choice(["bases", "independent_sets"]))
    b = [Fraction(rng.randint(-9, 9), rng.randint(1, 2)) for _ in range(spec.n)]
    fam = matroid_family(spec)
    assert matroid_greedy(spec, b).weight(b) == brute_linear_max(fam, b)[1]


@pytest.mark.parametrize("seed", range(15))
def test_bases_exchange_sanity(seed):
    rng = random.Random(seed)
    spec = rand_matroid(rng, rng.randint(2, 7), "bases")
    dirs = set(matroid_edge_directions(spec.n, "bases").generators)
    assert all(sum(e) == 0 for e in dirs)
    bases = enumerate_members(matroid_family(spec))
    for A, B in combinations(bases, 2):
        diff = tuple(a - b for a, b in zip(A.indicator(), B.indicator()))
        if sum(map(abs, diff)) == 2:  # one exchange apart
            assert diff in dirs or tuple(-v for v in diff) in dirs


# -- shaped partitions -----------------------------------------------------


def test_encoding_layout():
    assert flat_index(1, 1, 3) == 1 and flat_index(2, 3, 3) == 6
    part = Partition((2, 1))
    F = encode(part, 2)
    assert F == S(4, 2, 3)
    assert decode(F, 2, 2) == part
    assert decode(S(4, 1, 2), 2, 2) is None  # item 1 in two parts


def test_partition_edge_directions_examples():
    general = ShapedPartitionInstance.of([(0,), (0,)], 2, [0, 0], [1, 2])
    assert partition_edge_directions(general).m == 3
    unrestricted = ShapedPartitionInstance.of([(0,), (0,)], 2)
    assert unrestricted.unrestricted
    assert partition_edge_directions(unrestricted).m == 2
    one = ShapedPartitionInstance.of([(0,)], 2, [0, 0], [1, 0])
    assert partition_edge_directions(one).m == 1


def test_partition_linear_opt_examples():
    inst = ShapedPartitionInstance.of([(0,), (0,)], 2, [1, 1], [1, 1])
    b = (3, 0, 1, 5)
    assert partition_linear_opt(inst, b) == Partition((1, 2))
    F, val = brute_linear_max(partition_family(inst), b)
    assert val == 8 and decode(F, 2, 2) == Partition((1, 2))
    free = ShapedPartitionInstance.of([(0,)] * 3, 3)
    assert partition_linear_opt(free, (1, 4, 4, 0, 0, 0, 2, 1, 3)) == Partition((2, 1, 3))
    with pytest.raises(InfeasibleError):
        partition_linear_opt(ShapedPartitionInstance.of([(0,), (0,)], 2, [2, 2], [2, 2]), (0,) * 4)


def test_enumerate_bijections():
    inst = ShapedPartitionInstance.of([(0,), (0,)], 2, [1, 1], [1, 1])
    assert len(enumerate_members(partition_family(inst))) == 2


@pytest.mark.parametrize("seed", range(60))
def test_transportation_oracle(seed):
    rng = random.Random(seed)
    n, p = rng.randint(1, 7), rng.randint(1, 3)
    lo, hi = rand_bounds(rng, n, p)
    inst = ShapedPartitionInstance.of([(0,)] * n, p, lo, hi)
    b = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n * p)]
    part = partition_linear_opt(inst, b)
    assert all(a <= s <= c for a, s, c in zip(lo, part.shape(p), hi))
    assert encode(part, p).weight(b) == brute_linear_max(partition_family(inst), b)[1]


def cycles_of_bipartite(n, p):
    """Alternating +-1 lifted matrices for every cycle of K_{n+1,p}, via networkx."""
    G = nx.complete_bipartite_graph(n + 1, p)  # rows 0..n, columns n+1..n+p
    out = set()
    for cyc in nx.simple_cycles(G):
        z = [[0] * p for _ in range(n + 1)]
        for k, u in enumerate(cyc):
            v = cyc[(k + 1) % len(cyc)]
            r, c = (u, v - n - 1) if u <= n else (v, u - n - 1)
            z[r][c] = 1 if k % 2 == 0 else -1
        flat = [x for row in z for x in row]
        if next(x for x in flat if x) < 0:
            z = [[-x for x in row] for row in z]
        out.add(tuple(map(tuple, z)))
    return out


@pytest.mark.parametrize("n, p", [(n, p) for n in range(1, 5) for p in (2, 3)])
def test_circuits_match_cycle_listing(n, p):
    mine = transportation_circuits(n, p)
    assert len(mine) == len(set(mine)) == circuit_count(n, p)
    assert set(mine) == cycles_of_bipartite(n, p)
    formula = sum(math.comb(p, i) * math.comb(n + 1, i) * math.factorial(i) * math.factorial(i - 1)
                  for i in range(2, p + 1)) / 2
    assert circuit_count(n, p) == formula


@pytest.mark.parametrize("n, p", [(1, 2), (2, 2), (3, 3)])
def test_circuit_validity(n, p):
    A = transportation_matrix(n, p)
    for z in transportation_circuits(n, p):
        flat = [v for row in z for v in row]
        assert set(flat) <= {-1, 0, 1}
        assert all(sum(row) == 0 for row in z)  # item rows and row 0
        assert all(sum(z[r][c] for r in range(n + 1)) == 0 for c in range(p))
        assert is_circuit(A, flat)


def test_clustering_example():
    pts = [(0,), (1,), (4,), (5,)]
    inst, c = clustering_to_instance(pts, 2, 2)
    fam, w = partition_family(inst), partition_weighting(inst)
    r = convex_maximize(fam, w, c)
    part = decode(r.optimum, 4, 2)
    assert r.value == 82 and part == Partition((1, 1, 2, 2))
    assert cluster_variance(pts, part) == Fraction(1, 2)
    values = sorted((c(w.of_subset(F)) for F in enumerate_members(fam)), reverse=True)
    assert values == [82, 82, 52, 52, 50, 50]  # each bipartition twice (parts are ordered)
    assert brute_convex_max(fam, w, c)[1] == 82


def test_clustering_single_cluster_and_errors():
    pts = [(1, 2), (3, -1), (0, 5)]
    inst, c = clustering_to_instance(pts, 1, 3)
    r = convex_maximize(partition_family(inst), partition_weighting(inst), c)
    assert r.value == 4**2 + 6**2
    with pytest.raises(ValueError):
        clustering_to_instance(pts, 2, 2)


def test_cluster_variance_examples():
    pts = [(0,), (1,), (4,), (5,)]
    assert cluster_variance(pts, Partition((1, 1, 2, 2))) == Fraction(1, 2)
    assert cluster_variance(pts, Partition((1, 2, 3, 4))) == 0
    assert cluster_variance(pts, Partition((1, 2, 1, 2))) == 8
    with pytest.raises(ValueError):
        cluster_variance(pts, Partition((1, 1, 3, 3)), 3)


@pytest.mark.parametrize("seed", range(20))
def test_clustering_duality(seed):
    rng = random.Random(seed)
    p, m, d = rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 2)
    pts = [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 2)) for _ in range(d)) for _ in range(p * m)]
    inst, _ = clustering_to_instance(pts, p, m)
    norms = sum(sum(x * x for x in v) for v in pts)
    for F in enumerate_members(partition_family(inst)):
        part = decode(F, p * m, p)
        s = part_sums(pts, part, p)
        col_norms = sum(s[t][j] ** 2 for t in range(d) for j in range(p))
        assert Fraction(norms, m) - Fraction(col_norms, m * m) == cluster_variance(pts, part, p)
