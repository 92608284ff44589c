import random
from fractions import Fraction

import pytest

from convexcomb.families.matroid import MatroidSpec

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rand_rational(rng, lo=-5, hi=5, maxden=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def rand_vector(rng, d, **kw):
    return tuple(rand_rational(rng, **kw) for _ in range(d))


def rand_generators(rng, m, d, **kw):
    gens = []
    for _ in range(m):
        g = rand_vector(rng, d, **kw)
        while not any(g):
            g = rand_vector(rng, d, **kw)
        gens.append(g)
    return gens


def rand_matroid(rng, n, mode):
    variant = rng.choice(["uniform", "graphic", "linear"])
    if variant == "uniform":
        return MatroidSpec.uniform(n, rng.randint(0, n), mode)
    if variant == "graphic":
        v = rng.randint(2, 5)
        edges = [(rng.randint(1, v), rng.randint(1, v)) for _ in range(n)]  # loops allowed
        return MatroidSpec.graphic(v, edges, mode)
    rows = rng.randint(1, 3)
    cols = [[rng.randint(-1, 2) for _ in range(rows)] for _ in range(n)]
    return MatroidSpec.linear(cols, mode)


def rand_bounds(rng, n, p):
    """Random feasible shape bounds; sometimes the unrestricted ones."""
    if rng.random() < 0.3:
        return [0] * p, [n] * p
    while True:
        lo = [rng.randint(0, n) for _ in range(p)]
        hi = [rng.randint(a, n) for a in lo]
        if sum(lo) <= n <= sum(hi):
            return lo, hi


@pytest.fixture
def rng():
    return random.Random(12345)
