"""Exhaustive oracles for small instances.

Nothing here is clever on purpose: these functions certify the rest of the
package, so they enumerate every member and compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import BudgetExceeded
from .numeric import inner_product, is_zero, rank_rational
from .oracles import EdgeGuaranteedFamily, Subset
from .reduce import ConvexObjective, VectorWeighting, evaluate_objective


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 14
    max_members: int = 2**20

    def __post_init__(self):
        if self.max_n < 1 or self.max_members < 1:
            raise ValueError("budget caps must be positive")


def _all_subsets(n: int):
    for size in range(n + 1):
        for combo in combinations(range(1, n + 1), size):
            yield Subset(n, combo)


def enumerate_members(fam: EdgeGuaranteedFamily, budget: EnumerationBudget = EnumerationBudget()) -> list[Subset]:
    """All members in lexicographic order of their sorted element tuples.

    Families that supply a ``candidates`` superset are scanned through it
    (capped by ``max_members``); otherwise all 2^n subsets are tested, which
    needs ``n <= max_n``.
    """
    if fam.presentation.membership is None:
        raise TypeError("enumeration needs a membership oracle")
    if fam.presentation.candidates is not None:
        pool = []
        for F in fam.presentation.candidates():
            pool.append(F)
            if len(pool) > budget.max_members:
                raise BudgetExceeded(f"more than {budget.max_members} candidates to test")
    else:
        if fam.n > budget.max_n:
            raise BudgetExceeded(f"ground set of size {fam.n} exceeds the brute-force cap {budget.max_n}")
        if 2**fam.n > budget.max_members:
            raise BudgetExceeded(f"2^{fam.n} subsets exceed the member cap {budget.max_members}")
        pool = _all_subsets(fam.n)
    members = [F for F in pool if fam.is_member(F)]
    members.sort(key=lambda F: F.members)
    return members


def brute_linear_max(fam, b: Sequence, budget: EnumerationBudget = EnumerationBudget()) -> tuple[Subset, Fraction]:
    best = None
    for F in enumerate_members(fam, budget):
        val = F.weight(b)
        if best is None or val > best[1]:
            best = (F, val)
    return best


def brute_convex_max(fam, w: VectorWeighting, c: ConvexObjective,
                     budget: EnumerationBudget = EnumerationBudget()) -> tuple[Subset, Fraction]:
    best = None
    for F in enumerate_members(fam, budget):
        val = evaluate_objective(c, w.of_subset(F))
        if best is None or val > best[1]:
            best = (F, val)
    return best


def is_circuit(A: Sequence[Sequence], z: Sequence) -> bool:
    """True iff z is a nonzero kernel vector of A with inclusion-minimal support.

    Minimality is equivalent to the columns of A on supp(z) having rank
    |supp(z)| - 1 (their kernel is then the line through z).
    """
    if any(len(row) != len(z) for row in A):
        raise ValueError("dimension mismatch between A and z")
    if is_zero(z):
        return False
    if any(inner_product(row, z) != 0 for row in A):
        return False
    support = [j for j, v in enumerate(z) if v != 0]
    sub = [[row[j] for j in support] for row in A]
    return rank_rational(sub) == len(support) - 1
