"""Family presentations and the oracle simulation chain.

A family over ``N = {1..n}`` may be presented by a membership test, an
augmentation oracle, or a linear optimization oracle. Given a set of
{-1,0,1} edge-directions of the family polytope, membership is enough to
simulate augmentation (scan for an improving, admissible direction), and
augmentation is enough to simulate linear optimization (bit scaling).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .numeric import clear_denominators
from .zonotope import GeneratorSet

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of ``{1..n}``; ``members`` is sorted and 1-based."""

    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        ms = tuple(self.members)
        if any(not 1 <= j <= self.n for j in ms):
            raise ValueError(f"member out of range 1..{self.n}: {ms}")
        if len(set(ms)) != len(ms):
            raise ValueError(f"repeated member in {ms}")
        ms = tuple(sorted(ms))
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_indicator(cls, x: Sequence[int]) -> "Subset":
        if any(v not in (0, 1) for v in x):
            raise ValueError("indicator must be a 0/1 vector")
        return cls(len(x), tuple(j + 1 for j, v in enumerate(x) if v))

    def indicator(self) -> tuple[int, ...]:
        s = set(self.members)
        return tuple(int(j in s) for j in range(1, self.n + 1))

    def weight(self, b: Sequence) -> Fraction:
        return sum((Fraction(b[j - 1]) for j in self.members), Fraction(0))

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j) -> bool:
        return j in self.members

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class FamilyPresentation:
    """Optional capabilities of a family.

    ``membership(F) -> bool``, ``augment(F, b) -> Subset | None`` and
    ``linear_optimize(b) -> Subset``. ``candidates()`` optionally yields a
    superset of the members; brute-force enumeration uses it instead of all
    2^n subsets when present.
    """

    membership: Optional[Callable[[Subset], bool]] = None
    augment: Optional[Callable[[Subset, Sequence], Optional[Subset]]] = None
    linear_optimize: Optional[Callable[[Sequence], Subset]] = None
    candidates: Optional[Callable[[], Iterable[Subset]]] = None
    stateless: bool = True

    def __post_init__(self):
        if self.membership is None and self.augment is None and self.linear_optimize is None:
            raise ValueError("a presentation needs at least one capability")


@dataclass(frozen=True)
class EdgeGuaranteedFamily:
    """A family with one known member and a set containing a direction of every edge."""

    n: int
    presentation: FamilyPresentation
    initial_member: Subset
    edge_directions: GeneratorSet
    name: str = ""

    def __post_init__(self):
        if self.edge_directions.d != self.n:
            raise ValueError("edge directions must live in Q^n")
        for e in self.edge_directions:
            if any(v not in (-1, 0, 1) for v in e):
                raise ValueError(f"edge direction {e} is not a {{-1,0,1}}-vector")
        if self.initial_member.n != self.n:
            raise ValueError("initial member has the wrong ground set")
        mem = self.presentation.membership
        if mem is not None and not mem(self.initial_member):
            raise ValueError(f"initial member {self.initial_member} is not in the family")

    def is_member(self, F: Subset) -> bool:
        if self.presentation.membership is None:
            raise TypeError("family has no membership oracle")
        return self.presentation.membership(F)


def membership_only(fam: EdgeGuaranteedFamily) -> EdgeGuaranteedFamily:
    """Same family, stripped down to its membership oracle."""
    p = fam.presentation
    if p.membership is None:
        raise TypeError("family has no membership oracle")
    pres = FamilyPresentation(membership=p.membership, candidates=p.candidates, stateless=p.stateless)
    return EdgeGuaranteedFamily(fam.n, pres, fam.initial_member, fam.edge_directions, fam.name)


def _signed_directions(E: GeneratorSet):
    for e in E:
        yield e
        yield tuple(-v for v in e)


def augment_via_membership(fam: EdgeGuaranteedFamily, F: Subset, b: Sequence) -> Optional[Subset]:
    """Return a member with larger b-weight than ``F`` or None if ``F`` is b-optimal.

    Directions are scanned as e_1, -e_1, e_2, -e_2, ...; the first one that is
    improving (b.g > 0) and admissible (1_F + g is a 0/1 member) is taken.
    """
    if len(b) != fam.n:
        raise ValueError("weighting has the wrong length")
    if not fam.is_member(F):
        raise ValueError(f"{F} is not a member of the family")
    x = F.indicator()
    for g in _signed_directions(fam.edge_directions):
        if any(v not in (-1, 0, 1) for v in g):
            raise ValueError(f"edge direction {g} is not a {{-1,0,1}}-vector")
        gain = sum((Fraction(b[j]) * g[j] for j in range(fam.n) if g[j]), Fraction(0))
        if gain <= 0:
            continue
        y = tuple(a + c for a, c in zip(x, g))
        if any(v not in (0, 1) for v in y):
            continue
        G = Subset.from_indicator(y)
        if fam.presentation.membership(G):
            return G
    return None


@dataclass
class ScalingTrace:
    """Bookkeeping for :func:`optimize_via_augmentation`.

    ``runs`` holds, per augmentation run, the sequence of iterate weights under
    that run's integer weighting.
    """

    k: int = 0
    scaled: bool = False
    steps: int = 0
    runs: list = field(default_factory=list)


def _augmenter(fam: EdgeGuaranteedFamily):
    if fam.presentation.augment is not None:
        return fam.presentation.augment
    if fam.presentation.membership is not None:
        return lambda F, b: augment_via_membership(fam, F, b)
    raise TypeError("family offers neither augmentation nor membership")


def _augment_until_optimal(augment, F: Subset, a: Sequence[int], trace: ScalingTrace) -> Subset:
    weights = [F.weight(a)]
    while True:
        G = augment(F, a)
        if G is None:
            break
        if G.weight(a) <= weights[-1]:
            raise RuntimeError("augmentation oracle returned a non-improving member")
        F = G
        weights.append(F.weight(a))
        trace.steps += 1
    trace.runs.append(weights)
    return F


def scaling_bits(a: Sequence[int]) -> int:
    """``1 + max_j ceil(log2 |a_j|)``, or 0 for the zero weighting."""
    nz = [abs(v) for v in a if v]
    if not nz:
        return 0
    return 1 + max((v - 1).bit_length() for v in nz)


def optimize_via_augmentation(
    fam: EdgeGuaranteedFamily, b: Sequence, trace: ScalingTrace | None = None
) -> Subset:
    """Maximize ``b`` over the family using only augmentation steps.

    For nonnegative weights this is the bit-scaling scheme: phases
    ``i = 0..k`` each augment to optimality under ``floor(2^(i-k) a)``
    starting from the previous phase's member. Weights with negative entries
    are handled by plain augmentation under ``a`` itself.
    """
    if trace is None:
        trace = ScalingTrace()
    augment = _augmenter(fam)
    a, _ = clear_denominators(b)
    F = fam.initial_member
    if all(v >= 0 for v in a):
        k = scaling_bits(a)
        trace.k, trace.scaled = k, True
        for i in range(k + 1):
            F = _augment_until_optimal(augment, F, [v >> (k - i) for v in a], trace)
    else:
        trace.scaled = False
        F = _augment_until_optimal(augment, F, a, trace)
    log.debug("augmentation finished after %d steps", trace.steps)
    return F


def linear_optimize(fam: EdgeGuaranteedFamily, b: Sequence) -> Subset:
    """A member of maximum b-weight, using the strongest capability available."""
    if len(b) != fam.n:
        raise ValueError("weighting has the wrong length")
    p = fam.presentation
    if p.linear_optimize is not None:
        return p.linear_optimize(b)
    return optimize_via_augmentation(fam, b)
