"""Tiny exact simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The origin is feasible by assumption, so no phase one is needed. Bland's
rule is used for both pivot choices, which rules out cycling on the highly
degenerate systems produced by homogeneous cone tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Return ``(optimum, x)``; raises :class:`Unbounded` if there is no finite optimum."""
    m, n = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative (origin must be feasible)")
    # tableau rows: [A | I | b]; objective row holds reduced costs -c
    rows = [
        [Fraction(v) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [Fraction(b[i])]
        for i in range(m)
    ]
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]

    while True:
        entering = next((j for j in range(n + m) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            coef = rows[i][entering]
            if coef > 0:
                ratio = rows[i][-1] / coef
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded
        r = best[1]
        piv = rows[r][entering]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(m):
            f = rows[i][entering]
            if i != r and f != 0:
                rows[i] = [a - f * p for a, p in zip(rows[i], rows[r])]
        f = obj[entering]
        obj = [a - f * p for a, p in zip(obj, rows[r])]
        basis[r] = entering

    x = [Fraction(0)] * (n + m)
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    return obj[-1], tuple(x[:n])
