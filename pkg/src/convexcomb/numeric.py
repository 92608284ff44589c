"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). Vectors are tuples of Fractions, matrices are tuples of
row tuples. Everything is immutable, so values can be shared freely.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[RatVector, ...]
SignVector = tuple  # tuple[int, ...] with entries +1/-1

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction; floats are refused.

    Strings must look like ``"3"``, ``"-7/2"``; decimal notation such as
    ``"0.5"`` is rejected so that no inexact value slips in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise ValueError(
                f"malformed rational {value!r}: write integers or p/q (e.g. '1/2'), never decimals"
            )
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> RatVector:
    return tuple(rational(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> RatMatrix:
    out = tuple(vector(r) for r in rows)
    if not out or not out[0]:
        raise ValueError("matrix dimensions must be positive")
    if any(len(r) != len(out[0]) for r in out):
        raise ValueError("matrix rows have different lengths")
    return out


def zero_vector(d: int) -> RatVector:
    return (Fraction(0),) * d


def inner_product(a: Sequence, x: Sequence) -> Fraction:
    if len(a) != len(x):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(x)}")
    return sum((Fraction(ai) * xi for ai, xi in zip(a, x)), Fraction(0))


def add(x: Sequence, y: Sequence) -> RatVector:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return tuple(Fraction(a) + b for a, b in zip(x, y))


def scale(s, x: Sequence) -> RatVector:
    return tuple(Fraction(s) * v for v in x)


def neg(x: Sequence) -> RatVector:
    return tuple(-Fraction(v) for v in x)


def is_zero(x: Sequence) -> bool:
    return all(v == 0 for v in x)


def sign(q) -> int:
    return (q > 0) - (q < 0)


def lcm_of_denominators(values: Iterable) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def clear_denominators(b: Sequence) -> tuple[tuple[int, ...], int]:
    """Scale ``b`` by the lcm of its denominators.

    Returns ``(ints, scale)``. Because the scale is positive, any comparison
    between subset sums is preserved.
    """
    s = lcm_of_denominators(b)
    return tuple(int(Fraction(v) * s) for v in b), s


def primitive(x: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (positive scaling)."""
    g = 0
    for v in x:
        g = math.gcd(g, v)
    if g <= 1:
        return tuple(x)
    return tuple(v // g for v in x)


def integer_direction(x: Sequence) -> tuple[int, ...]:
    """Primitive integer vector that is a positive multiple of the rational ``x``."""
    ints, _ = clear_denominators(x)
    return primitive(ints)


def canonical_line(x: Sequence[int]) -> tuple[int, ...]:
    """Representative of the line through ``x``: primitive, first nonzero entry positive."""
    p = primitive(x)
    for v in p:
        if v:
            return p if v > 0 else tuple(-t for t in p)
    return p


def proportional(x: Sequence, y: Sequence) -> bool:
    """True iff x and y are nonzero and span the same line."""
    if is_zero(x) or is_zero(y):
        return False
    return canonical_line(integer_direction(x)) == canonical_line(integer_direction(y))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix given as a sequence of rows."""
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RatVector]:
    """Basis of {z : rows @ z = 0} over Q."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        z = [Fraction(0)] * ncols
        z[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            z[pc] = -row[f]
        basis.append(tuple(z))
    return basis


def mat_vec(rows: Sequence[Sequence], x: Sequence) -> RatVector:
    return tuple(inner_product(r, x) for r in rows)


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sgn * a[n - 1][n - 1]


def generalized_cross(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer vector orthogonal to the D-1 given rows in Z^D (zero iff they are dependent)."""
    d = len(rows) + 1
    out = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        out.append((-1) ** j * det_int(minor))
    return tuple(out)
