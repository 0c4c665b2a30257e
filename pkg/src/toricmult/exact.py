"""Exact scalars and integer vectors used by every other module.

Everything runs over arbitrary-precision integers and ``fractions.Fraction``.
No floating point, ever: strict inequalities at rational thresholds are
semantically load-bearing downstream.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

#: An integer lattice vector.  Plain tuples keep values hashable and cheap.
Vec = tuple
#: A vector with Fraction (or int) entries.
QVec = tuple


class GeometryError(ValueError):
    """An input violates a geometric precondition (semantic, not syntactic)."""


class NotPointedError(GeometryError):
    """The cone contains a line."""


class NotFullDimensionalError(GeometryError):
    """The cone does not span the ambient space."""


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise GeometryError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def vscale(s, a: Sequence) -> tuple:
    return tuple(s * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive(v: Sequence[int]) -> tuple[Vec, int]:
    """Factor a nonzero integer vector as (primitive part, positive gcd)."""
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        raise GeometryError("zero vector has no primitive part")
    return tuple(c // g for c in v), g


def floor_strict_bound(rho) -> int:
    """Least integer strictly greater than rho, i.e. floor(rho) + 1."""
    return math.floor(rho) + 1


def scale_to_integers(v: Sequence) -> tuple[Vec, Fraction]:
    """Scale a rational vector by the positive factor making it primitive integer.

    Returns (w, s) with w primitive integer and v = s*w.  v must be nonzero.
    """
    mult = 1
    for c in v:
        mult = mult * Fraction(c).denominator // math.gcd(mult, Fraction(c).denominator)
    ints = [int(c * mult) for c in v]
    w, g = primitive(ints)
    return w, Fraction(g, mult)


def solve_linear(rows: Sequence[Sequence[int]], rhs: Sequence) -> Optional[QVec]:
    """Solve (row_i, x) = rhs_i exactly; None when inconsistent.

    Underdetermined systems get their free variables pinned to 0, so the
    result is deterministic.
    """
    if len(rows) != len(rhs):
        raise GeometryError("need one right-hand side per row")
    if not rows:
        raise GeometryError("cannot infer dimension from an empty system")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise GeometryError("rows of unequal length")
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = [x / aug[r][col] for x in aug[r]]
        aug[r] = pr
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], pr)]
        pivot_cols.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for k, col in enumerate(pivot_cols):
        x[col] = aug[k][n]
    return tuple(x)


def matrix_rank(rows: Sequence[Sequence[int]], width: int) -> int:
    """Rank of an integer (or rational) matrix by exact elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / pr[col]
                work[i] = [x - f * y for x, y in zip(work[i], pr)]
        rank += 1
        if rank == len(work):
            break
    return rank


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (exact, via Fraction elimination)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise GeometryError("determinant needs a square matrix")
    work = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            result = -result
        pr = work[col]
        result *= pr[col]
        for i in range(col + 1, n):
            if work[i][col] != 0:
                f = work[i][col] / pr[col]
                work[i] = [x - f * y for x, y in zip(work[i], pr)]
    assert result.denominator == 1
    return int(result)


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    """2x2 determinant |a b| for rank-2 vectors."""
    return a[0] * b[1] - a[1] * b[0]


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (no decimals, no whitespace tricks)."""
    s = text.strip()
    body = s[1:] if s.startswith("-") else s
    num, sep, den = body.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise ValueError("not a rational literal: %r" % text)
    if sep and int(den) == 0:
        raise ValueError("zero denominator: %r" % text)
    return Fraction(s)


def rational_str(q) -> str:
    """Render a rational as "p" or "p/q"; never as a decimal."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
