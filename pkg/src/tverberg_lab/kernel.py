"""Exact rational linear algebra and the orientation predicate.

Everything here works on :class:`fractions.Fraction` (or plain ``int``)
entries.  Determinants and linear solves scale rows to integers and run
fraction-free (Bareiss) elimination, so intermediate entries stay integral
and their size stays bounded by the size of the minors.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

import gmpy2

Point = tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


class SingularSystemError(ArithmeticError):
    pass


class GenericityError(ValueError):
    """Raised when an input violates the general-position assumption."""


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


def make_point(coords: Iterable) -> Point:
    return tuple(to_fraction(c) for c in coords)


def _integer_rows(matrix: Sequence[Sequence]) -> tuple[list[list[int]], Fraction]:
    """Scale every row to integers; return the rows and the product of scales."""
    rows = []
    scale = Fraction(1)
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        rows.append([gmpy2.mpz(int(x * den)) for x in row])
        scale *= den
    return rows, scale


def _bareiss(m: list[list[int]], ncols: int) -> tuple[int, int]:
    """In-place Bareiss elimination on the leading n x n block.

    Returns ``(last_pivot, sign)``: ``sign * last_pivot`` is the determinant
    of the integer block, and ``last_pivot`` is 0 iff the block is singular.
    """
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0, sign
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, ncols):
                ri[j] = (pivot * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return m[n - 1][n - 1], sign


def det(matrix: Sequence[Sequence]) -> Fraction:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DimensionError("determinant needs a non-empty square matrix")
    rows, scale = _integer_rows(matrix)
    value, sign = _bareiss(rows, n)
    return Fraction(int(sign * value)) / scale


def solve_cramer(a: Sequence[Sequence], b: Sequence) -> tuple[list[int], int]:
    """Fraction-free solve: integers ``nums`` and ``den`` with x_i = nums[i] / den.

    ``den`` is (up to sign) the determinant of the row-scaled integer matrix,
    so every ``nums[i]`` is an integer by Cramer's rule.
    """
    n = len(a)
    if n == 0 or any(len(row) != n for row in a) or len(b) != n:
        raise DimensionError("solve needs an n x n matrix and a length-n vector")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, _ = _integer_rows(aug)
    den, _ = _bareiss(m, n + 1)
    if den == 0:
        raise SingularSystemError("singular linear system")
    nums = [gmpy2.mpz(0)] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        acc = den * row[n]
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * nums[j]
        nums[i] = acc // row[i]
    return [int(v) for v in nums], int(den)


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a @ x = b`` exactly; raise SingularSystemError if det(a) = 0."""
    nums, den = solve_cramer(a, b)
    return [Fraction(v, den) for v in nums]


def mat_vec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((aij * xj for aij, xj in zip(row, x)), Fraction(0)) for row in a]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def orientation(points: Sequence[Sequence]) -> Sign:
    """Sign of det [[1 ... 1], [p_0 ... p_d]] for d+1 points in R^d."""
    if not points:
        raise DimensionError("orientation needs d+1 points")
    d = len(points[0])
    if len(points) != d + 1 or any(len(p) != d for p in points):
        raise DimensionError(f"orientation needs {d + 1} points of dimension {d}")
    if d == 0:
        return Sign.POSITIVE
    # each point becomes the integer row (L, L*p) with L > 0 clearing its
    # denominators; positive row scalings leave the sign unchanged
    rows = []
    for p in points:
        den = 1
        for x in p:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        rows.append([gmpy2.mpz(den)] + [gmpy2.mpz(int(x * den)) if den != 1 else gmpy2.mpz(int(x)) for x in p])
    value, sign = _bareiss(rows, d + 1)
    return Sign.of(int(sign * value))


def is_generic(points: Sequence[Sequence], arity: int | None = None) -> bool:
    """True iff no (d+1)-subset of the points has zero orientation.

    ``arity`` defaults to d+1 and is accepted for interface symmetry with
    predicates of other arities; only d+1 is meaningful here.
    """
    if not points:
        return True
    d = len(points[0])
    k = d + 1 if arity is None else arity
    if k != d + 1:
        raise DimensionError("only orientation genericity (arity d+1) is supported")
    if len(points) < k:
        raise DimensionError(f"need at least {k} points")
    return all(orientation([points[i] for i in c]) != Sign.ZERO
               for c in combinations(range(len(points)), k))
