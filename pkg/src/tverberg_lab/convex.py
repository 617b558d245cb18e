"""Euclidean convexity predicates on exact point sequences.

Indices handed to and returned from this module are 1-based labels: label
``i`` names the i-th point of the sequence.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .kernel import (
    GenericityError,
    Point,
    Sign,
    SingularSystemError,
    make_point,
    orientation,
    solve_cramer,
    solve_linear,
)
from .type_algebra import TverbergType, decode, enumerate_types, t_param


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class PointSequence:
    """An ordered list of exact points; label i refers to ``points[i-1]``."""

    points: tuple[Point, ...]
    dim: int = field(default=-1)

    def __post_init__(self):
        pts = tuple(make_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        dim = len(pts[0]) if pts else max(self.dim, 0)
        if self.dim not in (-1, dim):
            raise ValueError(f"declared dim {self.dim} but points have dim {dim}")
        object.__setattr__(self, "dim", dim)
        if any(len(p) != dim for p in pts):
            raise ValueError("all points must share one dimension")

    @classmethod
    def of(cls, points: Iterable[Iterable]) -> "PointSequence":
        return cls(tuple(tuple(p) for p in points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def point(self, label: int) -> Point:
        if not 1 <= label <= len(self.points):
            raise IndexError(f"label {label} outside 1..{len(self.points)}")
        return self.points[label - 1]

    @property
    def labels(self) -> range:
        return range(1, len(self.points) + 1)

    def subsequence(self, labels: Iterable[int]) -> "PointSequence":
        return PointSequence(tuple(self.point(i) for i in labels))

    @cached_property
    def orientation_signs(self) -> frozenset[Sign]:
        k = self.dim + 1
        if len(self.points) < k:
            return frozenset()
        return frozenset(orientation([self.points[i] for i in c])
                         for c in combinations(range(len(self.points)), k))

    @cached_property
    def is_generic(self) -> bool:
        return Sign.ZERO not in self.orientation_signs

    @cached_property
    def homogeneous_sign(self) -> Sign | None:
        """The common orientation of all (d+1)-subsequences, or None."""
        signs = self.orientation_signs
        if len(signs) == 1 and Sign.ZERO not in signs:
            return next(iter(signs))
        return None

    @property
    def is_homogeneous(self) -> bool:
        return self.homogeneous_sign is not None


def _as_points(seq) -> tuple[Point, ...]:
    if isinstance(seq, PointSequence):
        return seq.points
    return tuple(make_point(p) for p in seq)


def combine(points: Sequence[Point], weights: Sequence[Fraction]) -> Point:
    d = len(points[0])
    return tuple(sum((w * p[i] for w, p in zip(weights, points)), Fraction(0)) for i in range(d))


@dataclass(frozen=True)
class RadonResult:
    partition: tuple[frozenset[int], frozenset[int]]
    radon_point: Point
    coefficients: dict[int, Fraction]


def radon_partition(points) -> RadonResult:
    """The unique Radon partition of d+2 generic points in R^d.

    Solves sum(a_i) = 0, sum(a_i p_i) = 0 with a_1 = 1; the sign of a_i
    decides the side of point i.  The side containing label 1 is listed first.
    """
    pts = _as_points(points)
    d = len(pts[0])
    n = d + 2
    if len(pts) != n:
        raise ValueError(f"radon_partition needs {n} points in dimension {d}")
    rows = [[Fraction(1)] * n]
    for i in range(d):
        rows.append([p[i] for p in pts])
    rows.append([Fraction(1)] + [Fraction(0)] * (n - 1))
    rhs = [Fraction(0)] * (d + 1) + [Fraction(1)]
    try:
        alpha = solve_linear(rows, rhs)
    except SingularSystemError:
        raise GenericityError("points are affinely dependent") from None
    if any(a == 0 for a in alpha):
        raise GenericityError("d+1 of the points are affinely dependent")
    pos = [i for i, a in enumerate(alpha) if a > 0]
    neg = [i for i, a in enumerate(alpha) if a < 0]
    total = sum(alpha[i] for i in pos)
    coefficients = {i + 1: abs(a) / total for i, a in enumerate(alpha)}
    radon_point = combine([pts[i] for i in pos], [coefficients[i + 1] for i in pos])
    return RadonResult(
        (frozenset(i + 1 for i in pos), frozenset(i + 1 for i in neg)),
        radon_point,
        coefficients,
    )


def point_in_simplex(q, simplex) -> bool:
    """Membership of q in a full-dimensional simplex by orientation replacement."""
    q = make_point(q)
    verts = list(_as_points(simplex))
    d = len(q)
    if len(verts) != d + 1:
        raise ValueError(f"a simplex in R^{d} has {d + 1} vertices")
    base = orientation(verts)
    if base == Sign.ZERO:
        raise GenericityError("degenerate simplex")
    for i in range(d + 1):
        s = orientation(verts[:i] + [q] + verts[i + 1:])
        if s == Sign.ZERO:
            raise GenericityError(f"query point lies on the facet opposite vertex {i + 1}")
        if s != base:
            return False
    return True


@dataclass(frozen=True)
class TverbergCertificate:
    """Positive affine weights proving that a type holds.

    Weights are kept as integer numerators over one common denominator; the
    Fraction views are built on first access because reducing them is the
    expensive step for stretched-grid coordinates.
    """

    type: TverbergType
    numerators: tuple[dict[int, int], ...]
    denominator: int
    first_part_points: tuple[Point, ...]

    @cached_property
    def coefficients(self) -> tuple[dict[int, Fraction], ...]:
        return tuple({i: Fraction(v, self.denominator) for i, v in part.items()}
                     for part in self.numerators)

    @cached_property
    def tverberg_point(self) -> Point:
        nums = [self.numerators[0][i] for i in sorted(self.type.parts[0])]
        d = len(self.first_part_points[0])
        return tuple(sum((v * p[c] for v, p in zip(nums, self.first_part_points)), Fraction(0))
                     / self.denominator for c in range(d))

    def check(self, seq: PointSequence) -> bool:
        """Re-evaluate every part's convex combination exactly."""
        for part, weights in zip(self.type.parts, self.coefficients):
            if set(weights) != set(part) or any(w <= 0 for w in weights.values()):
                return False
            if sum(weights.values()) != 1:
                return False
            labels = sorted(part)
            pt = combine([seq.point(i) for i in labels], [weights[i] for i in labels])
            if pt != self.tverberg_point:
                return False
        return True


def tverberg_system(seq: PointSequence, tv: TverbergType) -> tuple[list[list[Fraction]], list[Fraction], list[int]]:
    """Assemble the square system for the affine weights of a type.

    Unknowns are ordered part by part (first part first).  Rows: one
    sum-to-one row per part, then d rows equating part 1's combination with
    part j's for j = 2..r.
    """
    d = seq.dim
    order = [i for part in tv.parts for i in sorted(part)]
    col = {label: k for k, label in enumerate(order)}
    n = len(order)
    rows, rhs = [], []
    for part in tv.parts:
        row = [Fraction(0)] * n
        for i in part:
            row[col[i]] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    first = tv.parts[0]
    for part in tv.parts[1:]:
        for c in range(d):
            row = [Fraction(0)] * n
            for i in first:
                row[col[i]] = seq.point(i)[c]
            for i in part:
                row[col[i]] = -seq.point(i)[c]
            rows.append(row)
            rhs.append(Fraction(0))
    return rows, rhs, order


def verify_tverberg(seq: PointSequence, tv: TverbergType | str, r: int | None = None) -> TverbergCertificate | None:
    """Certificate that the hulls of the parts share a point, or None.

    A part with more than d+1 points makes the system singular for every
    point set; on generic input such a type never holds, so None is returned.
    """
    if isinstance(tv, str):
        tv = decode(tv, seq.dim, r if r is not None else len(set(tv)))
    d = seq.dim
    if tv.d != d or len(seq) != t_param(d, tv.r):
        raise ValueError(f"type for (d={tv.d}, r={tv.r}) does not fit {len(seq)} points in R^{d}")
    if max(len(p) for p in tv.parts) > d + 1:
        return None
    rows, rhs, order = tverberg_system(seq, tv)
    try:
        nums, den = solve_cramer(rows, rhs)
    except SingularSystemError:
        raise GenericityError(f"singular Tverberg system for type {tv}") from None
    if den < 0:
        nums, den = [-v for v in nums], -den
    if any(v <= 0 for v in nums):
        return None
    weights = dict(zip(order, nums))
    numerators = tuple({i: weights[i] for i in sorted(part)} for part in tv.parts)
    first = tuple(seq.point(i) for i in sorted(tv.parts[0]))
    return TverbergCertificate(tv, numerators, den, first)


def _verify_chunk(args):
    seq, encodings, r = args
    out = []
    for enc in encodings:
        cert = verify_tverberg(seq, decode(enc, seq.dim, r))
        if cert is not None:
            out.append(cert)
    return out


def default_workers() -> int:
    return int(os.environ.get("TVERBERG_LAB_WORKERS", "1"))


def candidate_types(d: int, r: int) -> list[str]:
    """Encodings of all types whose parts have at most d+1 points."""
    return [enc for enc in enumerate_types(d, r)
            if max(enc.count(s) for s in set(enc)) <= d + 1]


def enumerate_tverberg_partitions(seq: PointSequence, r: int, workers: int | None = None) -> list[TverbergCertificate]:
    """All Tverberg partitions of a generic T(d, r)-point sequence.

    Results come in lexicographic order of the canonical encodings.
    """
    d = seq.dim
    if len(seq) != t_param(d, r):
        raise ValueError(f"need T({d},{r}) = {t_param(d, r)} points, got {len(seq)}")
    encodings = candidate_types(d, r)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(encodings) < 2 * workers:
        return _verify_chunk((seq, encodings, r))
    step = -(-len(encodings) // (4 * workers))
    chunks = [(seq, encodings[i:i + step], r) for i in range(0, len(encodings), step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [c for part in pool.map(_verify_chunk, chunks) for c in part]


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _separating_normal(p: Point, rest: Sequence[Point], max_rounds: int = 100000) -> list[Fraction]:
    """A normal n with n.(x - p) > 0 for every x in ``rest``.

    Starts from the direction towards the centroid and applies perceptron
    corrections, which terminate whenever p lies outside conv(rest).
    """
    d = len(p)
    diffs = [[x[i] - p[i] for i in range(d)] for x in rest]
    k = len(rest)
    normal = [sum((v[i] for v in diffs), Fraction(0)) / k for i in range(d)]
    for _ in range(max_rounds):
        bad = next((v for v in diffs if _dot(normal, v) <= 0), None)
        if bad is None:
            return normal
        normal = [a + b for a, b in zip(normal, bad)]
    raise PreconditionError("could not separate the endpoint from the remaining points")


def _inside_hull(p: Point, rest: Sequence[Point]) -> bool:
    d = len(p)
    for simplex in combinations(rest, d + 1):
        try:
            if point_in_simplex(p, simplex):
                return True
        except GenericityError:
            if orientation(list(simplex)) != Sign.ZERO:
                raise
    return False


def central_project(seq: PointSequence, endpoint: str = "first") -> PointSequence:
    """Project the other points from the first (or last) point into a
    separating hyperplane H, in a (d-1)-dimensional chart of H.

    The chart is oriented so that the orientation of d projected points
    equals orient(y_1, ..., y_d, p) for the projection centre p.
    """
    d = seq.dim
    if d < 2:
        raise ValueError("central projection needs d >= 2")
    if len(seq) < d + 1:
        raise ValueError(f"need at least {d + 1} points")
    if endpoint == "first":
        p, rest = seq.points[0], list(seq.points[1:])
    elif endpoint == "last":
        p, rest = seq.points[-1], list(seq.points[:-1])
    else:
        raise ValueError("endpoint must be 'first' or 'last'")
    if _inside_hull(p, rest):
        raise PreconditionError("projection centre lies inside the hull of the other points")
    normal = _separating_normal(p, rest)
    heights = [_dot(normal, [x[i] - p[i] for i in range(d)]) for x in rest]
    offset = min(heights) / 2
    projected = []
    for x, h in zip(rest, heights):
        t = offset / h
        projected.append(tuple(p[i] + t * (x[i] - p[i]) for i in range(d)))
    drop = max(range(d), key=lambda i: (abs(normal[i]), -i))
    chart = [tuple(y[i] for i in range(d) if i != drop) for y in projected]

    flip = None
    for combo in combinations(range(len(projected)), d):
        s_chart = orientation([chart[i] for i in combo])
        if s_chart != Sign.ZERO:
            flip = s_chart != orientation([projected[i] for i in combo] + [p])
            break
    if flip:
        chart = [(-c[0],) + c[1:] for c in chart]
    return PointSequence(tuple(chart))
