"""Stair-convexity: stair-paths, stair-hull membership and stair-Tverberg
partitions.

The last coordinate is the height.  Projection drops the last coordinate.
Stair-paths are called ``StairPath`` here; type encodings live in
``type_algebra``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .convex import PreconditionError
from .kernel import Point, make_point
from .type_algebra import t_param

Partition = tuple[frozenset[int], ...]


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class StairPath:
    vertices: tuple[Point, ...]

    @property
    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def contains(self, x: Sequence) -> bool:
        x = make_point(x)
        if len(self.vertices) == 1:
            return x == self.vertices[0]
        return any(_on_axis_segment(x, a, b) for a, b in self.segments)


def _on_axis_segment(x: Point, a: Point, b: Point) -> bool:
    for xi, ai, bi in zip(x, a, b):
        lo, hi = min(ai, bi), max(ai, bi)
        if not lo <= xi <= hi:
            return False
    return True


def _path(a: Point, b: Point, k: int) -> list[Point]:
    # coordinates k..d-1 of a and b already agree
    if k <= 1:
        return [a, b]
    i = k - 1
    if a[i] > b[i]:
        return _path(b, a, k)[::-1]
    a2 = a[:i] + (b[i],) + a[i + 1:]
    return [a] + _path(a2, b, i)


def stair_path(a: Sequence, b: Sequence) -> StairPath:
    """The stair-path from a to b (vertices listed from a), with repeated
    vertices collapsed."""
    a, b = make_point(a), make_point(b)
    if len(a) != len(b):
        raise ValueError("endpoints must share a dimension")
    verts: list[Point] = []
    for v in _path(a, b, len(a)):
        if not verts or verts[-1] != v:
            verts.append(v)
    return StairPath(tuple(verts))


def point_type(b: Sequence, a: Sequence) -> set[int]:
    """The set of j in {0..d} such that b has type j with respect to a."""
    d = len(a)
    out = set()
    if all(bi <= ai for ai, bi in zip(a, b)):
        out.add(0)
    # suffix_ok[j] is True iff b_i <= a_i for every i > j (1-based)
    suffix_ok = True
    for j in range(d, 0, -1):
        if suffix_ok and b[j - 1] >= a[j - 1]:
            out.add(j)
        suffix_ok = suffix_ok and b[j - 1] <= a[j - 1]
    return out


def _type_mask(b: Sequence, a: Sequence) -> int:
    mask = 0
    for j in point_type(b, a):
        mask |= 1 << j
    return mask


def in_stair_hull(x: Sequence, points: Iterable[Sequence]) -> bool:
    """Stair-Caratheodory test: some point of each type 0..d w.r.t. x."""
    x = make_point(x)
    full = (1 << (len(x) + 1)) - 1
    mask = 0
    for s in points:
        mask |= _type_mask(s, x)
        if mask == full:
            return True
    return False


def in_stair_hull_by_slices(x: Sequence, points: Iterable[Sequence]) -> bool:
    """Membership via the horizontal-slice recursion: the slice at height y
    is the (d-1)-dimensional hull of the points not above y, and is empty
    when every point lies strictly below y."""
    x = make_point(x)
    pts = [make_point(p) for p in points]
    if not pts:
        return False
    d = len(x)
    if d == 1:
        return min(p[0] for p in pts) <= x[0] <= max(p[0] for p in pts)
    y = x[-1]
    if not any(p[-1] >= y for p in pts):
        return False
    below = [p[:-1] for p in pts if p[-1] <= y]
    return in_stair_hull_by_slices(x[:-1], below)


def is_stair_general(points: Iterable[Sequence]) -> bool:
    pts = [make_point(p) for p in points]
    if not pts:
        return True
    return all(len({p[i] for p in pts}) == len(pts) for i in range(len(pts[0])))


def _candidates(points: Sequence[Point]) -> list[Point]:
    d = len(points[0])
    axes = [sorted({p[i] for p in points}) for i in range(d)]
    return [tuple(c) for c in product(*axes)]


def stair_hull_intersection_point(parts: Sequence[Iterable[Sequence]]) -> Point | None:
    """Brute force over the coordinate grid of the input points: the unique
    grid point lying in every part's stair-hull, or None."""
    parts = [[make_point(p) for p in part] for part in parts]
    allpts = [p for part in parts for p in part]
    hits = [c for c in _candidates(allpts)
            if all(in_stair_hull(c, part) for part in parts)]
    if len(hits) > 1:
        raise InvariantViolation(f"{len(hits)} common points found; input is degenerate")
    return hits[0] if hits else None


@dataclass(frozen=True)
class StairTverbergResult:
    partitions: tuple[Partition, ...]
    common_point: Point | None


def _canonical_partition(parts: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted((frozenset(p) for p in parts), key=min))


def set_partitions(n: int, r: int):
    """All partitions of labels 1..n into r nonempty blocks, blocks sorted by
    minimum, in lexicographic order of their restricted growth strings."""
    blocks: list[list[int]] = []

    def rec(i: int):
        if i > n:
            if len(blocks) == r:
                yield tuple(frozenset(b) for b in blocks)
            return
        if r - len(blocks) > n - i + 1:
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        if len(blocks) < r:
            blocks.append([i])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(1)


class StairOracle:
    """Brute-force stair-Tverberg test for all partitions of one point set.

    The type of every input point with respect to every grid candidate is
    tabulated once, so a partition check is a handful of bitwise ORs.
    """

    def __init__(self, points: Sequence[Sequence]):
        self.points = [make_point(p) for p in points]
        self.d = len(self.points[0])
        self.candidates = _candidates(self.points)
        self.full = (1 << (self.d + 1)) - 1
        self.masks = np.array([[_type_mask(p, c) for p in self.points] for c in self.candidates],
                              dtype=np.int64).reshape(len(self.candidates), len(self.points))

    def common_points(self, parts: Partition) -> list[Point]:
        ok = np.ones(len(self.candidates), dtype=bool)
        for part in parts:
            cols = [i - 1 for i in part]
            ok &= np.bitwise_or.reduce(self.masks[:, cols], axis=1) == self.full
        return [self.candidates[k] for k in np.flatnonzero(ok)]

    def common_point(self, parts: Partition) -> Point | None:
        hits = self.common_points(parts)
        if len(hits) > 1:
            raise InvariantViolation(f"{len(hits)} common points for partition {parts}")
        return hits[0] if hits else None


def _require_general(points: Sequence[Point], r: int) -> None:
    d = len(points[0])
    if len(points) != t_param(d, r):
        raise PreconditionError(f"need T({d},{r}) = {t_param(d, r)} points, got {len(points)}")
    if not is_stair_general(points):
        raise PreconditionError("points are not in stair-general position")


def enumerate_stair_tverberg_bruteforce(points: Sequence[Sequence], r: int) -> StairTverbergResult:
    pts = [make_point(p) for p in points]
    _require_general(pts, r)
    oracle = StairOracle(pts)
    found, common = [], set()
    for parts in set_partitions(len(pts), r):
        x = oracle.common_point(parts)
        if x is not None:
            found.append(_canonical_partition(parts))
            common.add(x)
    if len(common) > 1:
        raise InvariantViolation("stair-Tverberg partitions with different common points")
    return StairTverbergResult(tuple(sorted(found, key=_partition_key)), next(iter(common), None))


def _partition_key(parts: Partition):
    return tuple(tuple(sorted(p)) for p in parts)


def _recursive(labels: list[int], pts: dict[int, Point], d: int, r: int) -> tuple[list[list[set[int]]], Point]:
    if d == 0:
        return [[{i} for i in labels]], ()
    order = sorted(labels, key=lambda i: pts[i][d - 1], reverse=True)
    top, rest = order[:r - 1], order[r - 1:]
    p_r = rest[0]
    sub, y = _recursive(rest, pts, d - 1, r)
    out = []
    for parts in sub:
        host = next(k for k, part in enumerate(parts) if p_r in part)
        others = [k for k in range(r) if k != host]
        for perm in permutations(top):
            new = [set(part) for part in parts]
            for k, label in zip(others, perm):
                new[k].add(label)
            out.append(new)
    return out, y + (pts[p_r][d - 1],)


def enumerate_stair_tverberg_recursive(points: Sequence[Sequence], r: int) -> StairTverbergResult:
    """Peel the r-1 highest points, recurse on the projection of the rest,
    then hand the peeled points to the parts not containing the r-th highest
    point in every possible way."""
    pts = [make_point(p) for p in points]
    _require_general(pts, r)
    table = {i + 1: p for i, p in enumerate(pts)}
    parts, x = _recursive(list(table), table, len(pts[0]), r)
    found = sorted((_canonical_partition(p) for p in parts), key=_partition_key)
    return StairTverbergResult(tuple(found), x)


def enumerate_stair_tverberg(points: Sequence[Sequence], r: int, method: str = "recursive") -> StairTverbergResult:
    if method == "recursive":
        return enumerate_stair_tverberg_recursive(points, r)
    if method == "bruteforce":
        return enumerate_stair_tverberg_bruteforce(points, r)
    if method == "both":
        a = enumerate_stair_tverberg_recursive(points, r)
        b = enumerate_stair_tverberg_bruteforce(points, r)
        if a != b:
            raise InvariantViolation("recursive and brute-force enumerations disagree")
        return a
    raise ValueError(f"unknown method {method!r}")


def stair_count(d: int, r: int) -> int:
    return factorial(r - 1) ** d


def stair_kirchberger_reduce(parts: Sequence[Iterable[Sequence]], x: Sequence) -> tuple[list[list[Point]], Point]:
    """Shrink parts whose stair-hulls all contain x to subsets of total size
    T(d, r) whose stair-hulls still share a point.  Returns the subsets and
    a common point of their hulls."""
    parts = [[make_point(p) for p in part] for part in parts]
    x = make_point(x)
    d, r = len(x), len(parts)
    allpts = [p for part in parts for p in part]
    if not is_stair_general(allpts):
        raise PreconditionError("points are not in stair-general position")
    if not all(in_stair_hull(x, part) for part in parts):
        raise PreconditionError("x is not in every part's stair-hull")
    if len(allpts) == t_param(d, r):
        return [list(p) for p in parts], x
    return _reduce(parts, x, d, r)


def _reduce(parts: list[list[Point]], x: Point, d: int, r: int) -> tuple[list[list[Point]], Point]:
    if d == 1:
        y = min(max(p[0] for p in part) for part in parts)
        owner = next(k for k, part in enumerate(parts) if any(p[0] == y for p in part))
        out = []
        for k, part in enumerate(parts):
            if k == owner:
                out.append([p for p in part if p[0] == y])
            else:
                lo = min(part, key=lambda p: p[0])
                hi = max(part, key=lambda p: p[0])
                out.append([lo] if lo == hi else [lo, hi])
        return out, (y,)
    h = x[-1]
    lower = [[p for p in part if p[-1] <= h] for part in parts]
    # remember which full point each projected point came from
    lifted = [{p[:-1]: p for p in part} for part in lower]
    sub, y = _reduce([[p[:-1] for p in part] for part in lower], x[:-1], d - 1, r)
    sub_full = [[lifted[k][q] for q in part] for k, part in enumerate(sub)]
    q_owner, q = max(((k, p) for k, part in enumerate(sub_full) for p in part), key=lambda kp: kp[1][-1])
    out = []
    for k, part in enumerate(sub_full):
        if k == q_owner:
            out.append(part)
        else:
            highest = max(parts[k], key=lambda p: p[-1])
            out.append(part if highest in part else part + [highest])
    return out, y + (q[-1],)
