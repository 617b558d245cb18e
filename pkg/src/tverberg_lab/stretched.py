"""The stretched grid, the stretched diagonal, and experiments comparing
Euclidean and stair-convex Tverberg structure on far-apart grid points.

Grid coordinates are exact integers K_i ** a_i.  Logarithms (the map to the
unit cube and stretched distances between non-grid points) are evaluated
with interval arithmetic and are used for diagnostics only.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from mpmath import iv, mpf

from .convex import PointSequence, PreconditionError, enumerate_tverberg_partitions, verify_tverberg
from .kernel import make_point
from .stair import StairOracle, set_partitions, stair_path
from .type_algebra import TverbergType, colorful_count, enumerate_colorful, t_param

LOG_TOLERANCE = 1e-6
iv.prec = 96


@dataclass(frozen=True)
class StretchedGridSpec:
    d: int
    m: int
    K: tuple[int, ...]

    def coordinate(self, i: int, exponent: int) -> int:
        return self.K[i] ** exponent

    def box(self) -> list[tuple[int, int]]:
        return [(1, k ** (self.m - 1)) for k in self.K]

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "K": [str(k) for k in self.K]}


def stretched_grid(d: int, m: int) -> StretchedGridSpec:
    """K_1 = 2 and K_i = 2 d^2 K_{i-1}^m, the smallest admissible constants."""
    if d < 1 or m < 2:
        raise ValueError("need d >= 1 and m >= 2")
    K = [2]
    for _ in range(1, d):
        K.append(2 * d * d * K[-1] ** m)
    return StretchedGridSpec(d, m, tuple(K))


@dataclass(frozen=True)
class GridPoint:
    exponents: tuple[int, ...]
    spec: StretchedGridSpec

    def __post_init__(self):
        if len(self.exponents) != self.spec.d:
            raise ValueError("exponent vector has the wrong length")
        if any(not 0 <= a < self.spec.m for a in self.exponents):
            raise ValueError(f"exponents must lie in 0..{self.spec.m - 1}")

    @cached_property
    def coordinates(self) -> tuple[int, ...]:
        return tuple(self.spec.coordinate(i, a) for i, a in enumerate(self.exponents))


def diagonal_spacing(d: int) -> int:
    return 2 * d + 3


def diagonal_spec(d: int, count: int) -> StretchedGridSpec:
    return stretched_grid(d, max(2, diagonal_spacing(d) * (count - 1) + 1))


def diagonal_grid_points(d: int, count: int) -> list[GridPoint]:
    spec = diagonal_spec(d, count)
    g = diagonal_spacing(d)
    return [GridPoint((g * j,) * d, spec) for j in range(count)]


def stretched_diagonal(d: int, count: int) -> PointSequence:
    """The first ``count`` points of the stretched diagonal, in order."""
    return PointSequence(tuple(p.coordinates for p in diagonal_grid_points(d, count)))


def _log_k(value, k: int):
    v = make_point([value])[0]
    if v <= 0:
        raise ValueError("stretched distance needs positive coordinates")
    return (iv.log(iv.mpf(v.numerator)) - iv.log(iv.mpf(v.denominator))) / iv.log(iv.mpf(k))


def _certified(interval) -> mpf:
    if interval.delta > LOG_TOLERANCE:
        raise ArithmeticError("logarithm not certified to the required precision")
    return interval.mid


def stretched_distance(p, q, i: int, spec: StretchedGridSpec | None = None):
    """Stretched distance in direction i (1-based).

    Exact (an integer Fraction) for two grid points; otherwise the midpoint
    of an interval of width below 1e-6.
    """
    if isinstance(p, GridPoint) and isinstance(q, GridPoint):
        return Fraction(abs(p.exponents[i - 1] - q.exponents[i - 1]))
    if spec is None:
        spec = p.spec if isinstance(p, GridPoint) else q.spec
    pc = p.coordinates if isinstance(p, GridPoint) else p
    qc = q.coordinates if isinstance(q, GridPoint) else q
    k = spec.K[i - 1]
    return abs(_certified(_log_k(pc[i - 1], k) - _log_k(qc[i - 1], k)))


def pairwise_far(points: Sequence[GridPoint], c: int) -> bool:
    return all(abs(a - b) >= c
               for p, q in combinations(points, 2)
               for a, b in zip(p.exponents, q.exponents))


def pi_map(x, spec: StretchedGridSpec) -> tuple:
    """Coordinatewise log_{K_i}(x_i) / (m-1), mapping the bounding box onto
    the unit cube."""
    if isinstance(x, GridPoint):
        return tuple(mpf(a) / (spec.m - 1) for a in x.exponents)
    x = make_point(x)
    for xi, (lo, hi) in zip(x, spec.box()):
        if not lo <= xi <= hi:
            raise ValueError("point lies outside the stretched-grid bounding box")
    return tuple(_certified(_log_k(xi, k)) / (spec.m - 1) for xi, k in zip(x, spec.K))


def random_far_points(d: int, r: int, rng: random.Random, m: int | None = None) -> list[GridPoint]:
    """T(d, r) grid points, pairwise (2d+3)-far apart, with independent
    uniformly random coordinate orders.

    Per coordinate, a uniform T-subset of 0..m-1 with all gaps >= g is drawn
    by sampling from a shortened range and spreading the sorted values.
    """
    n = t_param(d, r)
    g = diagonal_spacing(d)
    least = g * (n - 1) + 1
    m = 2 * least if m is None else m
    if m < least:
        raise ValueError(f"m = {m} is too small for {n} points {g}-far apart")
    spec = stretched_grid(d, m)
    columns = []
    for _ in range(d):
        base = sorted(rng.sample(range(m - (g - 1) * (n - 1)), n))
        col = [b + k * (g - 1) for k, b in enumerate(base)]
        rng.shuffle(col)
        columns.append(col)
    return [GridPoint(tuple(col[k] for col in columns), spec) for k in range(n)]


def check_transference(points: Sequence[GridPoint], r: int) -> dict:
    """Compare the Euclidean verdict (exact coordinates) with the stair
    verdict (exponent vectors) on every r-partition of the points."""
    d = points[0].spec.d
    n = len(points)
    if n != t_param(d, r):
        raise PreconditionError(f"need T({d},{r}) = {t_param(d, r)} points")
    if not pairwise_far(points, diagonal_spacing(d)):
        raise PreconditionError(f"points are not pairwise {diagonal_spacing(d)}-far apart")
    seq = PointSequence(tuple(p.coordinates for p in points))
    oracle = StairOracle([p.exponents for p in points])
    checked = 0
    euclid, stair, disagreements = [], [], []
    for parts in set_partitions(n, r):
        checked += 1
        tv = TverbergType(d, r, parts)
        e = verify_tverberg(seq, tv) is not None
        s = oracle.common_point(parts) is not None
        enc = tv.encoding()
        if e:
            euclid.append(enc)
        if s:
            stair.append(enc)
        if e != s:
            disagreements.append({"type": enc, "euclidean": e, "stair": s})
    return {
        "d": d,
        "r": r,
        "exponents": [list(p.exponents) for p in points],
        "partitions_checked": checked,
        "euclidean_positive": euclid,
        "stair_positive": stair,
        "disagreements": disagreements,
        "expected_count": colorful_count(d, r),
    }


def sierksma_experiment(d: int, r: int, trials: int, seed: int, m: int | None = None, workers: int = 1) -> dict:
    """Count Euclidean Tverberg partitions of random far-apart grid subsets."""
    rng = random.Random(seed)
    counts = []
    for _ in range(trials):
        pts = random_far_points(d, r, rng, m)
        seq = PointSequence(tuple(p.coordinates for p in pts))
        counts.append(len(enumerate_tverberg_partitions(seq, r, workers=workers)))
    dist = Counter(counts)
    return {
        "d": d,
        "r": r,
        "trials": trials,
        "seed": seed,
        "distribution": {str(k): v for k, v in sorted(dist.items())},
        "expected": colorful_count(d, r),
        "constant": set(dist) == {colorful_count(d, r)},
    }


def diagonal_type_census(d: int, r: int, workers: int = 1) -> list[str]:
    """Canonical encodings of the Tverberg partitions of the first T(d, r)
    points of the stretched diagonal."""
    seq = stretched_diagonal(d, t_param(d, r))
    return sorted(c.type.encoding() for c in enumerate_tverberg_partitions(seq, r, workers=workers))


def diagonal_census_report(d: int, r: int, workers: int = 1) -> dict:
    census = diagonal_type_census(d, r, workers)
    colorful = enumerate_colorful(d, r)
    return {"d": d, "r": r, "types": census, "colorful": colorful, "equal": census == colorful}


def _axis_segment_distance(x: Sequence, u: Sequence, v: Sequence):
    worst = mpf(0)
    for xi, ui, vi in zip(x, u, v):
        lo, hi = min(ui, vi), max(ui, vi)
        gap = lo - xi if xi < lo else (xi - hi if xi > hi else mpf(0))
        worst = max(worst, gap)
    return worst


def closeness_probe(a: GridPoint, b: GridPoint, samples: int = 1000) -> mpf:
    """Largest stretched sup-distance from sampled points of segment ab to the
    stair-path between a and b (all measured after the log map)."""
    spec = a.spec
    path = stair_path(a.coordinates, b.coordinates)
    images = [pi_map(v, spec) for v in path.vertices]
    pieces = list(zip(images, images[1:])) or [(images[0], images[0])]
    worst = mpf(0)
    ac, bc = make_point(a.coordinates), make_point(b.coordinates)
    for k in range(samples + 1):
        t = Fraction(k, samples)
        x = tuple(p + t * (q - p) for p, q in zip(ac, bc))
        img = pi_map(x, spec)
        dist = min(_axis_segment_distance(img, u, v) for u, v in pieces)
        worst = max(worst, dist * (spec.m - 1))
    return worst
