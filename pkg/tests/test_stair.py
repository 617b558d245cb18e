import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tverberg_lab.convex import PreconditionError
from tverberg_lab.pointio import load_points
from tverberg_lab.stair import (
    StairOracle,
    enumerate_stair_tverberg,
    in_stair_hull,
    in_stair_hull_by_slices,
    is_stair_general,
    point_type,
    set_partitions,
    stair_count,
    stair_hull_intersection_point,
    stair_kirchberger_reduce,
    stair_path,
)
from tverberg_lab.stretched import diagonal_grid_points
from tverberg_lab.type_algebra import t_param

DATA = Path(__file__).parent / "data"


def random_general(rng, d, n):
    cols = [rng.sample(range(1, 4 * n), n) for _ in range(d)]
    return [tuple(c[k] for c in cols) for k in range(n)]


def test_stair_path_examples():
    assert stair_path((0,), (1,)).vertices == ((0,), (1,))
    assert stair_path((0, 0), (1, 1)).vertices == ((0, 0), (0, 1), (1, 1))
    assert stair_path((0, 0, 0), (1, 1, 1)).vertices == ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1))


def test_stair_path_from_higher_endpoint():
    path = stair_path((1, 1), (0, 0))
    assert path.vertices[0] == (1, 1) and path.vertices[-1] == (0, 0)
    assert path.contains((0, 1))


def test_stair_path_collapses():
    assert stair_path((0, 2), (1, 2)).vertices == ((0, 2), (1, 2))
    assert stair_path((3, 3), (3, 3)).vertices == ((3, 3),)


def test_point_type_examples():
    assert point_type((-1, -1), (0, 0)) == {0}
    assert point_type((2, 3, 4), (2, 3, 4)) == {0, 1, 2, 3}
    assert point_type((5, -1), (0, 0)) == {1}


def test_in_stair_hull_examples():
    S = [(0, 3), (2, 0), (3, 2)]
    for s in S:
        assert in_stair_hull(s, S)
    assert in_stair_hull((2,), [(1,), (3,)])
    assert not in_stair_hull((4,), [(1,), (3,)])
    assert in_stair_hull((1, 1), S) == in_stair_hull_by_slices((1, 1), S)


def test_is_stair_general_examples():
    assert not is_stair_general([(1, 2), (1, 3)])
    assert is_stair_general([p.exponents for p in diagonal_grid_points(3, 5)])
    assert is_stair_general(random_general(random.Random(0), 3, 8))


def test_intersection_point_examples():
    assert stair_hull_intersection_point([[(1,), (3,)], [(2,)]]) == (2,)
    pts = [(1, 3), (2, 1), (3, 4), (4, 2)]
    hits = [parts for parts in set_partitions(4, 2)
            if stair_hull_intersection_point([[pts[i - 1] for i in p] for p in parts]) is not None]
    assert len(hits) == 1


@pytest.mark.parametrize("name,r,count", [("stair_1_3.csv", 3, 2), ("stair_2_3.csv", 3, 4),
                                          ("stair_3_2.csv", 2, 1), ("stair_3_3.csv", 3, 8)])
def test_enumeration_fixtures(name, r, count):
    pts = load_points(DATA / name).points
    res = enumerate_stair_tverberg(pts, r, method="both")
    assert len(res.partitions) == count == stair_count(len(pts[0]), r)
    oracle = StairOracle(pts)
    assert all(oracle.common_point(p) == res.common_point for p in res.partitions)


def test_enumeration_rejects_ties():
    with pytest.raises(PreconditionError):
        enumerate_stair_tverberg([(1, 1), (1, 2), (3, 3), (4, 4)], 2)
    with pytest.raises(PreconditionError):
        enumerate_stair_tverberg([(1, 1), (2, 2), (3, 3)], 2)


def test_highest_points_in_distinct_parts():
    rng = random.Random(11)
    for d, r in [(2, 3), (3, 3), (2, 4)]:
        pts = random_general(rng, d, t_param(d, r))
        top = sorted(range(1, len(pts) + 1), key=lambda i: pts[i - 1][-1], reverse=True)[:r]
        for parts in enumerate_stair_tverberg(pts, r).partitions:
            assert len({next(k for k, p in enumerate(parts) if i in p) for i in top}) == r


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(2, 3))
def test_recursive_matches_bruteforce(seed, d, r):
    pts = random_general(random.Random(seed), d, t_param(d, r))
    res = enumerate_stair_tverberg(pts, r, method="both")
    assert len(res.partitions) == stair_count(d, r)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 7))
def test_caratheodory_matches_slices(seed, d, k):
    rng = random.Random(seed)
    S = [tuple(rng.randint(0, 6) for _ in range(d)) for _ in range(k)]
    x = tuple(Fraction(rng.randint(0, 12), 2) for _ in range(d))
    assert in_stair_hull(x, S) == in_stair_hull_by_slices(x, S)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_path_composition(seed, d):
    rng = random.Random(seed)
    a, b = (tuple(rng.randint(0, 9) for _ in range(d)) for _ in range(2))
    path = stair_path(a, b)

    def sample():
        if len(path.vertices) == 1:
            return path.vertices[0]
        u, v = rng.choice(path.segments)
        t = Fraction(rng.randint(0, 8), 8)
        return tuple(p + t * (q - p) for p, q in zip(u, v))

    c, e = sample(), sample()
    sub = stair_path(c, e)
    for u, v in sub.segments or [(sub.vertices[0], sub.vertices[0])]:
        for k in range(5):
            t = Fraction(k, 4)
            assert path.contains(tuple(p + t * (q - p) for p, q in zip(u, v)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_share_coordinates(seed, d):
    rng = random.Random(seed)
    k = rng.randint(1, d + 1)
    S = random_general(rng, d, k)
    x = tuple(rng.choice([s[i] for s in S]) if rng.random() < 0.6 else Fraction(rng.randint(0, 8 * k), 2)
              for i in range(d))
    if in_stair_hull(x, S):
        shared = sum(1 for i in range(d) if x[i] in {s[i] for s in S})
        assert shared >= d + 1 - k


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_axis_parallel_closedness(seed, d):
    rng = random.Random(seed)
    S = random_general(rng, d, rng.randint(2, 6))
    i = rng.randrange(d)
    x = list(Fraction(rng.randint(0, 50), 2) for _ in range(d))
    values = sorted({s[i] for s in S})
    gaps = list(zip(values, values[1:]))
    lo, hi = rng.choice(gaps)
    x[i] = lo + Fraction(1, 3) * (hi - lo)
    y = list(x)
    y[i] = lo + Fraction(2, 3) * (hi - lo)
    member = in_stair_hull(x, S)
    assert in_stair_hull(y, S) == member
    if member:
        for end in (lo, hi):
            z = list(x)
            z[i] = end
            assert in_stair_hull(z, S)


@pytest.mark.parametrize("d,r", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_too_few_points_never_intersect(d, r):
    rng = random.Random(d * 10 + r)
    for _ in range(5):
        pts = random_general(rng, d, t_param(d, r) - 1)
        oracle = StairOracle(pts)
        assert all(not oracle.common_points(p) for p in set_partitions(len(pts), r))


def test_kirchberger_examples():
    parts = [[(1,), (5,)], [(2,), (4,), (6,)]]
    subsets, y = stair_kirchberger_reduce(parts, (3,))
    assert sum(map(len, subsets)) == 3
    assert all(set(s) <= set(p) for s, p in zip(subsets, parts))
    assert stair_hull_intersection_point(subsets) == y
    same = [[(1,), (3,)], [(2,)]]
    assert stair_kirchberger_reduce(same, (2,)) == ([[(1,), (3,)], [(2,)]], (2,))


def test_kirchberger_precondition():
    with pytest.raises(PreconditionError):
        stair_kirchberger_reduce([[(1,), (2,)], [(5,), (6,)]], (3,))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(2, 3), st.integers(1, 3))
def test_kirchberger_against_oracle(seed, d, r, extra):
    rng = random.Random(seed)
    n = t_param(d, r) + extra
    pts = random_general(rng, d, n)
    oracle = StairOracle(pts)
    candidates = [p for p in set_partitions(n, r)]
    rng.shuffle(candidates)
    for parts in candidates[:200]:
        common = oracle.common_points(parts)
        if common:
            break
    else:
        return
    groups = [[pts[i - 1] for i in sorted(p)] for p in parts]
    subsets, y = stair_kirchberger_reduce(groups, common[0])
    assert sum(map(len, subsets)) == t_param(d, r)
    assert all(set(s) <= set(g) for s, g in zip(subsets, groups))
    assert all(in_stair_hull(y, s) for s in subsets)
    assert stair_hull_intersection_point(subsets) is not None
