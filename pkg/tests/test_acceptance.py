"""One test per acceptance criterion, each under its runtime budget.

Every test records a PASS/FAIL line, printed in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations
from math import factorial


from conftest import ACCEPTANCE_LINES
from tverberg_lab.convex import radon_partition, verify_tverberg
from tverberg_lab.predicates import (
    SIXPT_EQUIVALENTS,
    eval_statement,
    moment_curve_sequence,
    parity_cross_check,
    random_homogeneous_sequence,
    sixpt_eval,
)
from tverberg_lab.stair import StairOracle, enumerate_stair_tverberg
from tverberg_lab.stretched import (
    check_transference,
    diagonal_grid_points,
    diagonal_type_census,
    random_far_points,
)
from tverberg_lab.type_algebra import (
    enumerate_333_intersecting,
    enumerate_colorful,
    from_parts,
    is_colorful,
    plane_side_predicates_3334,
    t_param,
)


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        verdict = "PASS" if ok and within else "FAIL"
        line = f"criterion {number} {verdict}: {title} ({elapsed:.1f}s, limit {limit}s)"
        ACCEPTANCE_LINES[number] = line
        print(line)
    assert within, f"criterion {number} took {elapsed:.1f}s (limit {limit}s)"


def test_criterion_1_appendix_reproduction():
    with criterion(1, "333 census and 3334 predicate strings", 10):
        rep = enumerate_333_intersecting()
        assert rep["counts"] == {"total": 280, "interlacing": 17, "colorful": 4, "consecutive": 6, "residual": 7}
        assert rep["residual_matches_listed_with_mirrors"]
        assert set(rep["listed_residual"]) <= set(rep["residual"])
        preds = plane_side_predicates_3334()
        assert len(preds) == 240
        assert "abcxabcxabcx" in preds


def test_criterion_2_colorful_counts():
    with criterion(2, "colorful counts (r-1)!^d for d<=4, r<=4, T<=16", 30):
        checked = 0
        for d in range(1, 5):
            for r in range(2, 5):
                if t_param(d, r) <= 16:
                    types = enumerate_colorful(d, r)
                    assert len(types) == len(set(types)) == factorial(r - 1) ** d
                    assert all(is_colorful(t) for t in types)
                    checked += 1
        assert checked == 12


STAIR_CASES = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]


def test_criterion_3_stair_structure():
    with criterion(3, "stair-Tverberg structure, 50 instances per (d,r)", 120):
        rng = random.Random(2024)
        for d, r in STAIR_CASES:
            n = t_param(d, r)
            for _ in range(50):
                cols = [rng.sample(range(1, 10 * n), n) for _ in range(d)]
                pts = [tuple(c[k] for c in cols) for k in range(n)]
                rec = enumerate_stair_tverberg(pts, r, method="recursive")
                brute = enumerate_stair_tverberg(pts, r, method="bruteforce")
                assert set(rec.partitions) == set(brute.partitions)
                assert len(rec.partitions) == factorial(r - 1) ** d
                oracle = StairOracle(pts)
                assert {oracle.common_point(p) for p in rec.partitions} == {rec.common_point}
                top = sorted(range(1, n + 1), key=lambda i: pts[i - 1][-1], reverse=True)[:r]
                for parts in rec.partitions:
                    assert all(sum(1 for i in top if i in part) == 1 for part in parts)


TRANSFERENCE_CASES = [(1, 3), (2, 2), (2, 3), (3, 2)]


def test_criterion_4_transference():
    with criterion(4, "transference on diagonal + 20 random far subsets per (d,r)", 300):
        rng = random.Random(4)
        for d, r in TRANSFERENCE_CASES:
            expected = factorial(r - 1) ** d
            instances = [diagonal_grid_points(d, t_param(d, r))]
            instances += [random_far_points(d, r, rng) for _ in range(20)]
            for pts in instances:
                rep = check_transference(pts, r)
                assert rep["disagreements"] == []
                assert len(rep["euclidean_positive"]) == expected


def test_criterion_5_diagonal_census():
    with criterion(5, "diagonal census equals the colorful set", 60):
        assert set(diagonal_type_census(2, 3)) == set(enumerate_colorful(2, 3))
        assert len(diagonal_type_census(2, 3)) == 4
        assert set(diagonal_type_census(3, 2)) == {"12121"}


def test_criterion_6_radon_alternation():
    with criterion(6, "Radon alternation on the moment curve, d<=5", 10):
        for d in range(1, 6):
            n = d + 2
            odd = frozenset(range(1, n + 1, 2))
            even = frozenset(range(2, n + 1, 2))
            for params in (range(1, n + 1), [2 ** k for k in range(n)]):
                seq = moment_curve_sequence(d, n, params)
                assert radon_partition(seq.points).partition == (odd, even)
            # independent check: solve the two-part system for every 2-partition
            hits = []
            for k in range(1, n):
                for a in combinations(range(1, n + 1), k):
                    if 1 not in a:
                        continue
                    b = [i for i in range(1, n + 1) if i not in a]
                    if verify_tverberg(seq, from_parts([a, b], d)) is not None:
                        hits.append(frozenset(a))
            assert hits == [odd]


def test_criterion_7_six_point_suite():
    with criterion(7, "six-point property and its three equivalent forms, 10^4 sequences", 60):
        violations = 0
        disagreements = 0
        for seed in range(10_000):
            seq = random_homogeneous_sequence(2, 7, seed)
            windows = (seq.subsequence(range(1, 7)), seq.subsequence(range(2, 8)))
            values = []
            for w in windows:
                forms = {eval_statement(w, s) for s in SIXPT_EQUIVALENTS}
                disagreements += len(forms) != 1
                values.append(sixpt_eval(w))
            violations += not any(values)
        assert violations == 0
        assert disagreements == 0


def test_criterion_8_parity_coherence():
    with criterion(8, "parity rule vs evaluator, d<=4, n<=9 exhaustive", 60):
        checked = 0
        for d in range(1, 5):
            for n in range(d + 2, 10):
                for seq in (moment_curve_sequence(d, n), random_homogeneous_sequence(d, n, 10 * d + n)):
                    rep = parity_cross_check(seq)
                    assert rep["mismatches"] == []
                    checked += rep["checked"]
        assert checked > 0
        assert eval_statement(moment_curve_sequence(4, 9), "1368(27:459)")
