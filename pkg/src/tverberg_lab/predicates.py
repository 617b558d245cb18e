"""Hyperplane-separation statements on orientation-homogeneous sequences.

Statement syntax (one line, no spaces)::

    statement := hyperplane "(" side ":" side ")"
    hyperplane := label{d}
    side       := ( label | radon )*        (an empty side may be written "{}")
    radon      := "X[" label+ ";" label+ "]"
    label      := 0-9 | A-Z | "(" digits ")"

Labels 1-9 name points 1-9, A-Z name points 10-35, and "(27)" names point
27.  Label 0 is allowed; when a statement mentions it, the sequence is
labelled from 0 instead of 1.  ``X[14;36]`` is the intersection point of the
hulls of {1,4} and {3,6}.

``H(L:R)`` asserts that the hyperplane through H has every term of L strictly
on one side and every term of R strictly on the other; with one side empty
it asserts that all named terms lie on one common side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence, Union

from .convex import PointSequence, PreconditionError, point_in_simplex, radon_partition, verify_tverberg
from .kernel import GenericityError, Sign, orientation
from .stretched import stretched_diagonal
from .type_algebra import decode, t_param

LABEL_CHARS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class StatementSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class StatementError(ValueError):
    pass


@dataclass(frozen=True)
class RadonTerm:
    first: frozenset[int]
    second: frozenset[int]

    @property
    def labels(self) -> frozenset[int]:
        return self.first | self.second

    def __str__(self) -> str:
        return f"X[{format_labels(sorted(self.first))};{format_labels(sorted(self.second))}]"


Term = Union[int, RadonTerm]


def format_label(label: int) -> str:
    return LABEL_CHARS[label] if label < len(LABEL_CHARS) else f"({label})"


def format_labels(labels: Sequence[int]) -> str:
    return "".join(format_label(x) for x in labels)


def _format_term(t: Term) -> str:
    return format_label(t) if isinstance(t, int) else str(t)


@dataclass(frozen=True)
class SeparationStatement:
    d: int
    hyperplane: tuple[int, ...]
    left: tuple[Term, ...]
    right: tuple[Term, ...]

    def __post_init__(self):
        if len(self.hyperplane) != self.d:
            raise StatementError(f"hyperplane needs {self.d} labels, got {len(self.hyperplane)}")
        if len(set(self.hyperplane)) != self.d:
            raise StatementError("hyperplane labels must be distinct")
        for t in self.terms:
            if isinstance(t, RadonTerm):
                if t.first & t.second:
                    raise StatementError(f"{t} uses a label on both sides")
                if len(t.labels) != self.d + 2:
                    raise StatementError(f"{t} must involve d+2 = {self.d + 2} labels")
            elif t in self.hyperplane:
                raise StatementError(f"point {format_label(t)} lies on the hyperplane")

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.left + self.right

    @property
    def labels(self) -> frozenset[int]:
        out = set(self.hyperplane)
        for t in self.terms:
            out |= t.labels if isinstance(t, RadonTerm) else {t}
        return frozenset(out)

    @property
    def origin(self) -> int:
        return 0 if 0 in self.labels else 1

    @property
    def arity(self) -> int:
        return max(self.labels) - self.origin + 1

    def __str__(self) -> str:
        left = "".join(map(_format_term, self.left))
        right = "".join(map(_format_term, self.right))
        return f"{format_labels(self.hyperplane)}({left}:{right})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise StatementSyntaxError(message, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def label(self) -> int:
        ch = self.peek()
        if ch == "(":
            end = self.text.find(")", self.pos)
            digits = self.text[self.pos + 1:end] if end > 0 else ""
            if not digits.isdigit():
                self.error("expected a parenthesized label such as (27)")
            self.pos = end + 1
            return int(digits)
        if ch and ch in LABEL_CHARS:
            self.pos += 1
            return LABEL_CHARS.index(ch)
        self.error("expected a point label")

    def labels_until(self, stop: str) -> list[int]:
        out = []
        while self.peek() and self.peek() != stop:
            out.append(self.label())
        return out

    def side(self, stop: str) -> list[Term]:
        terms: list[Term] = []
        if self.text.startswith("{}", self.pos):
            self.pos += 2
            return terms
        while self.peek() and self.peek() != stop:
            if self.peek() == "X":
                self.pos += 1
                self.expect("[")
                first = self.labels_until(";")
                self.expect(";")
                second = self.labels_until("]")
                self.expect("]")
                if not first or not second:
                    self.error("a Radon term needs two nonempty label sets")
                terms.append(RadonTerm(frozenset(first), frozenset(second)))
            else:
                terms.append(self.label())
        return terms


def parse_statement(text: str, d: int) -> SeparationStatement:
    p = _Parser(text.strip())
    hyperplane = []
    while p.peek() and len(hyperplane) < d:
        hyperplane.append(p.label())
    if len(hyperplane) != d:
        p.error(f"hyperplane needs {d} labels")
    p.expect("(")
    left = p.side(":")
    p.expect(":")
    right = p.side(")")
    p.expect(")")
    if p.peek():
        p.error("trailing characters")
    return SeparationStatement(d, tuple(hyperplane), tuple(left), tuple(right))


def _term_point(seq: PointSequence, t: Term, origin: int):
    if isinstance(t, int):
        return seq.points[t - origin]
    labels = sorted(t.labels)
    result = radon_partition([seq.points[i - origin] for i in labels])
    sides = {frozenset(labels[i - 1] for i in part) for part in result.partition}
    if sides != {t.first, t.second}:
        raise StatementError(f"the hulls in {t} do not intersect in this sequence")
    return result.radon_point


def term_sides(seq: PointSequence, s: SeparationStatement, origin: int | None = None) -> list[Sign]:
    origin = s.origin if origin is None else origin
    if max(s.labels) - origin >= len(seq) or min(s.labels) < origin:
        raise StatementError(f"statement {s} needs labels {origin}..{max(s.labels)}")
    plane = [seq.points[h - origin] for h in s.hyperplane]
    signs = []
    for t in s.terms:
        sign = orientation(plane + [_term_point(seq, t, origin)])
        if sign == Sign.ZERO:
            raise GenericityError(f"term {_format_term(t)} lies on hyperplane {format_labels(s.hyperplane)}")
        signs.append(sign)
    return signs


def eval_statement(seq: PointSequence, s: SeparationStatement | str, origin: int | None = None) -> bool:
    if isinstance(s, str):
        s = parse_statement(s, seq.dim)
    if s.d != seq.dim:
        raise StatementError(f"statement is for R^{s.d}, sequence lives in R^{seq.dim}")
    if not seq.is_homogeneous:
        raise PreconditionError("statements are only evaluated on orientation-homogeneous sequences")
    signs = term_sides(seq, s, origin)
    left, right = signs[:len(s.left)], signs[len(s.left):]
    if not left or not right:
        return len(set(signs)) <= 1
    return len(set(left)) == 1 and len(set(right)) == 1 and left[0] != right[0]


def parity_prediction(hyperplane: Sequence[int], q: int, q2: int) -> str:
    """'opposite' iff an odd number of hyperplane labels lie strictly between
    q and q2, else 'same'."""
    lo, hi = min(q, q2), max(q, q2)
    between = sum(1 for h in hyperplane if lo < h < hi)
    return "opposite" if between % 2 else "same"


def project_statement(s: SeparationStatement) -> SeparationStatement:
    """The (d-1)-dimensional statement seen after centrally projecting from
    the first point, which must lie on the hyperplane and in every Radon
    term.  Labels are renumbered to the projected sequence."""
    first = s.origin
    if first not in s.hyperplane:
        raise StatementError("the first point must lie on the hyperplane")
    shift = first

    def term(t: Term) -> Term:
        if isinstance(t, int):
            return t - shift
        if first not in t.labels:
            raise StatementError(f"{t} does not involve the first point")
        return RadonTerm(frozenset(x - shift for x in t.first - {first}),
                         frozenset(x - shift for x in t.second - {first}))

    hyperplane = tuple(h - shift for h in s.hyperplane if h != first)
    return SeparationStatement(s.d - 1, hyperplane, tuple(map(term, s.left)), tuple(map(term, s.right)))


# --- sequence generators -------------------------------------------------

def moment_curve_sequence(d: int, n: int, t_values: Sequence | None = None) -> PointSequence:
    ts = [Fraction(t) for t in (t_values if t_values is not None else range(1, n + 1))]
    if len(ts) != n:
        raise ValueError(f"need {n} parameters, got {len(ts)}")
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("curve parameters must be strictly increasing")
    return PointSequence(tuple(tuple(t ** k for k in range(1, d + 1)) for t in ts))


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_key(v):
    # exact angular order: compare by half-plane, then by cross product
    class Key:
        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            a, b = self.v, other.v
            ha, hb = _half(a), _half(b)
            if ha != hb:
                return ha < hb
            return a[0] * b[1] - a[1] * b[0] > 0
    return Key(v)


def _random_convex_polygon(n: int, rng: random.Random, spread: int) -> list[tuple[int, int]]:
    while True:
        vecs = [(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(n - 1)]
        last = (-sum(v[0] for v in vecs), -sum(v[1] for v in vecs))
        vecs.append(last)
        if any(v == (0, 0) for v in vecs):
            continue
        vecs.sort(key=_angle_key)
        parallel = any(a[0] * b[1] - a[1] * b[0] == 0 and _half(a) == _half(b)
                       for a, b in zip(vecs, vecs[1:] + vecs[:1]))
        if parallel:
            continue
        pts, x, y = [], 0, 0
        for vx, vy in vecs:
            pts.append((x, y))
            x, y = x + vx, y + vy
        k = rng.randrange(n)
        return pts[k:] + pts[:k]


def random_homogeneous_sequence(d: int, n: int, seed: int | random.Random | None = None,
                                max_attempts: int = 10000) -> PointSequence:
    """A random orientation-homogeneous generic sequence with positive
    orientation.

    d = 1: increasing integers.  d = 2: a random convex polygon in
    counterclockwise boundary order.  d >= 3: a perturbed moment curve,
    rejected until homogeneous.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if d == 1:
        return PointSequence(tuple((x,) for x in sorted(rng.sample(range(10 * n * n), n))))
    if d == 2:
        return PointSequence(tuple(_random_convex_polygon(n, rng, 6 * n)))
    # halve the perturbation after each rejection; at zero it is a moment curve
    ts = sorted(rng.sample(range(1, 4 * n), n))
    width = [ts[-1] ** k // 8 for k in range(1, d + 1)]
    for _ in range(max_attempts):
        pts = tuple(tuple(t ** k + rng.randint(-w, w) for k, w in zip(range(1, d + 1), width)) for t in ts)
        seq = PointSequence(pts)
        if seq.homogeneous_sign == Sign.POSITIVE:
            return seq
        width = [w // 2 for w in width]
    raise RuntimeError("sampling budget exceeded for a homogeneous sequence")


# --- predicates and scanning ----------------------------------------------

@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int
    fn: Callable[[PointSequence], bool] = field(compare=False)

    def __call__(self, seq: PointSequence) -> bool:
        return self.fn(seq)

    def negate(self) -> "Predicate":
        fn = self.fn
        return Predicate(f"not {self.name}", self.arity, lambda seq: not fn(seq))


def statement_predicate(text: str, d: int) -> Predicate:
    s = parse_statement(text, d)
    return Predicate(f"Pi[{s}]", s.arity, lambda seq: eval_statement(seq, s))


SIXPT = "14(3:X[25;36])"
SIXPT_EQUIVALENTS = ("14(3:X[25;36])", "25(1:X[14;36])", "36(4:X[14;25])")


def sixpt_eval(seq: PointSequence) -> bool:
    if len(seq) != 6 or seq.dim != 2:
        raise ValueError("sixpt takes six planar points")
    return eval_statement(seq, SIXPT)


sixpt = Predicate("sixpt", 6, sixpt_eval)


def tverberg_predicate(encoding: str, d: int) -> Predicate:
    r = len(set(encoding))
    tv = decode(encoding, d, r)
    return Predicate(f"tv[{encoding}]", t_param(d, r), lambda seq: verify_tverberg(seq, tv) is not None)


def _convex_position(seq: PointSequence) -> bool:
    pts = list(seq.points)
    return not any(point_in_simplex(pts[i], pts[:i] + pts[i + 1:]) for i in range(4))


convex_position_4 = Predicate("convex-position-4", 4, _convex_position)


def occurs(seq: PointSequence, pred: Predicate, k: int | None = None) -> tuple[int, ...] | None:
    """First k-subsequence (lexicographic labels) on which pred holds."""
    k = pred.arity if k is None else k
    for combo in combinations(range(1, len(seq) + 1), k):
        try:
            if pred(seq.subsequence(combo)):
                return combo
        except GenericityError as exc:
            raise GenericityError(f"{exc} (subsequence {combo})") from exc
    return None


@dataclass(frozen=True)
class SequenceFamily:
    kind: str
    d: int

    KINDS = ("moment-curve", "perturbed-convex", "stretched-diagonal")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown family {self.kind!r}; choose from {self.KINDS}")

    @property
    def deterministic(self) -> bool:
        return self.kind == "stretched-diagonal"

    def generate(self, n: int, rng: random.Random) -> PointSequence:
        if self.kind == "stretched-diagonal":
            return stretched_diagonal(self.d, n)
        if self.kind == "moment-curve":
            return moment_curve_sequence(self.d, n, sorted(rng.sample(range(1, 8 * n * n), n)))
        return random_homogeneous_sequence(self.d, n, rng)


def sequence_to_strings(seq: PointSequence) -> list[list[str]]:
    return [[str(c) for c in p] for p in seq.points]


def scan_unavoidability(pred: Predicate, family: SequenceFamily, max_n: int, budget: int, seed: int) -> dict:
    """Search the family for sequences that avoid pred.

    Every length from the predicate's arity to ``max_n`` is sampled
    ``budget`` times (once for deterministic families).  An avoiding
    sequence of length ``max_n`` is reported as a counterexample candidate.
    This is a falsifier: finding none proves nothing.
    """
    rng = random.Random(seed)
    per_length = {}
    counterexample = None
    for n in range(pred.arity, max_n + 1):
        samples = 1 if family.deterministic else budget
        avoiding = 0
        for _ in range(samples):
            seq = family.generate(n, rng)
            if occurs(seq, pred) is None:
                avoiding += 1
                if n == max_n and counterexample is None:
                    counterexample = sequence_to_strings(seq)
        per_length[str(n)] = {"samples": samples, "avoiding": avoiding}
    return {
        "predicate": pred.name,
        "family": family.kind,
        "d": family.d,
        "max_n": max_n,
        "budget": budget,
        "seed": seed,
        "per_length": per_length,
        "counterexample": counterexample,
        "verdict": "counterexample-found" if counterexample else "no-counterexample",
    }


def parity_cross_check(seq: PointSequence) -> dict:
    """Compare parity_prediction with eval_statement on every point-only
    statement H(q q':) of the sequence.  Returns counts and mismatches."""
    d, n = seq.dim, len(seq)
    checked, mismatches = 0, []
    for plane in combinations(range(1, n + 1), d):
        rest = [x for x in range(1, n + 1) if x not in plane]
        for q, q2 in combinations(rest, 2):
            s = SeparationStatement(d, plane, (q, q2), ())
            same = eval_statement(seq, s, origin=1)
            predicted = parity_prediction(plane, q, q2) == "same"
            checked += 1
            if same != predicted:
                mismatches.append(str(s))
    return {"d": d, "n": n, "checked": checked, "mismatches": mismatches}
