"""Combinatorics of Tverberg types.

A Tverberg type with parameters (d, r) is a partition of the index set
{1, ..., T(d, r)} into r parts, T(d, r) = (r-1)(d+1) + 1.  Types are stored
as partitions and encoded on demand as strings over the symbols 1..r, where
the character at position i names the part containing index i+1.  The
canonical encoding relabels parts in order of first occurrence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Iterator

SYMBOLS = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class TypeParseError(ValueError):
    pass


def t_param(d: int, r: int) -> int:
    """T(d, r) = (r-1)(d+1) + 1."""
    return (r - 1) * (d + 1) + 1


def canonical(text: str) -> str:
    """Relabel the symbols of ``text`` so first occurrences read 1, 2, 3, ..."""
    mapping: dict[str, str] = {}
    out = []
    for ch in text:
        if ch not in mapping:
            mapping[ch] = SYMBOLS[len(mapping)]
        out.append(mapping[ch])
    return "".join(out)


@dataclass(frozen=True)
class TverbergType:
    d: int
    r: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=min))
        object.__setattr__(self, "parts", parts)
        n = t_param(self.d, self.r)
        if len(parts) != self.r or any(not p for p in parts):
            raise ValueError(f"a type needs exactly {self.r} nonempty parts")
        union = frozenset().union(*parts)
        if sum(map(len, parts)) != n or union != frozenset(range(1, n + 1)):
            raise ValueError(f"parts must partition 1..{n}")

    @property
    def n(self) -> int:
        return t_param(self.d, self.r)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(p) for p in self.parts))

    def encoding(self) -> str:
        return encode(self)

    def __str__(self) -> str:
        return ",".join("{" + ",".join(map(str, sorted(p))) + "}" for p in self.parts)


def encode(tv: TverbergType) -> str:
    labels = [""] * tv.n
    # parts are sorted by minimum, which is exactly first-occurrence order
    for sym, part in zip(SYMBOLS, tv.parts):
        for i in part:
            labels[i - 1] = sym
    return "".join(labels)


def decode(text: str, d: int, r: int) -> TverbergType:
    n = t_param(d, r)
    if len(text) != n:
        raise TypeParseError(f"encoding {text!r} has length {len(text)}, expected {n}")
    allowed = set(SYMBOLS[:r])
    if not set(text) <= allowed:
        bad = sorted(set(text) - allowed)
        raise TypeParseError(f"encoding {text!r} uses symbols outside 1..{r}: {bad}")
    if len(set(text)) != r:
        missing = sorted(allowed - set(text))
        raise TypeParseError(f"encoding {text!r} is missing symbols {missing}")
    groups: dict[str, set[int]] = {}
    for i, ch in enumerate(text, start=1):
        groups.setdefault(ch, set()).add(i)
    return TverbergType(d, r, tuple(frozenset(g) for g in groups.values()))


def from_parts(parts: Iterable[Iterable[int]], d: int) -> TverbergType:
    parts = [frozenset(p) for p in parts]
    return TverbergType(d, len(parts), tuple(parts))


def _as_text(t: TverbergType | str) -> str:
    return encode(t) if isinstance(t, TverbergType) else t


def _infer_dr(text: str) -> tuple[int, int]:
    r = len(set(text))
    blocks, rem = divmod(len(text) - 1, r - 1)
    d = blocks - 1
    if rem or d < 1:
        raise TypeParseError(f"length {len(text)} is not T(d, {r}) for any d >= 1")
    return d, r


def is_colorful(t: TverbergType | str) -> bool:
    """Each of the d+1 blocks of r consecutive indices (overlapping in one
    index) meets every part exactly once."""
    text = _as_text(t)
    d, r = _infer_dr(text)
    return all(len(set(text[k * (r - 1):k * (r - 1) + r])) == r for k in range(d + 1))


def _colorful_strings(d: int, r: int) -> list[str]:
    # Each extension appends a permutation of the symbols other than the last one
    # written, so consecutive blocks share exactly their boundary index.
    level = [SYMBOLS[:r]]
    for _ in range(d):
        nxt = []
        for s in level:
            rest = [c for c in SYMBOLS[:r] if c != s[-1]]
            nxt.extend(s + "".join(p) for p in permutations(rest))
        level = nxt
    return level


def enumerate_colorful(d: int, r: int, sizes: Iterable[int] | None = None) -> list[str]:
    """All colorful types as canonical encodings, sorted.  There are (r-1)!^d.

    ``sizes`` optionally restricts to a multiset of part sizes.
    """
    out = _colorful_strings(d, r)
    if sizes is not None:
        want = sorted(sizes)
        out = [s for s in out if sorted(Counter(s).values()) == want]
    return sorted(out)


def colorful_count(d: int, r: int) -> int:
    return factorial(r - 1) ** d


def enumerate_types(d: int, r: int) -> Iterator[str]:
    """Every type as a canonical encoding (restricted growth strings with
    exactly r symbols), in lexicographic order."""
    n = t_param(d, r)

    def grow(prefix: list[str], used: int) -> Iterator[str]:
        left = n - len(prefix)
        if left == 0:
            if used == r:
                yield "".join(prefix)
            return
        if r - used > left:
            return
        for k in range(min(used + 1, r)):
            prefix.append(SYMBOLS[k])
            yield from grow(prefix, max(used, k + 1))
            prefix.pop()

    yield from grow([], 0)


def zigzag(d: int, r: int) -> TverbergType:
    """The back-and-forth sweep 12..r..21 2..r.. of length T(d, r)."""
    period = 2 * (r - 1)
    chars = []
    for k in range(t_param(d, r)):
        phase = k % period
        chars.append(SYMBOLS[phase if phase <= r - 1 else period - phase])
    return decode("".join(chars), d, r)


def has_consecutive_pair(t: TverbergType | str) -> bool:
    text = _as_text(t)
    return any(a == b for a, b in zip(text, text[1:]))


def mirror(t: TverbergType | str):
    """Reverse the index order and recanonicalize.  Returns the same kind
    (type or string) as given."""
    if isinstance(t, TverbergType):
        return decode(canonical(encode(t)[::-1]), t.d, t.r)
    return canonical(t[::-1])


def contains_subsequence(text: str, pattern: str) -> bool:
    it = iter(text)
    return all(ch in it for ch in pattern)


def interlaces(t: TverbergType | str, a: str, b: str) -> bool:
    """True iff the encoding contains ababa or babab as a subsequence."""
    a, b = str(a), str(b)
    if a == b:
        raise ValueError("interlaces needs two distinct symbols")
    text = _as_text(t)
    return contains_subsequence(text, a + b + a + b + a) or contains_subsequence(text, b + a + b + a + b)


def parts_string(text: str) -> str:
    groups: dict[str, list[int]] = {}
    for i, ch in enumerate(text, start=1):
        groups.setdefault(ch, []).append(i)
    return ",".join("{" + ",".join(map(str, g)) + "}" for g in groups.values())


# The four (3,3,3) types that are printed as unresolved; the rest of the
# unresolved list is their mirror images.
LISTED_RESIDUAL_333 = ("123132132", "123132312", "123123231", "123132321")


def enumerate_333_intersecting() -> dict:
    """Census of the partitions of [9] into three triples whose triangles
    pairwise intersect (in an orientation-homogeneous sequence in R^3)."""
    all333 = sorted({canonical("".join(p)) for p in permutations("111222333")})
    inter = [s for s in all333
             if all(interlaces(s, a, b) for a, b in combinations("123", 2))]
    colorful = [s for s in inter if is_colorful(s)]
    consecutive = [s for s in inter if s not in colorful and has_consecutive_pair(s)]
    residual = [s for s in inter if s not in colorful and s not in consecutive]
    expected = sorted(set(LISTED_RESIDUAL_333) | {mirror(s) for s in LISTED_RESIDUAL_333})
    return {
        "counts": {
            "total": len(all333),
            "interlacing": len(inter),
            "colorful": len(colorful),
            "consecutive": len(consecutive),
            "residual": len(residual),
        },
        "interlacing": inter,
        "colorful": colorful,
        "consecutive": consecutive,
        "residual": residual,
        "residual_parts": [parts_string(s) for s in residual],
        "listed_residual": list(LISTED_RESIDUAL_333),
        "residual_matches_listed_with_mirrors": residual == expected,
    }


def _predicate_strings(colorful_type: str) -> list[str]:
    counts = Counter(colorful_type)
    x = next(sym for sym, c in counts.items() if c == 4)
    out = []
    for pos, ch in enumerate(colorful_type):
        if ch != x:
            continue
        rest = colorful_type[:pos] + colorful_type[pos + 1:]
        mapping = {x: "x"}
        for sym in rest:
            if sym not in mapping:
                mapping[sym] = "abc"[len(mapping) - 1]
        out.append("".join(mapping[c] for c in rest))
    return out


def plane_side_predicates_3334() -> list[str]:
    """Canonical plane-side predicate strings arising from the colorful
    (d, r) = (3, 4) types with part sizes 3, 3, 3, 4.

    For each type and each index of its 4-element part, that index is
    deleted; the rest of the 4-part becomes the plane ``x`` and the three
    triangles are named a, b, c by first occurrence.
    """
    found: set[str] = set()
    for s in enumerate_colorful(3, 4, sizes=(3, 3, 3, 4)):
        found.update(_predicate_strings(s))
    return sorted(found)
