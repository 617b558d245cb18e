"""Reading and writing point sequences.

CSV: one point per row, coordinates as exact rationals ("3", "-7/2").
Lines starting with '#' are comments.  JSON: a list of points, or an object
with a "points" key, with coordinates as strings or integers.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .convex import PointSequence


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty coordinate")
    if "." in text or "e" in text.lower():
        raise ValueError(f"coordinate {text!r} is not an exact rational; write it as p/q")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def points_from_csv(text: str) -> PointSequence:
    rows = [row for row in csv.reader(io.StringIO(text))
            if row and any(c.strip() for c in row) and not row[0].lstrip().startswith("#")]
    if not rows:
        raise ValueError("no points in CSV input")
    return PointSequence(tuple(tuple(parse_rational(c) for c in row) for row in rows))


def points_to_csv(seq: PointSequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for p in seq.points:
        writer.writerow([format_rational(c) for c in p])
    return buf.getvalue()


def points_from_json(text: str) -> PointSequence:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data["points"]
    return PointSequence(tuple(tuple(parse_rational(str(c)) for c in p) for p in data))


def points_to_json(seq: PointSequence) -> str:
    return json.dumps({"points": [[format_rational(c) for c in p] for p in seq.points]})


def load_points(path: str | Path) -> PointSequence:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return points_from_json(text)
    return points_from_csv(text)


def save_points(seq: PointSequence, path: str | Path) -> None:
    path = Path(path)
    path.write_text(points_to_json(seq) if path.suffix.lower() == ".json" else points_to_csv(seq))
