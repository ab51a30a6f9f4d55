"""Text, CSV and JSON encodings of Latin squares and square pairs."""
from __future__ import annotations

import csv
import io
import json

from .errors import SizeMismatch
from .lpp import LatinSquare, are_orthogonal

FORMATS = ("text", "csv", "json")


def square_text(s: LatinSquare) -> str:
    return "".join(" ".join(map(str, row)) + "\n" for row in s.rows())


def square_csv(s: LatinSquare) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(s.rows())
    return buf.getvalue()


def square_json(s: LatinSquare) -> str:
    return json.dumps(s.to_json()) + "\n"


def pair_json(s1: LatinSquare, s2: LatinSquare, **extra) -> dict:
    obj = {"q": s1.q, "squares": [s1.rows(), s2.rows()], "orthogonal": are_orthogonal(s1, s2)}
    obj.update(extra)
    return obj


def dump_square(s: LatinSquare, fmt: str) -> str:
    if fmt == "text":
        return square_text(s)
    if fmt == "csv":
        return square_csv(s)
    if fmt == "json":
        return square_json(s)
    raise ValueError(f"unknown format {fmt!r}")


def parse_grid(text: str) -> list:
    """Read one or two grids from any of the three formats.

    Returns a list of integer grids.  A pair JSON object yields both of its
    squares; every other input yields exactly one grid.  No Latin check is
    made here.
    """
    body = text.strip()
    if not body:
        raise ValueError("empty square file")
    if body.startswith("{"):
        obj = json.loads(body)
        if "squares" in obj:
            grids = obj["squares"]
        else:
            grids = [obj["cells"]]
        if "q" in obj and any(len(g) != int(obj["q"]) for g in grids):
            raise SizeMismatch(f"declared q={obj['q']} does not match the grid")
        return [[[int(v) for v in row] for row in g] for g in grids]
    if body.startswith("["):
        return [[[int(v) for v in row] for row in json.loads(body)]]
    if "," in body:
        rows = [r for r in csv.reader(io.StringIO(body)) if r]
        return [[[int(v) for v in r] for r in rows]]
    return [[[int(v) for v in line.split()] for line in body.splitlines() if line.strip()]]
