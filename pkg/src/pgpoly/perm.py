"""Permutations of {0, ..., q-1} stored as dense image tables.

Products are read right to left: ``(f * g)(x) == f(g(x))``, so ``compose(f, g)``
applies ``g`` first.
"""
from __future__ import annotations

import math
import re
from functools import reduce

import numpy as np

from .errors import DegreeMismatch, IndexOutOfRange, InvalidParams, OverlappingCycles


class Permutation:
    """Immutable bijection of ``range(q)``; ``images[x]`` is the image of ``x``."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images, check=True):
        self._images = tuple(int(v) for v in images)
        self._hash = None
        if check and sorted(self._images) != list(range(len(self._images))):
            raise InvalidParams(f"{list(self._images)} is not a permutation of 0..{len(self._images) - 1}")

    @classmethod
    def identity(cls, q: int) -> "Permutation":
        return cls(range(q), check=False)

    @property
    def images(self) -> tuple:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __len__(self):
        return len(self._images)

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._images)
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"

    def as_array(self) -> np.ndarray:
        return np.asarray(self._images, dtype=np.int64)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for x, y in enumerate(self._images):
            inv[y] = x
        return Permutation(inv, check=False)

    def cycles(self, include_fixed=False) -> list[tuple]:
        """Disjoint cycles, each starting at its least element, sorted by that element."""
        seen = [False] * len(self._images)
        out = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self._images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self._images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type(), 1)

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _check_degree(f: Permutation, g: Permutation) -> None:
    if f.degree != g.degree:
        raise DegreeMismatch(f"degrees {f.degree} and {g.degree} differ")


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``f o g``, i.e. x -> f(g(x))."""
    _check_degree(f, g)
    fi = f.images
    return Permutation([fi[y] for y in g.images], check=False)


def inverse(f: Permutation) -> Permutation:
    return f.inverse()


def power(f: Permutation, k: int) -> Permutation:
    """``f`` applied ``k`` times; negative ``k`` uses the inverse.

    Each cycle is rotated by ``k`` modulo its length, which is the same as
    reducing ``k`` modulo ``order(f)``.
    """
    out = list(range(f.degree))
    for cyc in f.cycles():
        m = len(cyc)
        for pos, x in enumerate(cyc):
            out[x] = cyc[(pos + k) % m]
    return Permutation(out, check=False)


def conjugate(s: Permutation, f: Permutation) -> Permutation:
    """``s o f o s^-1``."""
    _check_degree(s, f)
    out = [0] * f.degree
    si = s.images
    for x, y in enumerate(f.images):
        out[si[x]] = si[y]
    return Permutation(out, check=False)


def fixed_points(f: Permutation) -> set:
    return {x for x, y in enumerate(f.images) if x == y}


def order(f: Permutation) -> int:
    return f.order()


def from_cycles(q: int, cycles) -> Permutation:
    """Product of the given pairwise disjoint cycles; unmentioned points stay fixed."""
    images = list(range(q))
    used = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 0 <= x < q:
                raise IndexOutOfRange(f"cycle entry {x} outside 0..{q - 1}")
            if x in used:
                raise OverlappingCycles(f"point {x} appears in more than one cycle")
            used.add(x)
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return Permutation(images, check=False)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(q: int, text: str) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(0 1)(2 3)"``."""
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise InvalidParams(f"unparsable cycle notation: {text!r}")
    cycles = [[int(tok) for tok in body.replace(",", " ").split()] for body in _CYCLE_RE.findall(text)]
    return from_cycles(q, [c for c in cycles if c])
