"""Permutations of {0, ..., n-1} acting on the right.

``p(a)`` is the image of ``a`` under ``p`` and ``p * q`` means "apply p, then q",
so that ``(p * q)(a) == q(p(a))``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence


def compose(p: tuple, q: tuple) -> tuple:
    """Raw-tuple product: apply ``p`` then ``q``."""
    return tuple(map(q.__getitem__, p))


def invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_identity(p: tuple) -> bool:
    return all(i == j for i, j in enumerate(p))


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        obj = cls.__new__(cls)
        obj.images = images
        obj._hash = hash(images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            for c in cycle:
                if not 0 <= c < degree:
                    raise ValueError(f"point {c} out of range for degree {degree}")
                if c in seen:
                    raise ValueError(f"point {c} appears in more than one cycle")
                seen.add(c)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"`` or ``"(0,1)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation._trusted(compose(self.images, other.images))

    def __invert__(self) -> Permutation:
        return Permutation._trusted(invert(self.images))

    inverse = __invert__

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else ~self
        result = Permutation.identity(self.degree)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: Permutation) -> Permutation:
        """``self ** by``, i.e. ``by^-1 * self * by``."""
        return ~by * self * by

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return is_identity(self.images)

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self, singletons: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1 or singletons:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(singletons=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(singletons=True))) if self.degree else 1

    def restrict(self, points: Sequence[int]) -> Permutation:
        """Induced permutation on an invariant list of points, relabelled by position."""
        index = {p: i for i, p in enumerate(points)}
        try:
            return Permutation._trusted(tuple(index[self.images[p]] for p in points))
        except KeyError:
            raise ValueError("point set is not invariant under this permutation") from None

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self.degree}, {self.cycle_string()})"
