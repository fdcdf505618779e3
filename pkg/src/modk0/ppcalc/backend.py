"""Interface between the calculus and a concrete theory of modules.

A backend owns the pp-set presentation: it intersects, compares, translates
and decomposes pp-sets, assigns colours, and knows the relations of its
colour monoid.  pp-set objects are hashable and canonical, so equality of
presentations is equality of sets.
"""
from __future__ import annotations

import math
from typing import Sequence

from ..algebra import GradedMonoid, IndexRelation, K0Presentation, k0_presentation

INFINITE = math.inf


class PPError(ValueError):
    pass


class CoveredError(PPError):
    """Raised when a pp-set is covered by the sets a point should avoid."""


class IncompatibleFamily(PPError):
    pass


class IndexTooLarge(PPError):
    pass


def vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vneg(x):
    return tuple(-a for a in x)


def parameter_sequence():
    """0, 1, -1, 2, -2, ..."""
    yield 0
    t = 1
    while True:
        yield t
        yield -t
        t += 1


class Backend:
    """Common behaviour; subclasses supply the geometry."""

    name = "abstract"
    is_t_aleph0 = True
    monoid = GradedMonoid()

    def __init__(self):
        self._meet_cache: dict = {}
        self._sub_cache: dict = {}

    # geometry supplied by subclasses
    def _meet(self, p, q): raise NotImplementedError
    def _is_subset(self, p, q): raise NotImplementedError
    def contains_point(self, p, x) -> bool: raise NotImplementedError
    def dim(self, p) -> int: raise NotImplementedError
    def translate(self, p, v): raise NotImplementedError
    def subgroup_part(self, p): raise NotImplementedError
    def basepoint(self, p): raise NotImplementedError
    def index(self, p, q): raise NotImplementedError
    def coset_decompose(self, q, h) -> list: raise NotImplementedError
    def band_key(self, p) -> str: raise NotImplementedError
    def product(self, p, q): raise NotImplementedError
    def pick_point_avoiding(self, p, avoid: Sequence) -> tuple: raise NotImplementedError
    def covers(self, p, sets: Sequence) -> bool: raise NotImplementedError
    def ambient(self, n: int): raise NotImplementedError
    def singleton(self, x): raise NotImplementedError
    def apply_affine(self, p, a, b): raise NotImplementedError
    def parse_point(self, values) -> tuple: raise NotImplementedError
    def render(self, p) -> str: raise NotImplementedError
    def describe(self, p) -> dict: raise NotImplementedError
    def from_descriptor(self, desc: dict): raise NotImplementedError
    def relation_schema(self) -> list[IndexRelation]: return []
    def schema_note(self) -> str: return ""

    def sort_key(self, p):
        return p.sort_key()

    def colour_key(self, p) -> str:
        return self.monoid.key(self.dim(p))

    def cardinality(self, p):
        return 1 if self.dim(p) == 0 else INFINITE

    def meet(self, p, q):
        """Intersection, or None when empty."""
        key = (p, q)
        if key not in self._meet_cache:
            r = self._meet(p, q)
            self._meet_cache[key] = r
            self._meet_cache[(q, p)] = r
        return self._meet_cache[key]

    def is_subset(self, p, q) -> bool:
        if p == q:
            return True
        key = (p, q)
        if key not in self._sub_cache:
            self._sub_cache[key] = self._is_subset(p, q)
        return self._sub_cache[key]

    def is_strict_subset(self, p, q) -> bool:
        return p != q and self.is_subset(p, q)

    def pick_point(self, p) -> tuple:
        return self.pick_point_avoiding(p, [])

    def sample_points(self, p, count: int, avoid: Sequence = ()) -> list[tuple]:
        """Distinct points of p outside the avoid sets."""
        pts = []
        extra = list(avoid)
        for _ in range(count):
            try:
                x = self.pick_point_avoiding(p, extra)
            except CoveredError:
                break
            pts.append(x)
            extra.append(self.singleton(x))
        return pts

    def k0(self) -> K0Presentation:
        return k0_presentation(self.monoid, self.relation_schema(), self.name, self.schema_note())
