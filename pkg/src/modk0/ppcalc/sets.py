"""Antichains, nests, cells and definable sets built from pp-sets.

A definable set is stored as a finite disjoint union of blocks, a block being
a pp-set minus finitely many pp-subsets.  Boolean operations go through the
nest (meet closure) of every pp-set involved: the cores of its elements
partition the union, and each core lies entirely inside or outside of every
operand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .backend import Backend, PPError


def _check_ambient(sets) -> int | None:
    ns = {p.n for p in sets}
    if len(ns) > 1:
        raise PPError(f"pp-sets from different ambient powers {sorted(ns)}")
    return ns.pop() if ns else None


def canonical_antichain(be: Backend, sets: Iterable) -> tuple:
    """Maximal elements, in canonical order."""
    items = sorted(set(sets), key=be.sort_key)
    _check_ambient(items)
    return tuple(p for p in items if not any(be.is_strict_subset(p, q) for q in items))


def antichain_join(be: Backend, a: Iterable, b: Iterable) -> tuple:
    return canonical_antichain(be, list(a) + list(b))


def antichain_meet(be: Backend, a: Iterable, b: Iterable) -> tuple:
    b = list(b)
    return canonical_antichain(be, [m for x in a for y in b if (m := be.meet(x, y)) is not None])


def precedes(be: Backend, beta: Iterable, alpha: Iterable) -> bool:
    """Every element of beta lies strictly inside some element of alpha."""
    alpha = list(alpha)
    return all(any(be.is_strict_subset(b, a) for a in alpha) for b in beta)


def meet_closure(be: Backend, sets: Iterable) -> tuple:
    fam = set(sets)
    _check_ambient(fam)
    frontier = list(fam)
    while frontier:
        new = []
        for a in frontier:
            for b in list(fam):
                m = be.meet(a, b)
                if m is not None and m not in fam:
                    fam.add(m)
                    new.append(m)
        frontier = new
    return tuple(sorted(fam, key=be.sort_key))


def strict_maximal_below(be: Backend, elements: Sequence, f) -> tuple:
    """Maximal elements of the nest lying strictly inside f."""
    return canonical_antichain(be, [g for g in elements if be.is_strict_subset(g, f)])


@dataclass(frozen=True)
class Block:
    """top minus the union of holes; every hole lies strictly inside top."""

    top: object
    holes: tuple = ()

    def pp_sets(self):
        return (self.top,) + self.holes


@dataclass(frozen=True)
class Cell:
    """union(positive) minus union(negative), with negative preceding positive."""

    positive: tuple
    negative: tuple = ()


@dataclass(frozen=True)
class Nest:
    elements: tuple
    positive: tuple = ()
    negative: tuple = ()


def core_block(be: Backend, elements: Sequence, f) -> Block | None:
    """Core of f in a meet-closed family, or None when it is empty."""
    holes = strict_maximal_below(be, elements, f)
    if not be.is_t_aleph0 and be.covers(f, holes):
        return None
    return Block(f, holes)


@dataclass(frozen=True)
class DefinableSet:
    """Finite disjoint union of blocks inside M^n."""

    backend: Backend = field(compare=False, repr=False)
    n: int
    blocks: tuple = ()

    # construction
    @staticmethod
    def empty(be: Backend, n: int) -> "DefinableSet":
        return DefinableSet(be, n, ())

    @staticmethod
    def from_pp(be: Backend, p) -> "DefinableSet":
        return DefinableSet(be, p.n, (Block(p, ()),))

    @staticmethod
    def from_points(be: Backend, points: Iterable[Sequence], n: int | None = None) -> "DefinableSet":
        pts = sorted({be.parse_point(x) for x in points})
        if not pts:
            if n is None:
                raise PPError("empty point set needs an ambient dimension")
            return DefinableSet.empty(be, n)
        if len({len(x) for x in pts}) > 1 or (n is not None and len(pts[0]) != n):
            raise PPError("points of different dimensions")
        return DefinableSet(be, len(pts[0]), tuple(Block(be.singleton(x), ()) for x in pts))

    @staticmethod
    def from_antichain(be: Backend, sets: Iterable, n: int) -> "DefinableSet":
        return DefinableSet.from_blocks(be, [Block(p, ()) for p in sets], n)

    @staticmethod
    def from_cell(be: Backend, cell: Cell, n: int) -> "DefinableSet":
        return DefinableSet.from_antichain(be, cell.positive, n).difference(
            DefinableSet.from_antichain(be, cell.negative, n))

    @staticmethod
    def from_blocks(be: Backend, blocks: Iterable[Block], n: int) -> "DefinableSet":
        """Union of arbitrary (possibly overlapping) blocks."""
        parts = DefinableSet(be, n, tuple(blocks))
        if any(b.top.n != n for b in parts.blocks):
            raise PPError("block in the wrong ambient power")
        return parts._combine(DefinableSet.empty(be, n), lambda a, b: a)

    # queries
    def pp_sets(self) -> set:
        return {p for b in self.blocks for p in b.pp_sets()}

    def member_of_core(self, f) -> bool:
        """Whether the core of f (in any nest containing these pp-sets) lies inside this set."""
        be = self.backend
        return any(be.is_subset(f, b.top) and not any(be.is_subset(f, h) for h in b.holes) for b in self.blocks)

    def contains_point(self, x) -> bool:
        be = self.backend
        return any(be.contains_point(b.top, x) and not any(be.contains_point(h, x) for h in b.holes)
                   for b in self.blocks)

    def is_empty(self) -> bool:
        return not self.blocks

    def nest(self) -> Nest:
        elems = meet_closure(self.backend, self.pp_sets())
        plus = tuple(f for f in elems if self.member_of_core(f))
        return Nest(elems, plus, tuple(f for f in elems if f not in plus))

    def canonical(self) -> "DefinableSet":
        """Partition into the cores of the positive nest elements."""
        be = self.backend
        nest = self.nest()
        blocks = [b for f in nest.positive if (b := core_block(be, nest.elements, f)) is not None]
        return DefinableSet(be, self.n, tuple(blocks))

    # boolean operations
    def _combine(self, other: "DefinableSet", op: Callable[[bool, bool], bool]) -> "DefinableSet":
        if other.n != self.n:
            raise PPError(f"ambient dimensions differ ({self.n} vs {other.n})")
        be = self.backend
        elems = meet_closure(be, self.pp_sets() | other.pp_sets())
        blocks = []
        for f in elems:
            if op(self.member_of_core(f), other.member_of_core(f)):
                b = core_block(be, elems, f)
                if b is not None:
                    blocks.append(b)
        return DefinableSet(be, self.n, tuple(blocks))

    def union(self, other):
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other):
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def disjoint_union(self, other):
        if not self.intersection(other).is_empty():
            raise PPError("operands of a disjoint union intersect")
        return self.union(other)

    def product(self, other: "DefinableSet") -> "DefinableSet":
        be = self.backend
        blocks = []
        for b1 in self.blocks:
            for b2 in other.blocks:
                top = be.product(b1.top, b2.top)
                holes = [be.product(h, b2.top) for h in b1.holes] + [be.product(b1.top, h) for h in b2.holes]
                blocks.append(Block(top, canonical_antichain(be, holes)))
        return DefinableSet(be, self.n + other.n, tuple(blocks))

    def is_subset(self, other) -> bool:
        return self.difference(other).is_empty()

    def same_set(self, other) -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def map_blocks(self, fn: Callable) -> "DefinableSet":
        """Apply a pp-set map blockwise (the map must be injective)."""
        be = self.backend
        blocks = [Block(fn(b.top), tuple(fn(h) for h in b.holes)) for b in self.blocks]
        n = blocks[0].top.n if blocks else self.n
        return DefinableSet(be, n, tuple(blocks))

    def describe(self) -> list:
        be = self.backend
        return [{"top": be.describe(b.top), "holes": [be.describe(h) for h in b.holes]} for b in self.blocks]

    def render(self) -> str:
        if not self.blocks:
            return "{}"
        be = self.backend
        parts = []
        for b in self.blocks:
            s = be.render(b.top)
            if b.holes:
                s += " minus [" + "; ".join(be.render(h) for h in b.holes) + "]"
            parts.append(s)
        return " | ".join(parts)


def build_nest(be: Backend, sets: Iterable, d: DefinableSet | None = None) -> Nest:
    """Meet closure of the sets; with a definable set, also its split into positive and negative elements."""
    if d is None:
        return Nest(meet_closure(be, sets))
    elems = meet_closure(be, set(sets) | d.pp_sets())
    plus = tuple(f for f in elems if d.member_of_core(f))
    return Nest(elems, plus, tuple(f for f in elems if f not in plus))
