"""Closures, the canonical cell decomposition and its chain of antichains."""
from __future__ import annotations

from dataclasses import dataclass

from .backend import PPError
from .sets import Cell, DefinableSet, canonical_antichain, precedes


def _require_special(be):
    if not be.is_t_aleph0:
        raise PPError("closures and towers are only available for theories with infinite pp-indices")


def closure(d: DefinableSet) -> tuple:
    """Antichain whose union is the closure of d (union of the closures of any block partition)."""
    _require_special(d.backend)
    return canonical_antichain(d.backend, [b.top for b in d.blocks])


@dataclass(frozen=True)
class Tower:
    """Cells listed from the outside in; each positive part precedes the previous negative part."""

    cells: tuple

    @property
    def height(self) -> int:
        return len(self.cells)

    def union(self, be, n: int) -> DefinableSet:
        out = DefinableSet.empty(be, n)
        for c in self.cells:
            out = out.union(DefinableSet.from_cell(be, c, n))
        return out

    def is_valid(self, be) -> bool:
        for i, c in enumerate(self.cells):
            if not c.positive or not precedes(be, c.negative, c.positive):
                return False
            if i and not precedes(be, c.positive, self.cells[i - 1].negative):
                return False
        return True

    def describe(self, be) -> list:
        return [{"positive": [be.describe(p) for p in c.positive],
                 "negative": [be.describe(p) for p in c.negative]} for c in self.cells]


@dataclass(frozen=True)
class PrecChain:
    """Strictly descending chain of antichains, each preceding the one before."""

    antichains: tuple

    @property
    def length(self) -> int:
        return len(self.antichains)

    @property
    def height(self) -> int:
        return (self.length + 1) // 2


def cell_decompose(d: DefinableSet) -> Tower:
    """Peel off C = cl(D) minus cl(cl(D) minus D) until nothing is left."""
    be = d.backend
    _require_special(be)
    cells = []
    rest = d
    while not rest.is_empty():
        pos = closure(rest)
        pos_set = DefinableSet.from_antichain(be, pos, d.n)
        neg = closure(pos_set.difference(rest))
        cell = Cell(pos, neg)
        cells.append(cell)
        rest = rest.difference(DefinableSet.from_cell(be, cell, d.n))
    return Tower(tuple(cells))


def tower_chain(t: Tower) -> PrecChain:
    """Interleave positive and negative parts; a trailing empty negative part is dropped."""
    out = []
    for c in t.cells:
        out.append(c.positive)
        out.append(c.negative)
    if out and not out[-1]:
        out.pop()
    return PrecChain(tuple(out))


def chain_to_tower(ch: PrecChain) -> Tower:
    parts = list(ch.antichains)
    if any(not a for a in parts):
        raise PPError("chains contain nonempty antichains only")
    if len(parts) % 2:
        parts.append(())
    return Tower(tuple(Cell(parts[i], parts[i + 1]) for i in range(0, len(parts), 2)))
