"""Connectivity of definable sets through the covering digraph of a nest."""
from __future__ import annotations

from dataclasses import dataclass

from .backend import PPError, vsub
from .sets import DefinableSet, build_nest, core_block, meet_closure
from .towers import closure


@dataclass(frozen=True)
class ConnectivityDigraph:
    """Arcs (i, j) join nodes[i] to a cover nodes[j] within the node set."""

    nodes: tuple
    arcs: tuple

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.arcs:
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.nodes)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def component_count(self) -> int:
        return len(self.components())


def connectivity_digraph(be, positive) -> ConnectivityDigraph:
    nodes = tuple(sorted(set(positive), key=be.sort_key))
    arcs = []
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if be.is_strict_subset(a, b) and not any(
                    be.is_strict_subset(a, c) and be.is_strict_subset(c, b) for c in nodes):
                arcs.append((i, j))
    return ConnectivityDigraph(nodes, tuple(arcs))


@dataclass(frozen=True)
class LambdaResult:
    value: int
    exact: bool
    lower: int
    upper: int

    def __str__(self):
        return f"{self.value} ({'exact' if self.exact else 'upper-bound'})"


def _components(be, d: DefinableSet, elements) -> int:
    plus = [f for f in elements if d.member_of_core(f)]
    return connectivity_digraph(be, plus).component_count()


def lambda_lower_bound(d: DefinableSet) -> int:
    """Components of the closure's maximal pp-sets, joined when they meet inside d.

    Every component of any refining nest sits over one of these classes and
    every class is reached, so no refinement can do better.
    """
    be = d.backend
    tops = closure(d)
    parent = list(range(len(tops)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i in range(len(tops)):
        for j in range(i):
            m = be.meet(tops[i], tops[j])
            if m is not None and not DefinableSet.from_pp(be, m).intersection(d).is_empty():
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(tops))})


def _refine(be, d: DefinableSet, budget: int, max_candidates: int):
    """Best nest found within the budget, with its component count and the lower bound."""
    lower = lambda_lower_bound(d)
    elements = best = build_nest(be, d.pp_sets(), d).elements
    upper = _components(be, d, elements)
    for _ in range(budget):
        if upper <= lower:
            break
        bases = {be.basepoint(x) for x in elements}
        shifts = sorted({vsub(a, b) for a in bases for b in bases if a != b})
        cands = set()
        for f in elements:
            for g in elements:
                for s in shifts:
                    if len(cands) >= max_candidates:
                        break
                    m = be.meet(f, be.translate(g, s))
                    if m is not None:
                        cands.add(m)
        elements = meet_closure(be, set(elements) | cands)
        count = _components(be, d, elements)
        if count < upper:
            upper, best = count, elements
    return best, lower, upper


def lambda_invariant(d: DefinableSet, budget: int = 1, max_candidates: int = 20000) -> LambdaResult:
    """Least number of components over refining nests, searched for ``budget`` rounds.

    A round adjoins the meets of nest elements with translates of nest
    elements by differences of nest basepoints.  The result is flagged exact
    when it meets the lower bound.
    """
    be = d.backend
    if not be.is_t_aleph0:
        raise PPError("connectivity is only implemented for theories with infinite pp-indices")
    if d.is_empty():
        return LambdaResult(0, True, 0, 0)
    _, lower, upper = _refine(be, d, budget, max_candidates)
    return LambdaResult(upper, upper == lower, lower, upper)


def connected_pieces(d: DefinableSet, budget: int = 1, max_candidates: int = 20000) -> list[DefinableSet]:
    """Split d along the components of the best nest found: one piece per component."""
    be = d.backend
    if not be.is_t_aleph0:
        raise PPError("connectivity is only implemented for theories with infinite pp-indices")
    if d.is_empty():
        return []
    elements, _, _ = _refine(be, d, budget, max_candidates)
    graph = connectivity_digraph(be, [f for f in elements if d.member_of_core(f)])
    pieces = []
    for comp in graph.components():
        blocks = [core_block(be, elements, graph.nodes[i]) for i in comp]
        pieces.append(DefinableSet(be, d.n, tuple(b for b in blocks if b is not None)))
    return pieces
