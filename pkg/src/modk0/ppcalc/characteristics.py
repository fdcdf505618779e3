"""Local complexes, local characteristics and the evaluation map into K0.

For a pp-set P and a finite family of pp-sets alpha, the local complex at P
has the members of alpha strictly containing P as vertices; a set of them is
a face when their intersection still strictly contains P.  The local
characteristic is its Euler characteristic minus 1 if P is covered by alpha.
Summing minus the local characteristics over the pp-sets of one colour gives
that colour's coefficient of the evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..algebra import K0Presentation, MonoidRingElement
from ..simplicial import SimplicialComplex
from .backend import Backend, IncompatibleFamily
from .sets import Cell, DefinableSet, canonical_antichain, meet_closure, strict_maximal_below


def band(be: Backend, p) -> str:
    cache = be.__dict__.setdefault("_band_cache", {})
    if p not in cache:
        cache[p] = be.band_key(p)
    return cache[p]


def check_compatible(be: Backend, family: Iterable) -> None:
    """In the general case, members of one band must be cosets of a common subgroup."""
    if be.is_t_aleph0:
        return
    seen: dict = {}
    for q in family:
        h = be.subgroup_part(q)
        if seen.setdefault(band(be, q), h) != h:
            raise IncompatibleFamily(f"family is not in discrete form near {be.render(q)}")


def _local_faces(be: Backend, verts: Sequence, p) -> list[tuple[int, ...]]:
    faces = []

    def grow(start, meet, face):
        for i in range(start, len(verts)):
            m = verts[i] if meet is None else be.meet(meet, verts[i])
            # every vertex contains p, so the meet is never empty
            if m is not None and m != p:
                f = face + (i,)
                faces.append(f)
                grow(i + 1, m, f)

    grow(0, None, ())
    return faces


def _vertices(be: Backend, alpha: Iterable, p) -> list:
    return sorted({a for a in alpha if be.is_strict_subset(p, a)}, key=be.sort_key)


def local_complex(be: Backend, alpha: Iterable, p) -> SimplicialComplex:
    """Local complex at p; vertex i is the i-th member (canonical order) strictly containing p."""
    alpha = list(alpha)
    check_compatible(be, alpha + [p])
    faces = _local_faces(be, _vertices(be, alpha, p), p)
    return SimplicialComplex(frozenset(frozenset(f) for f in faces))


def local_characteristic(be: Backend, alpha: Iterable, p) -> int:
    alpha = list(alpha)
    check_compatible(be, alpha + [p])
    chi = sum(1 if len(f) % 2 else -1 for f in _local_faces(be, _vertices(be, alpha, p), p))
    return chi - (1 if be.covers(p, alpha) else 0)


def kappa_cell(be: Backend, cell: Cell, p) -> int:
    return local_characteristic(be, cell.positive, p) - local_characteristic(be, cell.negative, p)


def kappa_blocks(be: Backend, blocks: Iterable, p) -> int:
    """Local characteristic of a disjoint union of blocks."""
    return sum(kappa_cell(be, Cell((b.top,), b.holes), p) for b in blocks)


# -- discrete forms ------------------------------------------------------------

def _common_subgroups(be: Backend, family: Iterable) -> dict:
    subs: dict = {}
    for q in family:
        h = be.subgroup_part(q)
        key = band(be, q)
        subs[key] = h if key not in subs else be.meet(subs[key], h)
    return subs


def _rewrite(be: Backend, q, subs: dict) -> list:
    h = subs[band(be, q)]
    return [q] if be.subgroup_part(q) == h else be.coset_decompose(q, h)


def discrete_form(be: Backend, alphas: Sequence[Iterable]) -> list[tuple]:
    """Rewrite every family as cosets of one subgroup per band, shared by all families."""
    alphas = [list(a) for a in alphas]
    subs = _common_subgroups(be, [q for a in alphas for q in a])
    return [tuple(sorted({c for q in a for c in _rewrite(be, q, subs)}, key=be.sort_key)) for a in alphas]


def discrete_nest(be: Backend, sets: Iterable) -> tuple:
    """Smallest refinement that is closed under meets and in discrete form.

    Every subgroup that appears is an intersection of subgroups of the input,
    so the alternation of closing and refining stops.
    """
    fam = set(sets)
    while True:
        fam = set(meet_closure(be, fam))
        if be.is_t_aleph0:
            return tuple(sorted(fam, key=be.sort_key))
        subs = _common_subgroups(be, fam)
        new = {c for q in fam for c in _rewrite(be, q, subs)}
        if new == fam:
            return tuple(sorted(fam, key=be.sort_key))
        fam = new


# -- evaluation ----------------------------------------------------------------

def positive_cells(be: Backend, elements: Sequence, d: DefinableSet) -> list[Cell]:
    """Cores of the members of a meet-closed family that lie in d."""
    return [Cell((f,), strict_maximal_below(be, elements, f)) for f in elements if d.member_of_core(f)]


def kappa(d: DefinableSet, p, elements: Sequence | None = None) -> int:
    be = d.backend
    if elements is None:
        elements = discrete_nest(be, d.pp_sets() | {p})
        if p not in elements:
            raise IncompatibleFamily("pp-set is split by the discrete form of the set; use a member of the nest")
    return sum(kappa_cell(be, c, p) for c in positive_cells(be, elements, d))


@dataclass(frozen=True)
class EvalImage:
    """Value of the evaluation map: raw coefficients and, when available, the reduced normal form."""

    raw: MonoidRingElement
    reduced: MonoidRingElement | None
    singular: tuple
    presentation: K0Presentation

    @property
    def value(self) -> MonoidRingElement:
        return self.reduced if self.reduced is not None else self.raw

    def __str__(self):
        return str(self.value)

    def to_json(self) -> dict:
        return {"value": str(self.value), "terms": self.value.as_dict(), "raw": self.raw.as_dict(),
                "ring": self.presentation.render()}


def evaluate(d: DefinableSet) -> EvalImage:
    be = d.backend
    elements = discrete_nest(be, d.pp_sets())
    cells = positive_cells(be, elements, d)
    coeff: dict[str, int] = {}
    singular = []
    for p in elements:
        k = sum(kappa_cell(be, c, p) for c in cells if be.is_subset(p, c.positive[0]))
        if k:
            key = be.colour_key(p)
            coeff[key] = coeff.get(key, 0) - k
            singular.append(p)
    raw = MonoidRingElement.make(be.monoid, coeff)
    pres = be.k0()
    reduced = pres.reduce(raw) if pres.homogeneous else None
    return EvalImage(raw, reduced, tuple(singular), pres)


def singular_set(d: DefinableSet) -> tuple:
    return evaluate(d).singular
