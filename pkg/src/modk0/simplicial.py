"""Finite abstract simplicial complexes, chain complexes and integral homology."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Hashable, Iterable, Sequence

from .linalg import IntMatrix, smith_invariants

DEFAULT_FACE_CAP = 4096


class ComplexError(ValueError):
    pass


class ProductTooLarge(ComplexError):
    pass


def vertex_key(v):
    """Total order on vertex labels of mixed kinds (ints, strings, nested tuples)."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, (int, Fraction)):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    return (3, repr(v))


def _sorted_face(face) -> tuple:
    return tuple(sorted(face, key=vertex_key))


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward closed set of nonempty finite vertex sets."""

    faces: frozenset = field(default_factory=frozenset)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self.faces for v in f}, key=vertex_key))

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    @cached_property
    def by_dim(self) -> tuple[tuple[tuple, ...], ...]:
        out = [[] for _ in range(self.dim + 1)]
        for f in self.faces:
            out[len(f) - 1].append(_sorted_face(f))
        return tuple(tuple(sorted(fs, key=lambda t: tuple(map(vertex_key, t)))) for fs in out)

    @cached_property
    def maximal_faces(self) -> tuple[tuple, ...]:
        fs = sorted(self.faces, key=len, reverse=True)
        maxi = []
        for f in fs:
            if not any(f < g for g in maxi):
                maxi.append(f)
        return tuple(sorted((_sorted_face(f) for f in maxi), key=lambda t: (len(t), tuple(map(vertex_key, t)))))

    def f_vector(self) -> list[int]:
        return [len(x) for x in self.by_dim]

    def __len__(self):
        return len(self.faces)

    def __contains__(self, face):
        return frozenset(face) in self.faces

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.faces <= other.faces

    def __repr__(self):
        return f"SimplicialComplex({[list(f) for f in self.maximal_faces]!r})"


def make_complex(maximal_faces: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
    """Downward closure of the given faces.  Empty faces are ignored."""
    faces = set()
    for f in maximal_faces:
        f = frozenset(f)
        if not f or f in faces:
            continue
        items = list(f)
        for k in range(1, len(items) + 1):
            for sub in itertools.combinations(items, k):
                faces.add(frozenset(sub))
    return SimplicialComplex(frozenset(faces))


def complex_from_faces(faces: Iterable[Iterable[Hashable]], check: bool = True) -> SimplicialComplex:
    fs = frozenset(frozenset(f) for f in faces)
    if frozenset() in fs:
        fs = fs - {frozenset()}
    if check:
        for f in fs:
            for v in f:
                if len(f) > 1 and f - {v} not in fs:
                    raise ComplexError(f"face {sorted(f, key=vertex_key)} is missing the facet without {v!r}")
    return SimplicialComplex(fs)


def euler_char(k: SimplicialComplex) -> int:
    return sum(1 if len(f) % 2 else -1 for f in k.faces)


# -- chain complexes and homology -------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex; ``boundaries[n]`` maps degree n to degree n-1 (rows index degree n-1)."""

    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.boundaries):
            raise ComplexError("one boundary matrix per degree is required")
        for n, (r, b) in enumerate(zip(self.ranks, self.boundaries)):
            below = self.ranks[n - 1] if n else 0
            if b.shape != (below, r):
                raise ComplexError(f"boundary {n} has shape {b.shape}, expected {(below, r)}")

    def boundary(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.ranks):
            return self.boundaries[n]
        below = self.ranks[n - 1] if 0 < n <= len(self.ranks) else 0
        return IntMatrix.zeros(below, 0)

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def euler_char(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))


@dataclass(frozen=True)
class HomologyResult:
    """Graded abelian group: per degree a free rank and torsion coefficients (>1)."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    @staticmethod
    def make(groups: Sequence[tuple[int, Sequence[int]]]) -> "HomologyResult":
        gs = [(b, tuple(sorted(t))) for b, t in groups]
        while gs and gs[-1] == (0, ()):
            gs.pop()
        return HomologyResult(tuple(gs))

    def betti(self, n: int) -> int:
        return self.groups[n][0] if 0 <= n < len(self.groups) else 0

    def torsion(self, n: int) -> tuple[int, ...]:
        return self.groups[n][1] if 0 <= n < len(self.groups) else ()

    def euler_char(self) -> int:
        return sum((-1) ** n * b for n, (b, _) in enumerate(self.groups))

    def describe(self, n: int) -> str:
        b, tors = self.groups[n] if n < len(self.groups) else (0, ())
        parts = []
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts += [f"Z/{t}" for t in tors]
        return "+".join(parts) if parts else "0"

    def __str__(self):
        nonzero = [f"H{n}={self.describe(n)}" for n in range(len(self.groups)) if self.groups[n] != (0, ())]
        return ", ".join(nonzero) if nonzero else "0"

    def to_json(self) -> dict:
        return {str(n): {"rank": b, "torsion": list(t)} for n, (b, t) in enumerate(self.groups)}


def chain_complex(k: SimplicialComplex) -> ChainComplex:
    """Oriented simplicial chains; orientation follows the vertex order."""
    layers = k.by_dim
    index = [{f: i for i, f in enumerate(fs)} for fs in layers]
    ranks, bds = [], []
    for n, fs in enumerate(layers):
        ranks.append(len(fs))
        if n == 0:
            bds.append(IntMatrix.zeros(0, len(fs)))
            continue
        rows = [[0] * len(fs) for _ in layers[n - 1]]
        lower = index[n - 1]
        for j, f in enumerate(fs):
            for i in range(len(f)):
                rows[lower[f[:i] + f[i + 1:]]][j] = -1 if i % 2 else 1
        bds.append(IntMatrix(rows, len(fs)))
    return ChainComplex(tuple(ranks), tuple(bds))


def homology_of_chain(c: ChainComplex) -> HomologyResult:
    invs = [smith_invariants(c.boundary(n)) for n in range(len(c.ranks) + 1)]
    groups = []
    for n, r in enumerate(c.ranks):
        betti = r - len(invs[n]) - len(invs[n + 1])
        groups.append((betti, [x for x in invs[n + 1] if x > 1]))
    return HomologyResult.make(groups)


def homology(k: SimplicialComplex) -> HomologyResult:
    return homology_of_chain(chain_complex(k))


def tensor_chain(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Tensor product with d(a⊗b) = ∂a⊗b + (-1)^i a⊗δb for a of degree i."""
    top = len(c.ranks) + len(d.ranks) - 1
    if not c.ranks or not d.ranks:
        return ChainComplex((), ())
    basis, index = [], []
    for n in range(top):
        cells = [(i, a, n - i, b) for i in range(n + 1) if i < len(c.ranks) and n - i < len(d.ranks)
                 for a in range(c.ranks[i]) for b in range(d.ranks[n - i])]
        basis.append(cells)
        index.append({x: t for t, x in enumerate(cells)})
    bds = [IntMatrix.zeros(0, len(basis[0]))]
    for n in range(1, top):
        rows = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for col, (i, a, j, b) in enumerate(basis[n]):
            if i > 0:
                bc = c.boundary(i)
                for a2 in range(bc.nrows):
                    x = bc.rows[a2][a]
                    if x:
                        rows[index[n - 1][(i - 1, a2, j, b)]][col] += x
            if j > 0:
                bd = d.boundary(j)
                sign = -1 if i % 2 else 1
                for b2 in range(bd.nrows):
                    x = bd.rows[b2][b]
                    if x:
                        rows[index[n - 1][(i, a, j - 1, b2)]][col] += sign * x
        bds.append(IntMatrix(rows, len(basis[n])))
    return ChainComplex(tuple(len(b) for b in basis), tuple(bds))


# -- constructions -----------------------------------------------------------

def cone(k: SimplicialComplex, q: SimplicialComplex, apex: Hashable) -> SimplicialComplex:
    """K ∪ Cone(Q): faces of K, the apex, and apex ∪ F for F in Q."""
    if not q.is_subcomplex_of(k):
        raise ComplexError("cone base is not a subcomplex")
    if any(apex in f for f in k.faces):
        raise ComplexError(f"apex {apex!r} is already a vertex")
    a = frozenset([apex])
    return SimplicialComplex(k.faces | {a} | {f | a for f in q.faces})


def fresh_vertex(k: SimplicialComplex):
    used = set(k.vertices)
    i = 0
    while ("apex", i) in used:
        i += 1
    return ("apex", i)


def relative_homology(k: SimplicialComplex, q: SimplicialComplex) -> HomologyResult:
    """Homology of the pair, read off the cone: one free class in degree 0 comes from the apex."""
    h = homology(cone(k, q, fresh_vertex(k)))
    groups = [list(g) for g in h.groups] or [[0, ()]]
    groups[0][0] -= 1
    return HomologyResult.make([(b, t) for b, t in groups])


def _onto_relations(a: int, b: int) -> int:
    """Number of relations between an a-set and a b-set projecting onto both."""
    return sum((-1) ** (i + j) * comb(a, i) * comb(b, j) * 2 ** ((a - i) * (b - j))
               for i in range(a + 1) for j in range(b + 1))


def _face_counts(k: SimplicialComplex) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in k.faces:
        out[len(f)] = out.get(len(f), 0) + 1
    return out


def product_face_count(k: SimplicialComplex, q: SimplicialComplex) -> int:
    fk, fq = _face_counts(k), _face_counts(q)
    return sum(x * y * _onto_relations(a, b) for a, x in fk.items() for b, y in fq.items())


def disjunctive_face_count(k: SimplicialComplex, q: SimplicialComplex) -> int:
    fk, fq = _face_counts(k), _face_counts(q)
    vk, vq = len(k.vertices), len(q.vertices)
    total = 0
    for a in range(1, vk + 1):
        for b in range(1, vq + 1):
            ca, cb = comb(vk, a), comb(vq, b)
            pairs = ca * cb - (ca - fk.get(a, 0)) * (cb - fq.get(b, 0))
            total += pairs * _onto_relations(a, b)
    return total


def _grid_faces(blocks: Iterable[tuple[tuple, tuple]]) -> frozenset:
    faces = set()
    for s, t in blocks:
        cells = [(u, v) for u in s for v in t]
        for r in range(1, len(cells) + 1):
            faces.update(frozenset(x) for x in itertools.combinations(cells, r))
    return frozenset(faces)


def simplicial_product(k: SimplicialComplex, q: SimplicialComplex, cap: int = DEFAULT_FACE_CAP) -> SimplicialComplex:
    """Faces are vertex sets of V(K)×V(Q) whose two projections are faces."""
    size = product_face_count(k, q)
    if size > cap:
        raise ProductTooLarge(f"product would have {size} faces (cap {cap})")
    return SimplicialComplex(_grid_faces((s, t) for s in k.maximal_faces for t in q.maximal_faces))


def disjunctive_product(k: SimplicialComplex, q: SimplicialComplex, cap: int = DEFAULT_FACE_CAP) -> SimplicialComplex:
    """Faces are vertex sets of V(K)×V(Q) with at least one projection a face."""
    size = disjunctive_face_count(k, q)
    if size > cap:
        raise ProductTooLarge(f"disjunctive product would have {size} faces (cap {cap})")
    vk, vq = tuple(k.vertices), tuple(q.vertices)
    blocks = [(s, vq) for s in k.maximal_faces] + [(vk, t) for t in q.maximal_faces]
    return SimplicialComplex(_grid_faces(blocks))


# -- text format -------------------------------------------------------------

def _parse_vertex(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_complex(text: str) -> SimplicialComplex:
    """One maximal face per line, vertices separated by commas; '#' starts a comment."""
    faces = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = [t for t in line.split(",")]
        if any(not t.strip() for t in toks):
            raise ComplexError(f"line {lineno}: empty vertex name")
        faces.append([_parse_vertex(t) for t in toks])
    return make_complex(faces)


def format_complex(k: SimplicialComplex) -> str:
    return "".join(",".join(str(v) for v in f) + "\n" for f in k.maximal_faces)
