"""Seeded random instances for the property suites."""
from __future__ import annotations

import random
from fractions import Fraction

from .backends.affine import AffineBackend, make_subspace
from .backends.lattice import LatticeBackend, make_coset
from .linalg import IntMatrix, det
from .ppcalc.sets import Block, DefinableSet, canonical_antichain
from .simplicial import SimplicialComplex, make_complex

_DIRS2 = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)]
_DIRS3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, -1, 0)]


def random_complex(rng: random.Random, nverts: int, max_dim: int = 2, max_faces: int = 4) -> SimplicialComplex:
    if nverts == 0:
        return SimplicialComplex()
    verts = list(range(1, nverts + 1))
    faces = [[v] for v in verts if rng.random() < 0.3]
    for _ in range(rng.randint(1, max_faces)):
        k = rng.randint(1, min(max_dim + 1, nverts))
        faces.append(rng.sample(verts, k))
    return make_complex(faces)


def random_subcomplex(rng: random.Random, k: SimplicialComplex) -> SimplicialComplex:
    faces = sorted(k.faces, key=lambda f: sorted(f))
    chosen = [f for f in faces if rng.random() < 0.3]
    return make_complex(chosen)


# -- affine pp-sets -----------------------------------------------------------

def random_affine(rng: random.Random, n: int, dim: int | None = None):
    if dim is None:
        dim = rng.choice([0, 0, 1, 1, 1] + ([2] if n >= 3 else []) + ([n] if rng.random() < 0.1 else []))
    dim = min(dim, n)
    base = [rng.randint(-1, 1) for _ in range(n)]
    if dim == n:
        dirs = [[int(i == j) for j in range(n)] for i in range(n)]
    elif n == 1:
        dirs = []
    else:
        pool = _DIRS2 if n == 2 else _DIRS3 if n == 3 else None
        if pool is None:
            pool = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        dirs = []
        while len(dirs) < dim:
            cand = dirs + [list(rng.choice(pool))]
            if _rank(cand, n) == len(cand):
                dirs = cand
    return make_subspace(base, dirs)


def _rank(rows, n):
    from .linalg import rank_rat
    return rank_rat(rows, n)


def random_antichain(rng: random.Random, be, n: int, size: int | None = None):
    size = size or rng.randint(1, 4)
    return canonical_antichain(be, [random_affine(rng, n) for _ in range(size)])


def random_definable(rng: random.Random, be, n: int, depth: int = 2) -> DefinableSet:
    if depth == 0 or rng.random() < 0.25:
        return DefinableSet.from_pp(be, random_affine(rng, n))
    a = random_definable(rng, be, n, depth - 1)
    b = random_definable(rng, be, n, depth - 1)
    op = rng.choice(["|", "|", "\\", "\\", "&"])
    return a.union(b) if op == "|" else a.difference(b) if op == "\\" else a.intersection(b)


def nonempty_definable(rng: random.Random, be, n: int, depth: int = 2) -> DefinableSet:
    while True:
        d = random_definable(rng, be, n, depth)
        if not d.is_empty():
            return d


def random_block(rng: random.Random, be, n: int) -> Block:
    top = random_affine(rng, n, rng.randint(1, n))
    holes = []
    for _ in range(rng.randint(0, 3)):
        h = be.meet(top, random_affine(rng, n))
        if h is not None and h != top:
            holes.append(h)
    return Block(top, canonical_antichain(be, holes))


def random_invertible(rng: random.Random, n: int, unimodular: bool = False) -> list[list[int]]:
    while True:
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        d = det(IntMatrix(a, n))
        if (abs(d) == 1) if unimodular else d != 0:
            return a


def random_translation(rng: random.Random, n: int, spread: int = 3) -> list[int]:
    return [rng.randint(-spread, spread) for _ in range(n)]


def random_points(rng: random.Random, n: int, k: int) -> list[tuple]:
    pts = set()
    while len(pts) < k:
        pts.add(tuple(Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for _ in range(n)))
    return sorted(pts)


# -- lattice pp-sets ------------------------------------------------------------

def random_sublattice(rng: random.Random, n: int, full_rank: bool = True, max_index: int = 12):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n if full_rank else rng.randint(0, n - 1))]
        if not full_rank or det(IntMatrix(rows, n)) != 0:
            if full_rank and abs(det(IntMatrix(rows, n))) > max_index:
                continue
            return make_coset([0] * n, rows)


def random_coset(rng: random.Random, n: int, max_index: int = 12):
    if rng.random() < 0.3 and n > 1:
        h = random_sublattice(rng, n, full_rank=False)
    else:
        h = random_sublattice(rng, n, max_index=max_index)
    return make_coset([rng.randint(-3, 3) for _ in range(n)], h.basis)


def affine_backend() -> AffineBackend:
    return AffineBackend()


def lattice_backend() -> LatticeBackend:
    return LatticeBackend()
