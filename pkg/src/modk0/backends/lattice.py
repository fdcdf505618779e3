"""Cosets of subgroups of Z^n: the pp-sets of the integers as a module over themselves."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import GradedMonoid, IndexRelation
from ..linalg import (IntMatrix, det, express_in_basis, in_span, integer_solve, lattice_basis, lattice_intersect,
                      reduce_mod_lattice, rref, snf, unimodular_inverse)
from ..ppcalc.backend import (Backend, CoveredError, INFINITE, IndexTooLarge, PPError, parameter_sequence, vadd,
                              vsub)

DEFAULT_INDEX_CAP = 10 ** 6


def _int(x) -> int:
    if isinstance(x, bool):
        raise PPError("boolean is not an integer coordinate")
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise PPError(f"non-integer coordinate {x}")
        return int(x)
    if not isinstance(x, int):
        raise PPError(f"integer coordinate expected, got {x!r}")
    return x


@dataclass(frozen=True)
class LatticeCoset:
    """offset + rowspan_Z(basis); basis in Hermite form, offset reduced modulo it."""

    n: int
    offset: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lattice(self) -> IntMatrix:
        return IntMatrix(self.basis, self.n)

    def __hash__(self):
        # pp-sets key every cache, so the hash is computed once
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.n, self.offset, self.basis))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.n, self.rank, self.basis, self.offset)

    def __repr__(self):
        o = "(" + ", ".join(map(str, self.offset)) + ")"
        if not self.basis:
            return f"{{{o}}}"
        return o + " + <" + ", ".join("(" + ", ".join(map(str, r)) + ")" for r in self.basis) + ">"


def make_coset(offset: Sequence[int], gens: Sequence[Sequence[int]]) -> LatticeCoset:
    n = len(offset)
    b = lattice_basis([[_int(x) for x in g] for g in gens], n)
    return LatticeCoset(n, reduce_mod_lattice([_int(x) for x in offset], b), b.rows)


class LatticeBackend(Backend):
    """The integers; pp-sets are cosets of subgroups of Z^n and indices can be finite."""

    name = "integer-z"
    is_t_aleph0 = False
    monoid = GradedMonoid("r", 1, ("X",))

    def __init__(self, index_cap: int = DEFAULT_INDEX_CAP, schema_ranks: int = 2, schema_moduli: Sequence[int] = (2, 3)):
        super().__init__()
        self.index_cap = index_cap
        self.schema_ranks = schema_ranks
        self.schema_moduli = tuple(schema_moduli)
        self._lattice_cache: dict = {}
        self._band_cache: dict = {}

    def dim(self, p) -> int:
        return p.rank

    def _in_lattice(self, v, p) -> bool:
        v = list(v)
        for row in p.basis:
            col = next(k for k, x in enumerate(row) if x)
            q, r = divmod(v[col], row[col])
            if r:
                return False
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def contains_point(self, p, x) -> bool:
        return self._in_lattice(vsub(x, p.offset), p)

    def _meet(self, p, q):
        if p.n != q.n:
            raise PPError("meet of pp-sets in different ambient powers")
        diff = vsub(q.offset, p.offset)
        if p.basis == q.basis:
            return p if self._in_lattice(diff, p) else None
        if not p.basis or not q.basis:
            point, other = (p, q) if not p.basis else (q, p)
            return point if self.contains_point(other, point.offset) else None
        stacked = IntMatrix(p.basis + q.basis, p.n)
        coeffs = express_in_basis(diff, stacked)
        if coeffs is None:
            return None
        a = coeffs[: p.rank]
        point = vadd(p.offset, tuple(sum(c * row[k] for c, row in zip(a, p.basis)) for k in range(p.n)))
        return make_coset(point, self._intersect(p.basis, q.basis))

    def _intersect(self, a, b):
        key = (a, b)
        if key not in self._lattice_cache:
            self._lattice_cache[key] = lattice_intersect(IntMatrix(a, len(a[0])), IntMatrix(b, len(b[0]))).rows
        return self._lattice_cache[key]

    def _is_subset(self, p, q):
        if p.n != q.n:
            raise PPError("comparison of pp-sets in different ambient powers")
        return self.contains_point(q, p.offset) and all(self._in_lattice(r, q) for r in p.basis)

    def basepoint(self, p):
        return p.offset

    def translate(self, p, v):
        return make_coset(vadd(p.offset, tuple(_int(x) for x in v)), p.basis)

    def subgroup_part(self, p):
        return LatticeCoset(p.n, (0,) * p.n, p.basis)

    def index(self, p, q):
        """[p° : p° ∩ q°] as an integer, or infinity when the rank drops."""
        inter = lattice_intersect(p.lattice(), q.lattice())
        if inter.nrows < p.rank:
            return INFINITE
        if p.rank == 0:
            return 1
        coeffs = [express_in_basis(r, p.lattice()) for r in inter.rows]
        return abs(int(det(IntMatrix(coeffs, p.rank))))

    def coset_decompose(self, q, h):
        """q as a disjoint union of cosets of the subgroup h (which must have finite index in q°)."""
        if any(h.offset) or not all(self._in_lattice(r, q) for r in h.basis):
            raise PPError("decomposition needs a subgroup of the pp-set's subgroup")
        if h.rank < q.rank:
            raise PPError("infinite index: cannot decompose into finitely many cosets")
        if h.rank == 0:
            return [q]
        c = IntMatrix([express_in_basis(r, q.lattice()) for r in h.basis], q.rank)
        res = snf(c)
        size = 1
        for d in res.d:
            size *= d
        if size > self.index_cap:
            raise IndexTooLarge(f"index {size} is finite but above the cap {self.index_cap}")
        newb = unimodular_inverse(res.v) @ q.lattice()
        out = []
        for ts in itertools.product(*[range(d) for d in res.d]):
            shift = tuple(sum(t * row[k] for t, row in zip(ts, newb.rows)) for k in range(q.n))
            out.append(make_coset(vadd(q.offset, shift), h.basis))
        return sorted(set(out), key=self.sort_key)

    def band_key(self, p) -> str:
        key = (p.n, p.basis)
        if key not in self._band_cache:
            rows = rref(p.basis, p.n)
            self._band_cache[key] = "span:" + ";".join(",".join(str(x) for x in r) for r in rows)
        return self._band_cache[key]

    def product(self, p, q):
        gens = [list(r) + [0] * q.n for r in p.basis] + [[0] * p.n + list(r) for r in q.basis]
        return make_coset(p.offset + q.offset, gens)

    def ambient(self, n: int):
        return LatticeCoset(n, (0,) * n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def singleton(self, x):
        return LatticeCoset(len(x), tuple(_int(v) for v in x), ())

    def parse_point(self, values) -> tuple:
        return tuple(_int(v) for v in values)

    def apply_affine(self, p, a, b):
        """Image under x -> A x + b with A in GL_n(Z)."""
        a = [[_int(x) for x in row] for row in a]
        if abs(det(IntMatrix(a, len(a)))) != 1:
            raise PPError("map is not an automorphism of Z^n")
        img = lambda v: tuple(sum(x * y for x, y in zip(row, v)) for row in a)
        return make_coset(vadd(img(p.offset), tuple(_int(x) for x in b)), [img(r) for r in p.basis])

    def pp_from_presentation(self, r, s, c):
        """{x in Z^n : exists y in Z^m with R x + S y + c = 0}."""
        if not r:
            raise PPError("presentation needs at least one row")
        n = len(r[0])
        m = len(s[0]) if s and s[0] else 0
        rows = [[_int(x) for x in ri] + ([_int(x) for x in s[i]] if m else []) for i, ri in enumerate(r)]
        sol = integer_solve(IntMatrix(rows, n + m), [-_int(x) for x in c])
        if sol is None:
            return None
        z, kern = sol
        return make_coset(z[:n], [row[:n] for row in kern.rows])

    # covering arguments
    def _split(self, p, avoid):
        """Meets with p, split into finite-index pieces and thin pieces."""
        fat, thin = [], []
        for s in avoid:
            m = self.meet(p, s)
            if m is None:
                continue
            (fat if m.rank == p.rank else thin).append(m)
        return fat, thin

    def _uncovered_cosets(self, p, fat):
        if not fat:
            return [p]
        h = self.subgroup_part(p)
        for m in fat:
            h = self.meet(h, self.subgroup_part(m))
        return [c for c in self.coset_decompose(p, h) if not any(self.contains_point(m, c.offset) for m in fat)]

    def covers(self, p, sets) -> bool:
        fat, _ = self._split(p, sets)
        # a coset is never a finite union of cosets of infinite index in it
        return not self._uncovered_cosets(p, fat)

    def pick_point_avoiding(self, p, avoid):
        fat, thin = self._split(p, avoid)
        free = self._uncovered_cosets(p, fat)
        if not free:
            raise CoveredError(f"{p!r} is covered by the avoided sets")
        c = free[0]
        thin = [m for m in (self.meet(c, t) for t in thin) if m is not None]
        if not thin:
            return c.offset
        spans = [rref(m.basis, p.n) for m in thin]
        k = 1
        while True:
            v = tuple(sum(k ** i * row[j] for i, row in enumerate(c.basis)) for j in range(p.n))
            if not any(in_span(v, w) for w in spans):
                break
            k += 1
        for t in parameter_sequence():
            x = tuple(o + t * vi for o, vi in zip(c.offset, v))
            if not any(self.contains_point(m, x) for m in thin):
                return x

    # relations of K0
    def relation_schema(self) -> list[IndexRelation]:
        out = []
        for r in range(1, self.schema_ranks + 1):
            whole = self.ambient(r)
            subs = [make_coset((0,) * r, [[k if i == j == 0 else int(i == j) for j in range(r)] for i in range(r)])
                    for k in self.schema_moduli]
            subs.append(make_coset((0,) * r, [[2 * int(i == j) for j in range(r)] for i in range(r)]))
            for q in subs:
                idx = self.index(whole, q)
                out.append(IndexRelation(self.colour_key(whole), self.colour_key(q), idx))
        return out

    def schema_note(self) -> str:
        return "every colour of positive rank is annihilated: delta_r = k delta_r for r >= 1, k >= 2"

    # text and JSON
    def render(self, p) -> str:
        return repr(p)

    def describe(self, p) -> dict:
        return {"kind": "lattice", "n": p.n, "offset": list(p.offset), "basis": [list(r) for r in p.basis]}

    def from_descriptor(self, desc: dict):
        kind = desc.get("kind", "lattice")
        if kind != "lattice":
            raise PPError(f"descriptor kind {kind!r} does not match the integer backend")
        if "exists" in desc:
            ex = desc["exists"]
            out = self.pp_from_presentation(ex["R"], ex.get("S", [[]] * len(ex["R"])), ex["c"])
            if out is None:
                raise PPError("descriptor defines the empty set")
        else:
            n = int(desc["n"])
            off = desc.get("offset", [0] * n)
            basis = desc.get("basis", [])
            if len(off) != n or any(len(r) != n for r in basis):
                raise PPError("descriptor dimension mismatch")
            out = make_coset(off, basis)
        if "n" in desc and out.n != int(desc["n"]):
            raise PPError("descriptor dimension mismatch")
        return out
