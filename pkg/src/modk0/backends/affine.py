"""Affine subspaces of Q^n: the pp-sets of vector spaces over the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import GradedMonoid
from ..linalg import RatMatrix, in_span, kernel_rational, pivot_columns, rref, solve_rational
from ..ppcalc.backend import Backend, CoveredError, INFINITE, PPError, parameter_sequence, vadd


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise PPError(f"floating point coordinate {x!r}; use an integer or a 'p/q' string")
    return Fraction(x)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class AffineSubspace:
    """base + span(dirs); dirs in RREF and base zero on the pivot columns."""

    n: int
    base: tuple[Fraction, ...]
    dirs: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.dirs)

    def __hash__(self):
        # pp-sets key every cache, so the hash is computed once
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.n, self.base, self.dirs))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.n, self.dim, self.base, self.dirs)

    def __repr__(self):
        b = "(" + ", ".join(_fmt(x) for x in self.base) + ")"
        if not self.dirs:
            return f"{{{b}}}"
        d = ", ".join("(" + ", ".join(_fmt(x) for x in r) + ")" for r in self.dirs)
        return f"{b} + <{d}>"


def make_subspace(base: Sequence, dirs: Sequence[Sequence]) -> AffineSubspace:
    n = len(base)
    d = rref(dirs, n)
    b = [_frac(x) for x in base]
    for row, p in zip(d, pivot_columns(d)):
        if b[p]:
            f = b[p]
            b = [x - f * y for x, y in zip(b, row)]
    return AffineSubspace(n, tuple(b), tuple(tuple(r) for r in d))


class AffineBackend(Backend):
    """Vector spaces over Q.  Every pp-definable set is an affine subspace or empty."""

    name = "affine-q"
    is_t_aleph0 = True
    monoid = GradedMonoid("d", 1, ("X",))

    def __init__(self):
        super().__init__()
        self._eq_cache: dict = {}

    # presentation helpers
    def equations(self, p: AffineSubspace):
        """Rows e with e·x = c describing p."""
        if p not in self._eq_cache:
            es = kernel_rational(p.dirs, p.n) if p.dirs else [[Fraction(int(i == j)) for j in range(p.n)] for i in range(p.n)]
            self._eq_cache[p] = [(e, sum(a * b for a, b in zip(e, p.base))) for e in es]
        return self._eq_cache[p]

    def from_equations(self, n: int, rows: Sequence[Sequence]) -> AffineSubspace | None:
        if not rows:
            return self.ambient(n)
        a = RatMatrix([r[:n] for r in rows], n)
        sol = solve_rational(a, [_frac(r[n]) for r in rows])
        if sol is None:
            return None
        return make_subspace(sol.particular, sol.kernel.rows)

    def pp_from_presentation(self, r: Sequence[Sequence], s: Sequence[Sequence], c: Sequence) -> AffineSubspace | None:
        """{x : exists y with R x + S y + c = 0}."""
        if not r:
            raise PPError("presentation needs at least one row")
        n = len(r[0])
        m = len(s[0]) if s and s[0] else 0
        rows = [list(ri) + (list(s[i]) if m else []) for i, ri in enumerate(r)]
        a = RatMatrix(rows, n + m)
        sol = solve_rational(a, [-_frac(x) for x in c])
        if sol is None:
            return None
        return make_subspace(sol.particular[:n], [row[:n] for row in sol.kernel.rows])

    # geometry
    def _meet(self, p, q):
        if p.n != q.n:
            raise PPError("meet of pp-sets in different ambient powers")
        rows = [list(e) + [c] for e, c in self.equations(p) + self.equations(q)]
        return self.from_equations(p.n, rows)

    def _is_subset(self, p, q):
        if p.n != q.n:
            raise PPError("comparison of pp-sets in different ambient powers")
        if p.dim > q.dim:
            return False
        for e, c in self.equations(q):
            if sum(a * b for a, b in zip(e, p.base)) != c:
                return False
            for d in p.dirs:
                if sum(a * b for a, b in zip(e, d)):
                    return False
        return True

    def contains_point(self, p, x) -> bool:
        return all(sum(a * b for a, b in zip(e, x)) == c for e, c in self.equations(p))

    def dim(self, p) -> int:
        return p.dim

    def basepoint(self, p):
        return p.base

    def translate(self, p, v):
        return make_subspace(vadd(p.base, v), p.dirs)

    def subgroup_part(self, p):
        return AffineSubspace(p.n, (Fraction(0),) * p.n, p.dirs)

    def index(self, p, q):
        """[p° : p° ∩ q°], which is 1 or infinite."""
        return 1 if all(in_span(d, q.dirs) for d in p.dirs) else INFINITE

    def coset_decompose(self, q, h):
        if not all(in_span(d, q.dirs) for d in h.dirs):
            raise PPError("subgroup is not contained in the pp-set's subgroup")
        if h.dirs != q.dirs:
            raise PPError("infinite index: cannot decompose into finitely many cosets")
        return [q]

    def band_key(self, p) -> str:
        return "dir:" + ";".join(",".join(_fmt(x) for x in r) for r in p.dirs)

    def product(self, p, q):
        dirs = [list(d) + [0] * q.n for d in p.dirs] + [[0] * p.n + list(d) for d in q.dirs]
        return make_subspace(p.base + q.base, dirs)

    def ambient(self, n: int):
        return AffineSubspace(n, (Fraction(0),) * n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def singleton(self, x):
        return AffineSubspace(len(x), tuple(_frac(v) for v in x), ())

    def parse_point(self, values) -> tuple:
        return tuple(_frac(v) for v in values)

    def apply_affine(self, p, a, b):
        """Image under x -> A x + b with A invertible."""
        img = lambda v: tuple(sum(_frac(aij) * vj for aij, vj in zip(row, v)) for row in a)
        return make_subspace(vadd(img(p.base), [_frac(x) for x in b]), [img(d) for d in p.dirs])

    def _generic_direction(self, p, avoid_dirs):
        """A direction of p outside every proper subspace listed (moment curve trial)."""
        c = 1
        while True:
            v = [sum(Fraction(c) ** i * d[k] for i, d in enumerate(p.dirs)) for k in range(p.n)]
            if not any(in_span(v, w) for w in avoid_dirs):
                return tuple(v)
            c += 1

    def pick_point_avoiding(self, p, avoid):
        meets = []
        for s in avoid:
            m = self.meet(p, s)
            if m is None:
                continue
            if m == p:
                raise CoveredError(f"{p!r} is contained in an avoided set")
            meets.append(m)
        if not meets:
            return p.base
        if p.dim == 0:
            raise CoveredError("point is avoided")
        v = self._generic_direction(p, [m.dirs for m in meets])
        # the line base + t v meets each avoided set in at most one point
        for t in parameter_sequence():
            x = tuple(b + t * vi for b, vi in zip(p.base, v))
            if not any(self.contains_point(m, x) for m in meets):
                return x

    def covers(self, p, sets) -> bool:
        return any(self.is_subset(p, s) for s in sets)

    # text and JSON
    def render(self, p) -> str:
        return repr(p)

    def describe(self, p) -> dict:
        return {"kind": "affine", "n": p.n, "point": [_fmt(x) for x in p.base],
                "directions": [[_fmt(x) for x in r] for r in p.dirs]}

    def from_descriptor(self, desc: dict):
        kind = desc.get("kind", "affine")
        if kind != "affine":
            raise PPError(f"descriptor kind {kind!r} does not match the affine backend")
        if "exists" in desc:
            ex = desc["exists"]
            r = [[_frac(x) for x in row] for row in ex["R"]]
            s = [[_frac(x) for x in row] for row in ex.get("S", [[]] * len(r))]
            out = self.pp_from_presentation(r, s, [_frac(x) for x in ex["c"]])
        elif "eq" in desc:
            n = int(desc["n"])
            rows = [[_frac(x) for x in row] for row in desc["eq"]]
            if any(len(row) != n + 1 for row in rows):
                raise PPError(f"each equation row needs {n + 1} entries")
            out = self.from_equations(n, rows)
        elif "point" in desc:
            base = [_frac(x) for x in desc["point"]]
            out = make_subspace(base, [[_frac(x) for x in r] for r in desc.get("directions", [])])
        else:
            raise PPError("affine descriptor needs 'eq', 'exists' or 'point'")
        if out is None:
            raise PPError("descriptor defines the empty set")
        if "n" in desc and out.n != int(desc["n"]):
            raise PPError("descriptor dimension mismatch")
        return out
