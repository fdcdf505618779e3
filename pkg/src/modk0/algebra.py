"""Semirings, rings of differences, monoid rings and presentations of K0."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import IntMatrix, snf


class AlgebraError(ValueError):
    pass


class UnsupportedSchema(AlgebraError):
    pass


# -- finite semirings --------------------------------------------------------

@dataclass(frozen=True)
class FiniteSemiring:
    """Commutative semiring on {0, ..., size-1} given by its operation tables."""

    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    labels: tuple | None = None

    @property
    def size(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(self.size)

    def label(self, a: int):
        return self.labels[a] if self.labels else a

    def validate(self):
        n = self.size
        e = range(n)
        for t in (self.add, self.mul):
            if len(t) != n or any(len(r) != n or any(not 0 <= x < n for x in r) for r in t):
                raise AlgebraError("operation table is not closed")
        a, m = self.add, self.mul
        for x in e:
            if a[self.zero][x] != x or m[self.one][x] != x or m[self.zero][x] != self.zero:
                raise AlgebraError("identity or absorption law fails")
            for y in e:
                if a[x][y] != a[y][x] or m[x][y] != m[y][x]:
                    raise AlgebraError("operations are not commutative")
                for z in e:
                    if a[a[x][y]][z] != a[x][a[y][z]] or m[m[x][y]][z] != m[x][m[y][z]]:
                        raise AlgebraError("operations are not associative")
                    if m[x][a[y][z]] != a[m[x][y]][m[x][z]]:
                        raise AlgebraError("multiplication does not distribute")
        return self

    def negation(self) -> list[int] | None:
        """Additive inverses when every element has one."""
        out = []
        for x in self.elements:
            y = next((y for y in self.elements if self.add[x][y] == self.zero), None)
            if y is None:
                return None
            out.append(y)
        return out

    def is_ring(self) -> bool:
        return self.negation() is not None

    def is_cancellative(self) -> bool:
        return all(len({self.add[x][c] for x in self.elements}) == self.size for c in self.elements)


def _classes(n: int, related: Callable[[int, int], bool]) -> list[int]:
    rep = list(range(n))
    for x in range(n):
        for y in range(x):
            if related(x, y):
                rep[x] = rep[y]
                break
    return rep


def _quotient_tables(s: FiniteSemiring, cls: list[int]):
    reps = sorted(set(cls))
    idx = {r: i for i, r in enumerate(reps)}
    q = [idx[cls[x]] for x in s.elements]
    add = tuple(tuple(q[s.add[a][b]] for b in reps) for a in reps)
    mul = tuple(tuple(q[s.mul[a][b]] for b in reps) for a in reps)
    return add, mul, q, reps


def cancellative_quotient(s: FiniteSemiring) -> tuple[FiniteSemiring, list[int]]:
    """Quotient by a ~ b iff a + c = b + c for some c, with the quotient map."""
    e = s.elements
    rel = lambda a, b: any(s.add[a][c] == s.add[b][c] for c in e)
    cls = _classes(s.size, rel)
    for a in e:
        for b in e:
            if (cls[a] == cls[b]) != rel(a, b):
                raise AlgebraError("cancellation relation is not transitive")
    add, mul, q, reps = _quotient_tables(s, cls)
    out = FiniteSemiring(add, mul, q[s.zero], q[s.one], tuple(s.label(r) for r in reps))
    return out.validate(), q


def ring_of_differences(s: FiniteSemiring) -> tuple[FiniteSemiring, list[int]]:
    """Pairs (a, b) modulo a + d = b + c, with the embedding a -> (a, 0).  Needs a cancellative input."""
    if not s.is_cancellative():
        raise AlgebraError("ring of differences needs a cancellative semiring")
    e = s.elements
    pairs = [(a, b) for a in e for b in e]
    same = lambda p, r: s.add[p[0]][r[1]] == s.add[p[1]][r[0]]
    cls = _classes(len(pairs), lambda i, j: same(pairs[i], pairs[j]))
    reps = sorted(set(cls))
    idx = {r: i for i, r in enumerate(reps)}
    pid = {p: idx[cls[i]] for i, p in enumerate(pairs)}

    def padd(p, r):
        return (s.add[p[0]][r[0]], s.add[p[1]][r[1]])

    def pmul(p, r):
        a, b = p
        c, d = r
        return (s.add[s.mul[a][c]][s.mul[b][d]], s.add[s.mul[a][d]][s.mul[b][c]])

    rp = [pairs[r] for r in reps]
    add = tuple(tuple(pid[padd(p, r)] for r in rp) for p in rp)
    mul = tuple(tuple(pid[pmul(p, r)] for r in rp) for p in rp)
    labels = tuple((s.label(a), s.label(b)) for a, b in rp)
    ring = FiniteSemiring(add, mul, pid[(s.zero, s.zero)], pid[(s.one, s.zero)], labels).validate()
    return ring, [pid[(a, s.zero)] for a in e]


def grothendieck_ring(s: FiniteSemiring) -> tuple[FiniteSemiring, list[int]]:
    """Universal ring under ``s``: ring of differences of the cancellative quotient."""
    q, qmap = cancellative_quotient(s)
    r, emb = ring_of_differences(q)
    return r, [emb[qmap[x]] for x in s.elements]


def is_homomorphism(f: Sequence[int], s: FiniteSemiring, t: FiniteSemiring) -> bool:
    if f[s.zero] != t.zero or f[s.one] != t.one:
        return False
    return all(f[s.add[a][b]] == t.add[f[a]][f[b]] and f[s.mul[a][b]] == t.mul[f[a]][f[b]]
               for a in s.elements for b in s.elements)


def homomorphisms(s: FiniteSemiring, t: FiniteSemiring) -> list[tuple[int, ...]]:
    free = [x for x in s.elements if x not in (s.zero, s.one)]
    out = []
    for vals in itertools.product(t.elements, repeat=len(free)):
        f = [0] * s.size
        f[s.zero], f[s.one] = t.zero, t.one
        if s.zero == s.one and t.zero != t.one:
            continue
        for x, y in zip(free, vals):
            f[x] = y
        if is_homomorphism(f, s, t):
            out.append(tuple(f))
    return out


def _assoc(t, n) -> bool:
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n))


def enumerate_semirings(n: int) -> list[FiniteSemiring]:
    """Every commutative semiring structure on {0..n-1} with 0 as zero and 1 as one (n=1: trivial)."""
    if n < 1:
        return []
    if n == 1:
        return [FiniteSemiring(((0,),), ((0,),), 0, 0)]
    rest = range(1, n)
    slots = [(a, b) for a in rest for b in rest if a <= b]
    adds = []
    for vals in itertools.product(range(n), repeat=len(slots)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = t[x][0] = x
        for (a, b), v in zip(slots, vals):
            t[a][b] = t[b][a] = v
        if _assoc(t, n):
            adds.append(t)
    others = range(2, n)
    mslots = [(a, b) for a in others for b in others if a <= b]
    out = []
    for vals in itertools.product(range(n), repeat=len(mslots)):
        m = [[0] * n for _ in range(n)]
        for x in range(n):
            m[1][x] = m[x][1] = x
        m[0] = [0] * n
        for x in range(n):
            m[x][0] = 0
        for (a, b), v in zip(mslots, vals):
            m[a][b] = m[b][a] = v
        if not _assoc(m, n):
            continue
        for a in adds:
            if all(m[x][a[y][z]] == a[m[x][y]][m[x][z]] for x in range(n) for y in range(n) for z in range(n)):
                out.append(FiniteSemiring(tuple(map(tuple, a)), tuple(map(tuple, m)), 0, 1))
    return out


# -- colour monoids and monoid rings ----------------------------------------

@dataclass(frozen=True)
class GradedMonoid:
    """The free commutative monoid N^m with keys like ``d:2`` (m = 1) or ``d:1,0`` (m = 2)."""

    prefix: str = "d"
    m: int = 1
    variables: tuple[str, ...] = ("X",)

    def key(self, exps) -> str:
        if isinstance(exps, int):
            exps = (exps,)
        if len(exps) != self.m or any(e < 0 for e in exps):
            raise AlgebraError(f"bad exponent vector {exps!r}")
        return f"{self.prefix}:" + ",".join(str(e) for e in exps)

    def exponents(self, key: str) -> tuple[int, ...]:
        try:
            pre, body = key.split(":", 1)
            exps = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise AlgebraError(f"unknown monomial key {key!r}") from None
        if pre != self.prefix or len(exps) != self.m or any(e < 0 for e in exps):
            raise AlgebraError(f"unknown monomial key {key!r}")
        return exps

    @property
    def unit(self) -> str:
        return self.key((0,) * self.m)

    def mul(self, a: str, b: str) -> str:
        return self.key(tuple(x + y for x, y in zip(self.exponents(a), self.exponents(b))))

    def divides(self, a: str, b: str) -> bool:
        return all(x <= y for x, y in zip(self.exponents(a), self.exponents(b)))

    def degree(self, key: str) -> int:
        return sum(self.exponents(key))

    def sort_key(self, key: str):
        e = self.exponents(key)
        return (-sum(e), tuple(-x for x in e))

    def render(self, key: str) -> str:
        parts = []
        for v, e in zip(self.variables, self.exponents(key)):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class MonoidRingElement:
    """Finitely supported integer combination of monomial keys."""

    monoid: GradedMonoid
    terms: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def make(monoid: GradedMonoid, coeffs: Mapping[str, int] | Iterable[tuple[str, int]]) -> "MonoidRingElement":
        acc: dict[str, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, c in items:
            monoid.exponents(k)
            acc[k] = acc.get(k, 0) + c
        return MonoidRingElement(monoid, tuple(sorted(((k, c) for k, c in acc.items() if c), key=lambda kc: monoid.sort_key(kc[0]))))

    @staticmethod
    def monomial(monoid: GradedMonoid, key: str, coeff: int = 1) -> "MonoidRingElement":
        return MonoidRingElement.make(monoid, {key: coeff})

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def coeff(self, key: str) -> int:
        return self.as_dict().get(key, 0)

    def _check(self, other):
        if not isinstance(other, MonoidRingElement):
            return NotImplemented
        if other.monoid != self.monoid:
            raise AlgebraError("elements of different monoid rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return MonoidRingElement.make(self.monoid, list(self.terms) + list(other.terms))

    def __neg__(self):
        return MonoidRingElement(self.monoid, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MonoidRingElement.make(self.monoid, [(k, c * other) for k, c in self.terms])
        other = self._check(other)
        if other is NotImplemented:
            return other
        m = self.monoid
        return MonoidRingElement.make(m, [(m.mul(a, b), x * y) for a, x in self.terms for b, y in other.terms])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for i, (k, c) in enumerate(self.terms):
            mono = self.monoid.render(k)
            mag = abs(c)
            body = (str(mag) if (mag != 1 or not mono) else "") + mono
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def mr_add(x: MonoidRingElement, y: MonoidRingElement) -> MonoidRingElement:
    return x + y


def mr_mul(x: MonoidRingElement, y: MonoidRingElement) -> MonoidRingElement:
    return x * y


# -- relations and presentations ---------------------------------------------

@dataclass(frozen=True)
class IndexRelation:
    """The relation upper = index * lower between colour keys."""

    upper: str
    lower: str
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise AlgebraError("relation index must be positive")

    @property
    def homogeneous(self) -> bool:
        return self.upper == self.lower


def _moduli(monoid: GradedMonoid, relations: Sequence[IndexRelation], key: str) -> int:
    g = 0
    for r in relations:
        if monoid.divides(r.upper, key):
            g = gcd(g, r.index - 1)
    return g


def normal_form(x: MonoidRingElement, relations: Sequence[IndexRelation]) -> MonoidRingElement:
    """Canonical representative modulo the ideal of the relations (homogeneous schemas only).

    Every generator (k-1)·g·m of the ideal is a single monomial, so the ideal
    is a direct sum over monomials h of gcd{k-1 : g divides h}·h.
    """
    for r in relations:
        if not r.homogeneous:
            raise UnsupportedSchema("unsupported schema: relation between different colours")
    out = []
    for k, c in x.terms:
        m = _moduli(x.monoid, relations, k)
        out.append((k, c % m if m else c))
    return MonoidRingElement.make(x.monoid, out)


@dataclass(frozen=True)
class ColourClassGroup:
    """Cokernel of the relation matrix, described by its Smith invariants."""

    generators: tuple[str, ...]
    relation_matrix: IntMatrix
    invariant_factors: tuple[int, ...]
    free_rank: int
    _v: IntMatrix = field(repr=False, compare=False)

    def coordinates(self, vector: Mapping[str, int]) -> tuple[int, ...]:
        """Canonical coordinates of an element given on the generators."""
        v = [vector.get(g, 0) for g in self.generators]
        w = [sum(v[i] * self._v.rows[i][j] for i in range(len(v))) for j in range(len(v))]
        nf = len(self.invariant_factors)
        out = [w[i] % d for i, d in enumerate(self.invariant_factors)] + w[nf:]
        return tuple(out)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors if d > 1]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def colour_class_group(generators: Sequence[str], relations: Sequence[IndexRelation]) -> ColourClassGroup:
    gens = tuple(generators)
    pos = {g: i for i, g in enumerate(gens)}
    rows = []
    for r in relations:
        if r.upper not in pos or r.lower not in pos:
            raise AlgebraError(f"relation {r} mentions a colour outside the class")
        row = [0] * len(gens)
        row[pos[r.upper]] += 1
        row[pos[r.lower]] -= r.index
        rows.append(row)
    m = IntMatrix(rows, len(gens))
    res = snf(m)
    inv = tuple(x for x in res.d if x)
    return ColourClassGroup(gens, m, inv, len(gens) - len(inv), res.v)


@dataclass(frozen=True)
class K0Presentation:
    """Z[monoid] modulo the ideal generated by the index relations."""

    monoid: GradedMonoid
    relations: tuple[IndexRelation, ...]
    name: str = ""
    note: str = ""

    @property
    def homogeneous(self) -> bool:
        return all(r.homogeneous for r in self.relations)

    def reduce(self, x: MonoidRingElement) -> MonoidRingElement:
        return normal_form(x, self.relations)

    def element(self, coeffs: Mapping[str, int]) -> MonoidRingElement:
        return MonoidRingElement.make(self.monoid, coeffs)

    def ideal_generators(self) -> list[MonoidRingElement]:
        """Minimal generators d·X^i of the ideal (one-variable monoids)."""
        if self.monoid.m != 1:
            gens = {}
            for r in self.relations:
                if r.index != 1:
                    gens[r.upper] = gcd(gens.get(r.upper, 0), r.index - 1)
            return [MonoidRingElement.monomial(self.monoid, k, d) for k, d in gens.items() if d]
        top = max((self.monoid.degree(r.upper) for r in self.relations), default=-1)
        out, prev = [], 0
        for i in range(top + 1):
            d = _moduli(self.monoid, self.relations, self.monoid.key(i))
            if d != prev:
                out.append(MonoidRingElement.monomial(self.monoid, self.monoid.key(i), d))
                prev = d
        return out

    def ideal_contains(self, x: MonoidRingElement) -> bool:
        return self.reduce(x).is_zero()

    def ideal_contains_ideal(self, other: "K0Presentation") -> bool:
        return all(self.ideal_contains(g) for g in other.ideal_generators())

    def invariant_factors(self) -> dict[str, int]:
        if self.monoid.m != 1:
            return {}
        top = max((self.monoid.degree(r.upper) for r in self.relations), default=0)
        return {self.monoid.key(i): _moduli(self.monoid, self.relations, self.monoid.key(i)) for i in range(top + 1)}

    def render(self) -> str:
        gens = self.ideal_generators()
        ring = "Z[" + ",".join(self.monoid.variables) + "]"
        if not gens:
            return ring
        unit_var = [MonoidRingElement.monomial(self.monoid, self.monoid.key(1))] if self.monoid.m == 1 else None
        if unit_var is not None and gens == unit_var:
            return "Z"
        return ring + "/<" + ", ".join(str(g) for g in gens) + ">"

    def to_json(self) -> dict:
        return {
            "ring": self.render(),
            "generators": list(self.monoid.variables),
            "relations": [{"upper": r.upper, "lower": r.lower, "index": r.index} for r in self.relations],
            "ideal_generators": [str(g) for g in self.ideal_generators()],
            "invariant_factors": self.invariant_factors(),
            "note": self.note,
        }


def k0_presentation(monoid: GradedMonoid, relations: Iterable[IndexRelation], name: str = "", note: str = "") -> K0Presentation:
    rel = tuple(r for r in relations if r.index != 1)
    return K0Presentation(monoid, rel, name, note)
