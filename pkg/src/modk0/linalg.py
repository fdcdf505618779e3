"""Exact integer and rational matrix routines.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere.  Matrices are small immutable row-major containers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class Matrix:
    """Immutable row-major matrix.  ``ncols`` is kept even when there are no rows."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(self._coerce(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols must be given for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"ragged row of length {len(r)}, expected {ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @staticmethod
    def _coerce(x):
        return x

    @classmethod
    def zeros(cls, r: int, c: int):
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def transpose(self):
        return type(self)([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    T = property(transpose)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: "Matrix"):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
        kind = type(self) if type(self) is type(other) else RatMatrix
        return kind(out, other.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"{type(self).__name__}({[list(r) for r in self.rows]!r}, ncols={self.ncols})"


class IntMatrix(Matrix):
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x)
            raise TypeError(f"integer entry expected, got {x!r}")
        return x


class RatMatrix(Matrix):
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        return Fraction(x)


@dataclass(frozen=True)
class SnfResult:
    """``u @ m @ v`` is the diagonal matrix with entries ``d``."""

    d: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + rowspan(kernel)`` of a linear system."""

    particular: tuple[Fraction, ...]
    kernel: RatMatrix


# -- Smith normal form -------------------------------------------------------

def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _row_axpy(a, dst, src, q):
    # row[dst] -= q * row[src]
    rs, rd = a[src], a[dst]
    for k, x in enumerate(rs):
        if x:
            rd[k] -= q * x


def _col_axpy(a, dst, src, q):
    for r in a:
        if r[src]:
            r[dst] -= q * r[src]


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms, pivoting on least absolute value."""
    a = m.tolist()
    r, c = m.nrows, m.ncols
    u = IntMatrix.identity(r).tolist()
    v = IntMatrix.identity(c).tolist()
    t = 0
    while t < min(r, c):
        piv = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (piv is None or abs(x) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        _swap_rows(a, t, piv[0]); _swap_rows(u, t, piv[0])
        _swap_cols(a, t, piv[1]); _swap_cols(v, t, piv[1])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // p
                    _row_axpy(a, i, t, q); _row_axpy(u, i, t, q)
                    clean = clean and not a[i][t]
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    _col_axpy(a, j, t, q); _col_axpy(v, j, t, q)
                    clean = clean and not a[t][j]
            if not clean:
                # a remainder smaller than the pivot survived: make it the pivot
                best, where = abs(p), None
                for i in range(t + 1, r):
                    if a[i][t] and abs(a[i][t]) < best:
                        best, where = abs(a[i][t]), ("r", i)
                for j in range(t + 1, c):
                    if a[t][j] and abs(a[t][j]) < best:
                        best, where = abs(a[t][j]), ("c", j)
                if where is not None:
                    if where[0] == "r":
                        _swap_rows(a, t, where[1]); _swap_rows(u, t, where[1])
                    else:
                        _swap_cols(a, t, where[1]); _swap_cols(v, t, where[1])
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into the pivot row; the next pass shrinks the pivot
            for k in range(c):
                a[t][k] += a[bad[0]][k]
            for k in range(r):
                u[t][k] += u[bad[0]][k]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = tuple(a[i][i] for i in range(min(r, c)))
    return SnfResult(d, IntMatrix(u, r), IntMatrix(v, c))


def smith_invariants(m: IntMatrix) -> list[int]:
    """Nonzero Smith invariants of ``m``, without transforms.

    Unit pivots are eliminated on a sparse copy first (boundary matrices are
    mostly made of them); whatever is left goes through the dense routine.
    """
    rows = {i: {j: x for j, x in enumerate(r) if x} for i, r in enumerate(m.rows)}
    rows = {i: r for i, r in rows.items() if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols):
            cand = [i for i in cols.get(j, ()) if abs(rows[i][j]) == 1]
            if not cand:
                continue
            i0 = min(cand, key=lambda i: (len(rows[i]), i))
            prow = rows.pop(i0)
            s = prow[j]
            for k in prow:
                cols[k].discard(i0)
            for i in list(cols[j]):
                row = rows[i]
                q = row[j] * s
                for k, x in prow.items():
                    y = row.get(k, 0) - q * x
                    if y:
                        if k not in row:
                            cols[k].add(i)
                        row[k] = y
                    elif k in row:
                        del row[k]
                        cols[k].discard(i)
                if not row:
                    del rows[i]
            for k in [k for k, s_ in cols.items() if not s_]:
                del cols[k]
            units += 1
            progress = True
    out = [1] * units
    if rows:
        rid = sorted(rows)
        cid = sorted(cols)
        dense = IntMatrix([[rows[i].get(j, 0) for j in cid] for i in rid], len(cid))
        out += [x for x in snf(dense).d if x]
    return sorted(out)


def rank_int(m: IntMatrix) -> int:
    return len(smith_invariants(m))


# -- Hermite normal form -----------------------------------------------------

def _hnf(rows: list[list[int]], ncols: int, track: bool):
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    pr = 0
    for col in range(ncols):
        if pr >= m:
            break
        if all(a[i][col] == 0 for i in range(pr, m)):
            continue
        while True:
            nz = [i for i in range(pr, m) if a[i][col]]
            i0 = min(nz, key=lambda i: (abs(a[i][col]), i))
            if i0 != pr:
                _swap_rows(a, pr, i0)
                if track:
                    _swap_rows(u, pr, i0)
            clean = True
            for i in range(pr + 1, m):
                if a[i][col]:
                    q = a[i][col] // a[pr][col]
                    _row_axpy(a, i, pr, q)
                    if track:
                        _row_axpy(u, i, pr, q)
                    clean = clean and not a[i][col]
            if clean:
                break
        if a[pr][col] < 0:
            a[pr] = [-x for x in a[pr]]
            if track:
                u[pr] = [-x for x in u[pr]]
        p = a[pr][col]
        for i in range(pr):
            q = a[i][col] // p
            if q:
                _row_axpy(a, i, pr, q)
                if track:
                    _row_axpy(u, i, pr, q)
        pr += 1
    return a, u


def hnf(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form (same shape, zero rows last)."""
    a, _ = _hnf(m.tolist(), m.ncols, False)
    return IntMatrix(a, m.ncols)


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Return ``(h, u)`` with ``u`` unimodular and ``u @ m == h``."""
    a, u = _hnf(m.tolist(), m.ncols, True)
    return IntMatrix(a, m.ncols), IntMatrix(u, m.nrows)


def lattice_basis(vectors: Iterable[Sequence[int]], n: int) -> IntMatrix:
    """Canonical (HNF, nonzero rows) basis of the subgroup generated by ``vectors``."""
    h = hnf(IntMatrix(list(vectors), n))
    return IntMatrix([r for r in h.rows if any(r)], n)


def lattice_intersect(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Canonical basis of rowspan_Z(a) ∩ rowspan_Z(b)."""
    if a.ncols != b.ncols:
        raise ValueError("ambient dimensions differ")
    n = a.ncols
    if a.nrows == 0 or b.nrows == 0:
        return IntMatrix([], n)
    h, u = hnf_with_transform(IntMatrix(a.rows + b.rows, n))
    vecs = []
    for hr, ur in zip(h.rows, u.rows):
        if not any(hr):
            coeffs = ur[: a.nrows]
            vecs.append([sum(c * a.rows[t][k] for t, c in enumerate(coeffs)) for k in range(n)])
    return lattice_basis(vecs, n)


def reduce_mod_lattice(v: Sequence[int], basis: IntMatrix) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo a lattice given by its HNF basis."""
    v = list(v)
    for row in basis.rows:
        col = next(k for k, x in enumerate(row) if x)
        q = v[col] // row[col]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def integer_solve(a: IntMatrix, b: Sequence[int]) -> tuple[tuple[int, ...], IntMatrix] | None:
    """Integer solutions of ``a z = b``: a particular solution and a kernel basis, or None."""
    if len(b) != a.nrows:
        raise ValueError("right-hand side has wrong length")
    res = snf(a)
    ub = [sum(x * y for x, y in zip(row, b)) for row in res.u.rows]
    c = a.ncols
    w = [0] * c
    for i, di in enumerate(res.d):
        if di:
            if ub[i] % di:
                return None
            w[i] = ub[i] // di
        elif ub[i]:
            return None
    for i in range(len(res.d), a.nrows):
        if ub[i]:
            return None
    z = tuple(sum(res.v.rows[k][i] * w[i] for i in range(c)) for k in range(c))
    kern = [res.v.column(i) for i in range(res.rank, c)]
    return z, lattice_basis(kern, c)


def express_in_basis(v: Sequence[int], basis: IntMatrix) -> tuple[int, ...] | None:
    """Integer coefficients ``x`` with ``x @ basis == v``, or None when ``v`` is outside the lattice."""
    sol = integer_solve(basis.transpose(), list(v))
    return None if sol is None else sol[0]


# -- rational routines -------------------------------------------------------

def rref(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Nonzero rows of the reduced row echelon form."""
    a = [[Fraction(x) for x in r] for r in rows]
    pr = 0
    for col in range(ncols):
        piv = next((i for i in range(pr, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[pr], a[piv] = a[piv], a[pr]
        p = a[pr][col]
        a[pr] = [x / p for x in a[pr]]
        for i in range(len(a)):
            if i != pr and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[pr])]
        pr += 1
    return a[:pr]


def pivot_columns(rrows: Sequence[Sequence]) -> list[int]:
    return [next(k for k, x in enumerate(r) if x) for r in rrows]


def rank_rat(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols))


def solve_rational(a: Matrix, b: Sequence) -> AffineSolution | None:
    """Solve ``a x = b`` over Q.  The kernel basis is returned in RREF."""
    n = a.ncols
    if len(b) != a.nrows:
        raise ValueError("right-hand side has wrong length")
    aug = rref([list(r) + [bi] for r, bi in zip(a.rows, b)], n + 1)
    pivots = pivot_columns(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(aug, pivots):
        x[p] = row[n]
    free = [k for k in range(n) if k not in pivots]
    kern = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for row, p in zip(aug, pivots):
            vec[p] = -row[f]
        kern.append(vec)
    return AffineSolution(tuple(x), RatMatrix(rref(kern, n), n))


def kernel_rational(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """RREF basis of {x : rows · x = 0}."""
    sol = solve_rational(RatMatrix(rows, ncols), [0] * len(rows))
    return [list(r) for r in sol.kernel.rows]


def in_span(v: Sequence, rrows: Sequence[Sequence]) -> bool:
    """Whether ``v`` lies in the rational row span of an RREF basis."""
    v = [Fraction(x) for x in v]
    for row, p in zip(rrows, pivot_columns(rrows)):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return not any(v)


def det(m: Matrix) -> Fraction:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in r] for r in m.rows]
    n = m.nrows
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        p = a[col][col]
        out *= p
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return out


def inverse(m: Matrix) -> RatMatrix:
    n = m.nrows
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    aug = rref([list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)], 2 * n)
    if len(aug) < n or pivot_columns(aug) != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix([r[n:] for r in aug], n)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    inv = inverse(m)
    if any(x.denominator != 1 for r in inv.rows for x in r):
        raise ValueError("matrix is not unimodular")
    return IntMatrix([[int(x) for x in r] for r in inv.rows], m.ncols)
