from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix as SymMatrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from modk0.linalg import (IntMatrix, RatMatrix, det, express_in_basis, hnf, hnf_with_transform, in_span,
                          integer_solve, inverse, kernel_rational, lattice_basis, lattice_intersect, rank_int,
                          rank_rat, reduce_mod_lattice, rref, smith_invariants, snf, solve_rational,
                          unimodular_inverse)
from modk0.oracles import determinantal_divisors

small = st.integers(-6, 6)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return IntMatrix([[draw(small) for _ in range(c)] for _ in range(r)], c)


def diag(d, r, c):
    return IntMatrix([[d[i] if i == j and i < len(d) else 0 for j in range(c)] for i in range(r)], c)


def sympy_invariants(m):
    if m.nrows == 0:
        return []
    s = smith_normal_form(SymMatrix(m.tolist()), domain=ZZ)
    return sorted(abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0)


def test_snf_small_goldens():
    assert snf(IntMatrix([[2, 0], [0, 3]])).d == (1, 6)
    assert snf(IntMatrix([[0, 0], [0, 0]])).d == (0, 0)
    assert snf(IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])).d == (2, 6, 12)


@given(int_matrices())
def test_snf_transforms_and_divisibility(m):
    res = snf(m)
    r, c = m.shape
    assert res.u @ m @ res.v == diag(res.d, r, c)
    assert abs(det(res.u)) == 1 and abs(det(res.v)) == 1
    nz = [x for x in res.d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert list(res.d[len(nz):]) == [0] * (len(res.d) - len(nz))


@given(int_matrices(3, 3))
def test_snf_matches_determinantal_divisors(m):
    dd = [x for x in determinantal_divisors(m) if x]
    assert [x for x in snf(m).d if x] == dd


@given(int_matrices(5, 5))
def test_invariants_agree_with_sympy(m):
    assert sorted(smith_invariants(m)) == sympy_invariants(m)
    assert rank_int(m) == (SymMatrix(m.tolist()).rank() if m.nrows else 0)


def test_sparse_invariants_on_boundary_like_matrix():
    m = IntMatrix([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    assert smith_invariants(m) == [1, 1]


@given(int_matrices())
def test_hnf_rowspan_and_shape(m):
    h, t = hnf_with_transform(m)
    assert t @ m == h
    assert abs(det(t)) == 1
    rows = [r for r in h.rows if any(r)]
    leads = [next(k for k, x in enumerate(r) if x) for r in rows]
    assert leads == sorted(set(leads))
    for r, k in zip(rows, leads):
        assert r[k] > 0
    for i, k in enumerate(leads):
        for j in range(i):
            assert 0 <= rows[j][k] < rows[i][k]


def test_hnf_golden():
    assert hnf(IntMatrix([[2], [3]])).rows[0] == (1,)


def test_lattice_intersection_golden():
    two, three = lattice_basis([[2]], 1), lattice_basis([[3]], 1)
    assert lattice_intersect(two, three).rows == ((6,),)


@given(int_matrices(3, 2), int_matrices(3, 2))
def test_lattice_intersection_membership(a, b):
    if a.ncols != b.ncols:
        return
    n = a.ncols
    la, lb = lattice_basis(a.rows, n), lattice_basis(b.rows, n)
    inter = lattice_intersect(la, lb)
    for r in inter.rows:
        assert express_in_basis(r, la) is not None
        assert express_in_basis(r, lb) is not None
    # a vector in both lattices lies in the intersection
    for x in range(-4, 5):
        for y in range(-4, 5) if n == 2 else [None]:
            v = (x,) if y is None else (x, y)
            both = (not any(reduce_mod_lattice(v, la))) and (not any(reduce_mod_lattice(v, lb)))
            assert both == (not any(reduce_mod_lattice(v, inter)))


@given(int_matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_integer_solve(a, z0):
    z0 = z0[: a.ncols]
    b = [sum(x * y for x, y in zip(row, z0)) for row in a.rows]
    sol = integer_solve(a, b)
    assert sol is not None
    z, kern = sol
    assert [sum(x * y for x, y in zip(row, z)) for row in a.rows] == b
    for k in kern.rows:
        assert not any(sum(x * y for x, y in zip(row, k)) for row in a.rows)
    assert kern.nrows == a.ncols - rank_int(a)


def test_integer_solve_infeasible():
    assert integer_solve(IntMatrix([[2]]), [1]) is None


def test_rational_solve_line():
    sol = solve_rational(RatMatrix([[1, 1]]), [1])
    x, y = sol.particular
    assert x + y == 1
    assert len(sol.kernel.rows) == 1


@given(int_matrices(4, 4))
def test_rref_and_kernel(m):
    rows = m.tolist()
    r = rref(rows, m.ncols)
    assert len(r) == rank_rat(rows, m.ncols)
    for k in kernel_rational(rows, m.ncols):
        assert all(sum(Fraction(x) * y for x, y in zip(row, k)) == 0 for row in rows)
    for row in rows:
        assert in_span(row, r)
    assert len(kernel_rational(rows, m.ncols)) + len(r) == m.ncols


@given(int_matrices(3, 3))
def test_det_and_inverse(m):
    if m.nrows != m.ncols or m.nrows == 0:
        return
    d = det(m)
    assert d == SymMatrix(m.tolist()).det()
    if d:
        inv = inverse(m)
        assert RatMatrix(m.rows) @ inv == RatMatrix.identity(m.nrows)


def test_unimodular_inverse_rejects_singular():
    u = IntMatrix([[2, 1], [1, 1]])
    assert unimodular_inverse(u) @ u == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMatrix([[2, 0], [0, 1]]))
