import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix as SymMatrix

from modk0.backends import AffineBackend, LatticeBackend, get_backend, make_coset, make_subspace
from modk0.generators import random_affine, random_coset, random_sublattice
from modk0.oracles import grid_points
from modk0.ppcalc import CoveredError, IndexTooLarge, PPError
from modk0.ppcalc.backend import INFINITE, vadd

seeds = st.integers(0, 10 ** 6)


def box(n, r):
    return itertools.product(range(-r, r + 1), repeat=n)


# -- affine subspaces over Q ----------------------------------------------------

def test_subspace_normal_form():
    a = make_subspace([1, 1], [[2, 2]])
    b = make_subspace([3, 3], [[-1, -1]])
    assert a == b
    assert repr(make_subspace([0, 0], [[0, 1]])) == "(0, 0) + <(0, 1)>"
    assert repr(make_subspace([0, 0], [])) == "{(0, 0)}"


@given(seeds, st.sampled_from([1, 2, 3]))
def test_affine_meet_and_subset_against_grid(seed, n):
    rng = random.Random(seed)
    be = AffineBackend()
    p, q = random_affine(rng, n), random_affine(rng, n)
    m = be.meet(p, q)
    for x in grid_points(n, radius=2, step=Fraction(1, 2)):
        both = be.contains_point(p, x) and be.contains_point(q, x)
        assert both == (m is not None and be.contains_point(m, x))
    # p lies in q exactly when its base point and base + each direction do
    probes = [p.base] + [vadd(p.base, d) for d in p.dirs]
    assert be.is_subset(p, q) == all(be.contains_point(q, x) for x in probes)


@given(seeds, st.sampled_from([2, 3]))
def test_equations_round_trip(seed, n):
    rng = random.Random(seed)
    be = AffineBackend()
    p = random_affine(rng, n)
    rows = [list(e) + [c] for e, c in be.equations(p)]
    assert be.from_equations(n, rows) == p
    assert be.from_descriptor(be.describe(p)) == p


@given(seeds, st.sampled_from([2, 3]))
def test_pick_point_avoiding(seed, n):
    rng = random.Random(seed)
    be = AffineBackend()
    p = random_affine(rng, n, rng.randint(1, n))
    avoid = [random_affine(rng, n) for _ in range(4)]
    if any(be.is_subset(p, a) for a in avoid):
        with pytest.raises(CoveredError):
            be.pick_point_avoiding(p, avoid)
        assert be.covers(p, avoid)
    else:
        x = be.pick_point_avoiding(p, avoid)
        assert be.contains_point(p, x)
        assert not any(be.contains_point(a, x) for a in avoid)
        assert not be.covers(p, avoid)


def test_projection_of_a_presentation():
    be = AffineBackend()
    # {x : exists y with x + y = 0 and y = 1}
    p = be.pp_from_presentation([[1], [0]], [[1], [1]], [0, -1])
    assert p == make_subspace([-1], [])
    # {x : exists y with x = y} is the whole line
    assert be.pp_from_presentation([[1]], [[-1]], [0]) == be.ambient(1)
    assert be.pp_from_presentation([[0]], [[0]], [1]) is None


def test_affine_descriptors():
    be = AffineBackend()
    line = be.from_descriptor({"kind": "affine", "n": 2, "eq": [[0, 1, 0]]})
    assert line == make_subspace([0, 0], [[1, 0]])
    assert be.from_descriptor({"point": [1, "1/2"], "directions": []}) == be.singleton((1, Fraction(1, 2)))
    with pytest.raises(PPError):
        be.from_descriptor({"n": 1, "eq": [[0, 1]]})
    with pytest.raises(PPError):
        be.from_descriptor({"kind": "lattice", "n": 1})
    with pytest.raises(PPError):
        be.from_descriptor({"n": 2, "eq": [[1, 0]]})


@given(seeds)
def test_affine_image(seed):
    rng = random.Random(seed)
    be = AffineBackend()
    p = random_affine(rng, 2)
    a, b = [[1, 2], [0, 1]], [3, -1]
    img = be.apply_affine(p, a, b)
    for x in be.sample_points(p, 3):
        y = tuple(sum(Fraction(c) * v for c, v in zip(row, x)) + bi for row, bi in zip(a, b))
        assert be.contains_point(img, y)
    assert img.dim == p.dim


def test_affine_index_is_one_or_infinite():
    be = AffineBackend()
    plane, line = be.ambient(2), make_subspace([0, 0], [[1, 0]])
    assert be.index(line, plane) == 1
    assert be.index(plane, line) == INFINITE
    assert be.coset_decompose(line, be.subgroup_part(line)) == [line]


# -- cosets in Z^n ------------------------------------------------------------------

def test_coset_normal_form_and_intersection():
    be = LatticeBackend()
    assert make_coset([5], [[2]]) == make_coset([1], [[-2]])
    six = be.meet(make_coset([0], [[2]]), make_coset([0], [[3]]))
    assert six == make_coset([0], [[6]])
    assert be.meet(make_coset([0], [[2]]), make_coset([1], [[4]])) is None


@given(seeds, st.sampled_from([1, 2]))
def test_lattice_meet_and_subset_against_box(seed, n):
    rng = random.Random(seed)
    be = LatticeBackend()
    p, q = random_coset(rng, n), random_coset(rng, n)
    m = be.meet(p, q)
    for x in box(n, 12 if n == 1 else 6):
        both = be.contains_point(p, x) and be.contains_point(q, x)
        assert both == (m is not None and be.contains_point(m, x))
    probes = [p.offset] + [vadd(p.offset, r) for r in p.basis]
    assert be.is_subset(p, q) == all(be.contains_point(q, x) for x in probes)


@given(seeds, st.sampled_from([1, 2]))
def test_index_matches_determinants(seed, n):
    rng = random.Random(seed)
    be = LatticeBackend()
    a, b = random_sublattice(rng, n), random_sublattice(rng, n)
    inter = be.meet(a, b)
    det = lambda c: abs(SymMatrix(c.basis).det())
    assert be.index(a, b) == det(inter) // det(a)
    assert len(be.coset_decompose(a, inter)) == be.index(a, b)


@given(seeds, st.sampled_from([1, 2]))
def test_coset_decomposition_partitions(seed, n):
    rng = random.Random(seed)
    be = LatticeBackend()
    q = random_coset(rng, n)
    h = be.meet(be.subgroup_part(q), random_sublattice(rng, n))
    if h.rank < q.rank:
        with pytest.raises(PPError):
            be.coset_decompose(q, h)
        return
    parts = be.coset_decompose(q, h)
    for x in box(n, 8 if n == 1 else 4):
        hits = sum(1 for c in parts if be.contains_point(c, x))
        assert hits == (1 if be.contains_point(q, x) else 0)


@given(seeds, st.sampled_from([1, 2]))
def test_covering_and_avoidance_agree(seed, n):
    rng = random.Random(seed)
    be = LatticeBackend()
    p = random_coset(rng, n)
    sets = [random_coset(rng, n) for _ in range(rng.randint(1, 4))]
    if be.covers(p, sets):
        for x in box(n, 8 if n == 1 else 4):
            if be.contains_point(p, x):
                assert any(be.contains_point(s, x) for s in sets)
        with pytest.raises(CoveredError):
            be.pick_point_avoiding(p, sets)
    else:
        x = be.pick_point_avoiding(p, sets)
        assert be.contains_point(p, x)
        assert not any(be.contains_point(s, x) for s in sets)


def test_neumann_covering_by_residues():
    be = LatticeBackend()
    z = be.ambient(1)
    assert be.covers(z, [make_coset([0], [[2]]), make_coset([1], [[2]])])
    assert not be.covers(z, [make_coset([0], [[2]]), make_coset([1], [[4]]), make_coset([3], [])])


def test_index_cap():
    be = LatticeBackend(index_cap=10)
    with pytest.raises(IndexTooLarge):
        be.coset_decompose(be.ambient(1), make_coset([0], [[11]]))


def test_lattice_descriptors_and_schema():
    be = LatticeBackend()
    c = be.from_descriptor({"kind": "lattice", "n": 2, "offset": [1, 0], "basis": [[2, 0], [0, 2]]})
    assert be.from_descriptor(be.describe(c)) == c
    assert be.k0().render() == "Z"
    with pytest.raises(PPError):
        be.apply_affine(c, [[2, 0], [0, 1]], [0, 0])


# -- names and presentation-only backends --------------------------------------------

def test_backend_names():
    assert get_backend("affine-q").name == "affine-q"
    assert get_backend("integer-z").name == "integer-z"
    assert get_backend("zp:5").k0().render() == "Z[X]/<4X>"
    assert get_backend("zp-sum:5,3").k0().render() == "Z[X]/<124X>"
    for bad in ("zp:4", "zp:x", "zp-sum:5", "real"):
        with pytest.raises(PPError):
            get_backend(bad)


def test_padic_backend_refuses_set_computations():
    be = get_backend("zp:3")
    with pytest.raises(PPError):
        be.meet(None, None)
    assert not hasattr(be, "__wrapped__")
