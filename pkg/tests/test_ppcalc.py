import itertools
import random

import pytest
from hypothesis import given, strategies as st

from modk0.backends import AffineBackend, LatticeBackend, make_coset, make_subspace
from modk0.checks import GOLDEN_WORKSPACE, check_pieces, check_tower
from modk0.generators import nonempty_definable, random_antichain, random_block, random_coset, random_definable
from modk0.oracles import brute_ev, brute_local_characteristic, grid_points, mobius_ev
from modk0.ppcalc import (Block, Cell, DefinableSet, PPError, Workspace, cell_decompose, closure, connected_pieces,
                          discrete_form, discrete_nest, evaluate, extend_linear, kappa, lambda_invariant,
                          local_characteristic, local_complex, meet_closure, minkowski_witness, singular_set,
                          tower_chain)
from modk0.simplicial import homology

seeds = st.integers(0, 10 ** 6)
AFF = AffineBackend()


def line(a, b, c):
    """{(x, y) : a x + b y = c}."""
    return AFF.from_equations(2, [[a, b, c]])


ORIGIN = AFF.singleton((0, 0))
XAXIS, YAXIS, PLANE = line(0, 1, 0), line(1, 0, 0), AFF.ambient(2)


def pp(p):
    return DefinableSet.from_pp(AFF, p)


def ev(d):
    return str(evaluate(d))


# -- Boolean structure ------------------------------------------------------------------

@given(seeds, st.sampled_from([1, 2]))
def test_boolean_operations_pointwise(seed, n):
    rng = random.Random(seed)
    a, b = random_definable(rng, AFF, n, 2), random_definable(rng, AFF, n, 2)
    ops = {"union": (a.union(b), lambda u, v: u or v), "inter": (a.intersection(b), lambda u, v: u and v),
           "diff": (a.difference(b), lambda u, v: u and not v)}
    for x in grid_points(n, radius=2):
        u, v = a.contains_point(x), b.contains_point(x)
        for d, op in ops.values():
            assert d.contains_point(x) == op(u, v)


@given(seeds)
def test_canonical_blocks_are_disjoint_and_cover(seed):
    rng = random.Random(seed)
    d = random_definable(rng, AFF, 2, 3)
    c = d.canonical()
    assert c.same_set(d)
    for x in grid_points(2, radius=2):
        hits = sum(1 for b in c.blocks if DefinableSet(AFF, 2, (b,)).contains_point(x))
        assert hits == int(d.contains_point(x))


@given(seeds)
def test_product_membership(seed):
    rng = random.Random(seed)
    a, b = random_definable(rng, AFF, 1, 2), random_definable(rng, AFF, 1, 2)
    p = a.product(b)
    vals = [g[0] for g in grid_points(1, 2)]
    for x, y in itertools.product(vals, repeat=2):
        assert p.contains_point((x, y)) == (a.contains_point((x,)) and b.contains_point((y,)))


def test_disjoint_union_and_points():
    pts = DefinableSet.from_points(AFF, [(0, 0), (1, 2), (0, 0)])
    assert len(pts.blocks) == 2
    with pytest.raises(PPError):
        pp(XAXIS).disjoint_union(pp(YAXIS))
    with pytest.raises(PPError):
        DefinableSet.from_points(AFF, [(0,), (1, 2)])
    with pytest.raises(PPError):
        pp(XAXIS).union(DefinableSet.from_points(AFF, [(1,)]))


def test_meet_closure_of_three_lines():
    third = line(1, -1, 0)
    elems = meet_closure(AFF, [XAXIS, YAXIS, third])
    assert set(elems) == {XAXIS, YAXIS, third, ORIGIN}


# -- local characteristics -------------------------------------------------------------

def test_local_complex_of_three_coordinate_planes_is_a_triangle_boundary():
    planes = [AFF.from_equations(3, [[int(i == j) for j in range(3)] + [0]]) for i in range(3)]
    origin = AFF.singleton((0, 0, 0))
    k = local_complex(AFF, planes, origin)
    assert str(homology(k)) == "H0=Z, H1=Z"
    assert local_characteristic(AFF, planes, origin) == -1


@given(seeds, st.sampled_from([2, 3]))
def test_local_characteristic_against_subset_enumeration(seed, n):
    rng = random.Random(seed)
    alpha = random_antichain(rng, AFF, n)
    for p in meet_closure(AFF, alpha):
        assert local_characteristic(AFF, alpha, p) == brute_local_characteristic(AFF, alpha, p)


def test_kappa_of_a_point_hole():
    d = pp(PLANE).difference(pp(ORIGIN))
    assert kappa(d, ORIGIN) == 1
    assert kappa(d, PLANE) == -1
    assert kappa(DefinableSet.empty(AFF, 2), ORIGIN) == 0


# -- evaluation ----------------------------------------------------------------------

def test_evaluation_goldens():
    assert ev(pp(ORIGIN)) == "1"
    assert ev(pp(XAXIS)) == "X"
    assert ev(pp(XAXIS).union(pp(YAXIS))) == "2X - 1"
    assert ev(pp(PLANE)) == "X^2"
    assert ev(pp(XAXIS).union(pp(YAXIS)).difference(pp(ORIGIN))) == "2X - 2"
    assert ev(pp(PLANE).difference(pp(XAXIS))) == "X^2 - X"
    assert ev(DefinableSet.from_points(AFF, [(0, 0), (1, 0), (5, 5)])) == "3"
    assert ev(DefinableSet.empty(AFF, 2)) == "0"


def test_singular_set_of_the_cross():
    assert set(singular_set(pp(XAXIS).union(pp(YAXIS)))) == {XAXIS, YAXIS, ORIGIN}


@given(seeds, st.sampled_from([1, 2, 3]))
def test_evaluation_matches_both_oracles(seed, n):
    d = random_definable(random.Random(seed), AFF, n, 3)
    v = evaluate(d).value
    assert v == mobius_ev(d) == brute_ev(d)


@given(seeds, st.sampled_from([1, 2]))
def test_evaluation_is_additive(seed, n):
    rng = random.Random(seed)
    a, b = random_definable(rng, AFF, n, 2), random_definable(rng, AFF, n, 2)
    lhs = evaluate(a.union(b)).value + evaluate(a.intersection(b)).value
    assert lhs == evaluate(a).value + evaluate(b).value


# -- the integers ---------------------------------------------------------------------

LAT = LatticeBackend()


def lat(offset, basis):
    return DefinableSet.from_pp(LAT, make_coset(offset, basis))


def test_integer_evaluations():
    z = lat([0], [[1]])
    assert str(evaluate(z)) == "0"
    assert str(evaluate(z.difference(DefinableSet.from_points(LAT, [(0,)])))) == "-1"
    assert str(evaluate(DefinableSet.from_points(LAT, [(0,), (1,), (5,)]))) == "3"
    both = lat([0], [[2]]).union(lat([0], [[3]]))
    img = evaluate(both)
    assert str(img.raw) == "4X"
    assert str(img) == "0"


def test_kappa_needs_a_member_of_the_discrete_nest():
    both = lat([0], [[2]]).union(lat([0], [[3]]))
    with pytest.raises(PPError):
        kappa(both, make_coset([0], [[1]]))
    assert kappa(both, make_coset([0], [[6]])) == -1


def test_discrete_form_golden():
    out = discrete_form(LAT, [[make_coset([0], [[2]]), make_coset([0], [[3]])]])
    assert set(out[0]) == {make_coset([k], [[6]]) for k in (0, 2, 3, 4)}


@given(seeds, st.sampled_from([1, 2]))
def test_integer_evaluation_matches_inclusion_exclusion(seed, n):
    rng = random.Random(seed)
    a = DefinableSet.from_antichain(LAT, [random_coset(rng, n, 6) for _ in range(rng.randint(1, 2))], n)
    b = DefinableSet.from_antichain(LAT, [random_coset(rng, n, 6) for _ in range(rng.randint(1, 2))], n)
    for d in (a, a.difference(b), a.union(b)):
        assert evaluate(d).raw == mobius_ev(d)


@given(seeds)
def test_discrete_nest_is_meet_closed(seed):
    rng = random.Random(seed)
    fam = [random_coset(rng, 1) for _ in range(3)]
    nest = discrete_nest(LAT, fam)
    for p in nest:
        for q in nest:
            m = LAT.meet(p, q)
            assert m is None or m in nest


# -- towers and connectivity -----------------------------------------------------------------

def test_cell_decomposition_goldens():
    axes = pp(XAXIS).union(pp(YAXIS)).difference(pp(ORIGIN))
    t = cell_decompose(axes)
    assert t.cells == (Cell(tuple(sorted((XAXIS, YAXIS), key=AFF.sort_key)), (ORIGIN,)),)
    assert tower_chain(t).length == 2
    nested = pp(PLANE).difference(pp(XAXIS)).union(pp(ORIGIN))
    t2 = cell_decompose(nested)
    assert t2.height == 2
    assert tower_chain(t2).height == 2 and tower_chain(t2).length == 3
    assert closure(nested) == (PLANE,)


@given(seeds, st.sampled_from([1, 2, 3]))
def test_tower_round_trips(seed, n):
    d = nonempty_definable(random.Random(seed), AFF, n, 3)
    assert check_tower(AFF, d) is True


def test_towers_need_infinite_indices():
    with pytest.raises(PPError):
        cell_decompose(lat([0], [[1]]))


def test_lambda_goldens():
    ws = Workspace.from_json(GOLDEN_WORKSPACE)
    assert str(lambda_invariant(ws.resolve("punctured_plane"))) == "1 (exact)"
    assert str(lambda_invariant(ws.resolve("punctured_axes"))) == "2 (exact)"
    assert str(lambda_invariant(DefinableSet.empty(AFF, 2))) == "0 (exact)"
    assert len(connected_pieces(ws.resolve("punctured_axes"))) == 2
    with pytest.raises(PPError):
        lambda_invariant(lat([0], [[1]]))


@given(seeds, st.sampled_from([2, 3]))
def test_connected_pieces(seed, n):
    d = nonempty_definable(random.Random(seed), AFF, n, 2)
    assert check_pieces(d) is True


# -- additive structure of blocks --------------------------------------------------------------

@given(seeds, st.sampled_from([1, 2, 3]))
def test_minkowski_witnesses(seed, n):
    rng = random.Random(seed)
    blk = random_block(rng, AFF, n)
    inside = DefinableSet(AFF, n, (blk,)).contains_point
    for d in AFF.sample_points(blk.top, 2) + [AFF.pick_point(h) for h in blk.holes]:
        x, y, z = minkowski_witness(AFF, blk, d)
        assert inside(x) and inside(y) and inside(z)
        assert tuple(a + b - c for a, b, c in zip(x, y, z)) == d


def test_minkowski_rejects_points_outside_the_closure():
    blk = Block(XAXIS, (ORIGIN,))
    with pytest.raises(PPError):
        minkowski_witness(AFF, blk, (0, 1))


def test_extension_of_maps_on_a_punctured_line():
    blk = Block(XAXIS, (ORIGIN,))
    ext = extend_linear(AFF, blk, lambda v: (2 * v[0] + 1, v[1]))
    assert ext((0, 0)) == (1, 0)
    with pytest.raises(PPError):
        extend_linear(AFF, blk, lambda v: (0, 0))
    with pytest.raises(PPError):
        extend_linear(AFF, blk, lambda v: (v[0] * v[0], v[0]))
