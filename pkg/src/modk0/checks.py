"""Named check suites: fixed goldens and seeded randomized property checks.

Each suite returns a SuiteResult; a failing case is shrunk when the suite
knows how, and reported in the input format so it can be replayed.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable

from . import generators as gen
from .algebra import (IndexRelation, MonoidRingElement, enumerate_semirings, grothendieck_ring, homomorphisms,
                      is_homomorphism, k0_presentation)
from .backends import AffineBackend, LatticeBackend, get_backend
from .oracles import brute_ev, mobius_ev
from .ppcalc import (Block, Cell, DefinableSet, PrecChain, Workspace, antichain_join, antichain_meet,
                     cell_decompose, chain_to_tower, connected_pieces, discrete_form, evaluate, extend_linear, kappa_blocks,
                     lambda_invariant, local_characteristic, meet_closure, minkowski_witness, precedes,
                     tower_chain)
from .ppcalc.backend import vadd, vsub
from .ppcalc.linear import block_samples, difference_witness
from .simplicial import (ProductTooLarge, chain_complex, cone, disjunctive_face_count, disjunctive_product,
                         euler_char, format_complex, fresh_vertex, homology, homology_of_chain, make_complex,
                         product_face_count, relative_homology, simplicial_product, tensor_chain)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.passed == self.cases

    def line(self) -> str:
        # no timings here: reports must be byte-identical for a fixed seed
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} {self.passed}/{self.cases}"

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "cases": self.cases, "passed": self.passed,
                "failures": self.failures}


def _shrink(inst, smaller: Callable, fails: Callable, rounds: int = 50):
    for _ in range(rounds):
        for cand in smaller(inst):
            if fails(cand):
                inst = cand
                break
        else:
            return inst
    return inst


def _run(name: str, rng: random.Random, cases: int, make: Callable, prop: Callable,
         show: Callable = repr, smaller: Callable | None = None, keep: int = 5) -> SuiteResult:
    res = SuiteResult(name)
    start = time.perf_counter()

    def fails(inst):
        try:
            return prop(inst) is not True
        except Exception:
            return True

    for _ in range(cases):
        inst = make(rng)
        try:
            verdict = prop(inst)
        except Exception as exc:  # a crash is a failure with its message
            verdict = f"{type(exc).__name__}: {exc}"
        res.cases += 1
        if verdict is True:
            res.passed += 1
            continue
        if len(res.failures) < keep:
            if smaller is not None:
                inst = _shrink(inst, smaller, fails)
                try:
                    verdict = prop(inst)
                except Exception as exc:
                    verdict = f"{type(exc).__name__}: {exc}"
            res.failures.append({"instance": show(inst), "reason": str(verdict)})
    res.seconds = time.perf_counter() - start
    return res


def _fixed(name: str, checks: list[tuple[str, Callable]]) -> SuiteResult:
    res = SuiteResult(name)
    start = time.perf_counter()
    for label, fn in checks:
        res.cases += 1
        try:
            verdict = fn()
        except Exception as exc:
            verdict = f"{type(exc).__name__}: {exc}"
        if verdict is True:
            res.passed += 1
        else:
            res.failures.append({"instance": label, "reason": str(verdict)})
    res.seconds = time.perf_counter() - start
    return res


def _expect(actual, expected):
    return True if actual == expected else f"got {actual!r}, expected {expected!r}"


# -- simplicial suites ------------------------------------------------------------

def suite_homology(rng=None, cases=0, budget=None) -> SuiteResult:
    k = make_complex([[1, 2], [2, 3]])
    q = make_complex([[1], [3]])
    bd = make_complex([[1, 2], [2, 3], [1, 3]])
    seg = make_complex([["a", "b"]])
    t = tensor_chain(chain_complex(bd), chain_complex(seg))
    return _fixed("homology", [
        ("H(path)", lambda: _expect(str(homology(k)), "H0=Z")),
        ("H(two points)", lambda: _expect(str(homology(q)), "H0=Z^2")),
        ("H(path, endpoints)", lambda: _expect(str(relative_homology(k, q)), "H1=Z")),
        ("H(path with cone on endpoints)", lambda: _expect(str(homology(cone(k, q, "c"))), "H0=Z, H1=Z")),
        ("tensor ranks", lambda: _expect(t.ranks, (6, 9, 3))),
        ("H(tensor)", lambda: _expect(str(homology_of_chain(t)), "H0=Z, H1=Z")),
        ("H(product) = H(tensor)", lambda: _expect(homology(simplicial_product(bd, seg)), homology_of_chain(t))),
    ])


def _pair_smaller(pair):
    k, q = pair[:2]
    for which in (0, 1):
        c = (k, q)[which]
        for f in c.maximal_faces:
            rest = make_complex([g for g in c.maximal_faces if g != f])
            yield (rest, q) + pair[2:] if which == 0 else (k, rest) + pair[2:]


def _show_pair(pair):
    return "K:\n" + format_complex(pair[0]) + "Q:\n" + format_complex(pair[1])


def suite_chi_cone(rng, cases=500, budget=None) -> SuiteResult:
    def make(r):
        k = gen.random_complex(r, r.randint(0, 8), max_dim=3, max_faces=5)
        return (k, gen.random_subcomplex(r, k))

    def prop(pair):
        k, q = pair
        if not q.is_subcomplex_of(k):
            return True
        c = cone(k, q, fresh_vertex(k))
        if euler_char(c) + euler_char(q) != euler_char(k) + 1:
            return f"chi(cone)={euler_char(c)} chi(Q)={euler_char(q)} chi(K)={euler_char(k)}"
        if euler_char(c) != homology(c).euler_char():
            return "Euler characteristic differs from the alternating Betti sum"
        return True

    def smaller(pair):
        k, q = pair
        for f in q.maximal_faces:
            yield (k, make_complex([g for g in q.maximal_faces if g != f]))
        for f in k.maximal_faces:
            k2 = make_complex([g for g in k.maximal_faces if g != f])
            if q.is_subcomplex_of(k2):
                yield (k2, q)

    return _run("chi-cone", rng, cases, make, prop, _show_pair, smaller)


def _small_pair(r, cap, counter):
    while True:
        a = r.randint(1, 7)
        b = r.randint(1, 8 - a)
        k = gen.random_complex(r, a, max_dim=2, max_faces=3)
        q = gen.random_complex(r, b, max_dim=2, max_faces=3)
        if counter(k, q) <= cap:
            return (k, q)


def suite_chi_disjunctive(rng, cases=500, budget=None) -> SuiteResult:
    cap = budget or 2048

    def prop(pair):
        k, q = pair
        p = disjunctive_product(k, q, cap=4096)
        ck, cq = euler_char(k), euler_char(q)
        return _expect(euler_char(p), ck + cq - ck * cq)

    return _run("chi-disjunctive", rng, cases, lambda r: _small_pair(r, cap, disjunctive_face_count), prop,
                _show_pair, _pair_smaller)


def suite_chi_product(rng, cases=500, budget=None) -> SuiteResult:
    cap = budget or 600

    def prop(pair):
        k, q = pair
        p = simplicial_product(k, q, cap=4096)
        if euler_char(p) != euler_char(k) * euler_char(q):
            return f"chi(product)={euler_char(p)} but chi(K)chi(Q)={euler_char(k) * euler_char(q)}"
        return _expect(homology(p), homology_of_chain(tensor_chain(chain_complex(k), chain_complex(q))))

    return _run("chi-product", rng, cases, lambda r: _small_pair(r, cap, product_face_count), prop,
                _show_pair, _pair_smaller)


# -- K0 suites ---------------------------------------------------------------------

def suite_k0(rng=None, cases=0, budget=None) -> SuiteResult:
    checks = [
        ("affine-q", lambda: _expect(get_backend("affine-q").k0().render(), "Z[X]")),
        ("integer-z", lambda: _expect(get_backend("integer-z").k0().render(), "Z")),
        ("zp:5", lambda: _expect(get_backend("zp:5").k0().render(), "Z[X]/<4X>")),
    ]
    for p in (2, 3, 5, 7, 11):
        pres = get_backend(f"zp:{p}").k0()
        m = pres.monoid
        checks.append((f"zp:{p}", lambda pres=pres, m=m, p=p: _expect(
            [str(g) for g in pres.ideal_generators()], [str(MonoidRingElement.monomial(m, m.key(1), p - 1))])))
    for p, k in ((5, 2), (5, 3), (3, 2)):
        pres = get_backend(f"zp-sum:{p},{k}").k0()
        checks.append((f"zp-sum:{p},{k}", lambda pres=pres, p=p, k=k: _expect(
            pres.render(), f"Z[X]/<{p ** k - 1}X>")))
    j2 = get_backend("zp-sum:5,2").k0()
    j3 = get_backend("zp-sum:5,3").k0()
    checks.append(("<124X> not inside <24X>", lambda: _expect(j2.ideal_contains_ideal(j3), False)))
    checks.append(("<24X> not inside <124X>", lambda: _expect(j3.ideal_contains_ideal(j2), False)))
    ws = Workspace.from_json({"backend": "integer-z", "sets": {"Z": {"kind": "lattice", "n": 1, "basis": [[1]]}},
                              "exprs": {"punctured": "Z \\ {0}"}})
    checks.append(("[Z] = 0 over the integers", lambda: _expect(str(evaluate(ws.resolve("Z"))), "0")))
    checks.append(("[Z minus a point] = -1", lambda: _expect(str(evaluate(ws.resolve("punctured"))), "-1")))
    return _fixed("k0", checks)


def suite_semiring(rng=None, cases=0, budget=None) -> SuiteResult:
    """Universal property of the Grothendieck ring on every semiring with at most four elements."""
    res = SuiteResult("semiring")
    start = time.perf_counter()
    unique = [s for n in range(1, 5) for s in enumerate_semirings(n)]
    rings = [s for s in unique if s.is_ring()]
    for s in unique:
        res.cases += 1
        verdict = True
        try:
            k0, eta = grothendieck_ring(s)
            if not k0.is_ring():
                verdict = "ring of differences has no negatives"
            elif (len(set(eta)) == s.size) != s.is_cancellative():
                verdict = "embedding is injective exactly when cancellative fails"
            else:
                for t in rings:
                    for g in homomorphisms(s, t):
                        lifts = [h for h in homomorphisms(k0, t) if all(h[eta[x]] == g[x] for x in s.elements)]
                        if len(lifts) != 1:
                            verdict = f"{len(lifts)} factorizations of {g} into a ring of size {t.size}"
                            break
                    if verdict is not True:
                        break
        except Exception as exc:
            verdict = f"{type(exc).__name__}: {exc}"
        if verdict is True:
            res.passed += 1
        elif len(res.failures) < 5:
            res.failures.append({"instance": json.dumps({"add": s.add, "mul": s.mul}), "reason": verdict})
    res.seconds = time.perf_counter() - start
    return res


# -- evaluation suites ---------------------------------------------------------------

GOLDEN_WORKSPACE = {
    "backend": "affine-q",
    "sets": {
        "origin": {"kind": "affine", "n": 2, "eq": [[1, 0, 0], [0, 1, 0]]},
        "xaxis": {"kind": "affine", "n": 2, "eq": [[0, 1, 0]]},
        "yaxis": {"kind": "affine", "n": 2, "eq": [[1, 0, 0]]},
        "plane": {"kind": "affine", "n": 2, "eq": []},
    },
    "exprs": {
        "cross": "xaxis | yaxis",
        "punctured_axes": "(xaxis | yaxis) \\ origin",
        "punctured_plane": "plane \\ xaxis",
    },
}


def _describe_set(d: DefinableSet) -> str:
    return json.dumps({"backend": d.backend.name, "n": d.n, "blocks": d.describe()})


def suite_ev(rng, cases=100, budget=None) -> SuiteResult:
    ws = Workspace.from_json(GOLDEN_WORKSPACE)
    checks = []
    for name, want in (("origin", "1"), ("xaxis", "X"), ("cross", "2X - 1"), ("plane", "X^2")):
        def check(name=name, want=want):
            d = ws.resolve(name)
            got = evaluate(d).value
            if str(got) != want:
                return f"{name}: got {got}, expected {want}"
            if mobius_ev(d) != got or brute_ev(d) != got:
                return f"{name}: oracles give {mobius_ev(d)} and {brute_ev(d)}"
            return True
        checks.append((name, check))
    fixed = _fixed("ev", checks)

    be = AffineBackend()

    def prop(d):
        v = evaluate(d).value
        m, b = mobius_ev(d), brute_ev(d)
        return True if v == m == b else f"evaluate {v}, inclusion-exclusion {m}, brute force {b}"

    rnd = _run("ev", rng, cases, lambda r: gen.random_definable(r, be, r.choice([1, 2, 3]), 3), prop, _describe_set)
    fixed.cases += rnd.cases
    fixed.passed += rnd.passed
    fixed.failures += rnd.failures
    fixed.seconds += rnd.seconds
    return fixed


def suite_t1(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        n = r.choice([2, 2, 3])
        return (n, gen.random_antichain(r, be, n), gen.random_antichain(r, be, n),
                [gen.random_affine(r, n) for _ in range(2)])

    def prop(inst):
        n, a, b, extra = inst
        join, meet = antichain_join(be, a, b), antichain_meet(be, a, b)
        for p in set(meet_closure(be, list(a) + list(b))) | set(extra):
            lhs = local_characteristic(be, join, p) + local_characteristic(be, meet, p)
            rhs = local_characteristic(be, a, p) + local_characteristic(be, b, p)
            if lhs != rhs:
                return f"at {be.render(p)}: {lhs} != {rhs}"
        return True

    show = lambda inst: json.dumps({"alpha": [be.describe(p) for p in inst[1]],
                                    "beta": [be.describe(p) for p in inst[2]]})
    return _run("t1", rng, cases, make, prop, show)


def suite_p1(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        n = r.choice([2, 3])
        a = gen.random_antichain(r, be, n)
        extra = []
        for _ in range(r.randint(1, 4)):
            host = r.choice(a)
            m = be.meet(host, gen.random_affine(r, n))
            extra.append(m if m is not None else be.singleton(be.pick_point(host)))
        return (n, a, tuple(a) + tuple(extra))

    def prop(inst):
        n, a, b = inst
        for p in meet_closure(be, b):
            if local_characteristic(be, a, p) != local_characteristic(be, b, p):
                return f"at {be.render(p)}"
        return True

    show = lambda inst: json.dumps({"antichain": [be.describe(p) for p in inst[1]],
                                    "family": [be.describe(p) for p in inst[2]]})
    return _run("p1", rng, cases, make, prop, show)


def suite_t2(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        n = r.choice([2, 3])
        return (gen.nonempty_definable(r, be, n, 3), [gen.random_affine(r, n) for _ in range(r.randint(1, 3))])

    def prop(inst):
        d, extra = inst
        elems = meet_closure(be, d.pp_sets() | set(extra))
        finer = [b for f in elems if d.member_of_core(f)
                 for b in [Block(f, tuple(g for g in elems if be.is_strict_subset(g, f)))]]
        for p in elems:
            x, y = kappa_blocks(be, d.blocks, p), kappa_blocks(be, finer, p)
            if x != y:
                return f"at {be.render(p)}: {x} vs {y}"
        return True

    return _run("t2", rng, cases, make, prop, lambda inst: _describe_set(inst[0]))


def _image(be, d, amap):
    a, b = amap
    return DefinableSet(be, d.n, tuple(Block(be.apply_affine(x.top, a, b), tuple(be.apply_affine(h, a, b)
                                                                                for h in x.holes))
                                      for x in d.blocks))


def piecewise_image(rng, be, d):
    """Image of d under a random piecewise affine bijection (one affine map per block)."""
    n = d.n
    glob = (gen.random_invertible(rng, n), gen.random_translation(rng, n))
    pieces = []
    for blk in d.canonical().blocks:
        single = DefinableSet(be, n, (blk,))
        for attempt in range(4):
            amap = glob if attempt == 3 else (gen.random_invertible(rng, n), gen.random_translation(rng, n, 6))
            img = _image(be, single, amap)
            if all(img.intersection(o).is_empty() for o in pieces):
                break
        else:
            return _image(be, d, glob)
        pieces.append(img)
    return reduce(lambda x, y: x.union(y), pieces, DefinableSet.empty(be, n))


def suite_t3(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        n = r.choice([1, 2, 2, 3])
        d = gen.nonempty_definable(r, be, n, 2)
        kind = r.choice(["affine", "permutation", "translation", "piecewise", "piecewise"])
        if kind == "piecewise":
            return (d, piecewise_image(r, be, d), kind)
        if kind == "permutation":
            perm = list(range(n))
            r.shuffle(perm)
            amap = ([[int(perm[i] == j) for j in range(n)] for i in range(n)], [0] * n)
        elif kind == "translation":
            amap = ([[int(i == j) for j in range(n)] for i in range(n)], gen.random_translation(r, n))
        else:
            amap = (gen.random_invertible(r, n), gen.random_translation(r, n))
        return (d, _image(be, d, amap), kind)

    def prop(inst):
        d, img, _ = inst
        return _expect(evaluate(img).value, evaluate(d).value)

    return _run("t3", rng, cases, make, prop, lambda inst: _describe_set(inst[0]) + " / " + _describe_set(inst[1]))


def suite_t5(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        return (gen.nonempty_definable(r, be, r.choice([1, 2]), 2), gen.nonempty_definable(r, be, r.choice([1, 2]), 2))

    def prop(inst):
        a, b = inst
        return _expect(evaluate(a.product(b)).value, evaluate(a).value * evaluate(b).value)

    return _run("t5", rng, cases, make, prop, lambda inst: _describe_set(inst[0]) + " x " + _describe_set(inst[1]))


def suite_onto_php(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        return (2, gen.random_points(r, 2, r.randint(1, 20)))

    def prop(inst):
        n, pts = inst
        f = DefinableSet.from_points(be, pts)
        whole = DefinableSet.from_pp(be, be.ambient(n))
        v = evaluate(f).value
        if v != MonoidRingElement.monomial(be.monoid, be.monoid.unit, len(pts)):
            return f"finite set of size {len(pts)} evaluates to {v}"
        if evaluate(whole).value == evaluate(whole.difference(f)).value:
            return "removing points did not change the value"
        return True

    return _run("onto-php", rng, cases, make, prop, lambda inst: json.dumps([[str(x) for x in p] for p in inst[1]]))


def suite_mink(rng, cases=300, budget=None) -> SuiteResult:
    be = AffineBackend()

    def make(r):
        n = r.choice([1, 2, 3])
        blk = gen.random_block(r, be, n)
        return (n, blk, (gen.random_invertible(r, n), gen.random_translation(r, n)))

    def inside(blk, x):
        return be.contains_point(blk.top, x) and not any(be.contains_point(h, x) for h in blk.holes)

    def prop(inst):
        n, blk, (a, b) = inst
        targets = be.sample_points(blk.top, 3) + [be.pick_point(h) for h in blk.holes]
        for d in targets:
            x, y, z = minkowski_witness(be, blk, d)
            if not (inside(blk, x) and inside(blk, y) and inside(blk, z)) or vsub(vadd(x, y), z) != d:
                return f"bad witness for {d}"
        pts = block_samples(be, blk, 4)
        for x in pts:
            for y in pts:
                for z in pts:
                    if not be.contains_point(blk.top, vsub(vadd(x, y), z)):
                        return "x + y - z left the closure"
        base = be.basepoint(blk.top)
        sub = Block(be.subgroup_part(blk.top), tuple(be.translate(h, tuple(-c for c in base)) for h in blk.holes))
        for g in be.sample_points(sub.top, 3):
            u, v = difference_witness(be, sub, g)
            if not (inside(sub, u) and inside(sub, v)) or vsub(u, v) != g:
                return f"bad difference witness for {g}"
        amap = lambda x: tuple(sum(Fraction(c) * xi for c, xi in zip(row, x)) + bi for row, bi in zip(a, b))
        ext = extend_linear(be, blk, amap)
        for d in targets:
            if ext(d) != amap(d):
                return f"extension differs from the ambient map at {d}"
        return True

    show = lambda inst: json.dumps({"top": be.describe(inst[1].top), "holes": [be.describe(h) for h in inst[1].holes]})
    return _run("mink", rng, cases, make, prop, show)


# -- general case suites ------------------------------------------------------------

def _lattice_box(n, r=6):
    import itertools
    return itertools.product(range(-r, r + 1), repeat=n)


def suite_discrete(rng, cases=300, budget=None) -> SuiteResult:
    be = LatticeBackend()

    def make(r):
        n = r.choice([1, 1, 2])
        return (n, [[gen.random_coset(r, n, 6 if n == 2 else 12) for _ in range(r.randint(1, 3))]
                    for _ in range(r.randint(1, 3))])

    def prop(inst):
        n, fams = inst
        out = discrete_form(be, fams)
        subgroups = {}
        for fam in out:
            for q in fam:
                if subgroups.setdefault(be.band_key(q), be.subgroup_part(q)) != be.subgroup_part(q):
                    return "two subgroups in one band"
        for fam, new in zip(fams, out):
            # one subgroup per band, so two cosets there are either equal or disjoint
            if len(set(new)) != len(new):
                return "cosets of one band overlap"
            # equal unions: each new coset sits in an old one, each old one is covered by the new ones
            if not all(any(be.is_subset(q, o) for o in fam) for q in new):
                return "a new coset leaves the old union"
            if not all(be.covers(o, new) for o in fam):
                return "an old coset is not covered"
            if len(new) <= 24 and not DefinableSet.from_antichain(be, fam, n).same_set(
                    DefinableSet.from_antichain(be, new, n)):
                return "union changed"
            for pt in _lattice_box(n, 6 if n == 1 else 3):
                if any(be.contains_point(q, pt) for q in fam) != any(be.contains_point(q, pt) for q in new):
                    return f"membership of {pt} changed"
        return True

    show = lambda inst: json.dumps([[be.describe(q) for q in f] for f in inst[1]])
    return _run("discrete", rng, cases, make, prop, show)


def suite_partitionfurther(rng, cases=300, budget=None) -> SuiteResult:
    be = LatticeBackend()

    def make(r):
        n = r.choice([1, 2])
        l0 = gen.random_sublattice(r, n)
        cos = be.coset_decompose(be.ambient(n), l0)
        chosen = [c for c in cos if r.random() < 0.5] or [cos[0]]
        h1 = be.meet(l0, gen.random_sublattice(r, n))
        h2 = be.meet(l0, gen.random_sublattice(r, n))
        return (n, chosen, h1, h2)

    def prop(inst):
        n, chosen, h1, h2 = inst
        a = [c2 for c in chosen for c2 in be.coset_decompose(c, h1)]
        b = [c2 for c in chosen for c2 in be.coset_decompose(c, h2)]
        lhs = be.index(h1, h2) * len(a)
        rhs = be.index(h2, h1) * len(b)
        if lhs != rhs:
            return f"{lhs} != {rhs}"
        for pt in _lattice_box(n, 8 if n == 1 else 4):
            if any(be.contains_point(q, pt) for q in a) != any(be.contains_point(q, pt) for q in b):
                return f"the two decompositions disagree at {pt}"
        return True

    show = lambda inst: json.dumps({"cosets": [be.describe(c) for c in inst[1]], "h1": be.describe(inst[2]),
                                    "h2": be.describe(inst[3])})
    return _run("partitionfurther", rng, cases, make, prop, show)


# -- decomposition and connectivity ------------------------------------------------------

def cdt_corpus(seed: int = 2024, size: int = 50):
    r = random.Random(seed)
    be = AffineBackend()
    return be, [gen.nonempty_definable(r, be, r.choice([1, 2, 2, 3]), 3) for _ in range(size)]


def check_tower(be, d) -> str | bool:
    t = cell_decompose(d)
    if not t.is_valid(be):
        return "tower violates the precedence conditions"
    u = t.union(be, d.n)
    if not u.same_set(d):
        return "union of the cells differs from the set"
    if cell_decompose(u) != t:
        return "decomposing the union gives another tower"
    ch = tower_chain(t)
    if chain_to_tower(ch) != t:
        return "chain does not map back to the tower"
    if ch.height != t.height:
        return f"chain height {ch.height} != tower height {t.height}"
    for x, y in zip(ch.antichains, ch.antichains[1:]):
        if not precedes(be, y, x):
            return "chain is not descending"
    return True


def suite_cdt(rng=None, cases=50, budget=None) -> SuiteResult:
    be, corpus = cdt_corpus(size=cases or 50)
    it = iter(corpus)
    return _run("cdt", random.Random(0), len(corpus), lambda r: next(it), lambda d: check_tower(be, d), _describe_set)


def check_pieces(d: DefinableSet) -> str | bool:
    """A connected subset lies in exactly one piece of the split along components."""
    lam = lambda_invariant(d)
    pieces = connected_pieces(d)
    if len(pieces) != lam.value:
        return f"{len(pieces)} pieces but lambda is {lam}"
    union = reduce(lambda x, y: x.union(y), pieces, DefinableSet.empty(d.backend, d.n))
    if not union.same_set(d):
        return "pieces do not reassemble the set"
    for i, p in enumerate(pieces):
        for q in pieces[i + 1:]:
            if not p.intersection(q).is_empty():
                return "pieces overlap"
    for blk in d.canonical().blocks:
        a = DefinableSet(d.backend, d.n, (blk,))
        if lambda_invariant(a).value != 1:
            return "a block is not connected"
        hits = sum(1 for p in pieces if a.is_subset(p))
        if hits != 1:
            return f"a block lies in {hits} pieces"
    return True


def suite_lambda(rng, cases=300, budget=None) -> SuiteResult:
    ws = Workspace.from_json(GOLDEN_WORKSPACE)
    be0 = ws.backend
    checks = [
        ("block", lambda: _expect(str(lambda_invariant(ws.resolve("punctured_plane"))), "1 (exact)")),
        ("axes minus origin", lambda: _expect(str(lambda_invariant(ws.resolve("punctured_axes"))), "2 (exact)")),
        ("empty", lambda: _expect(str(lambda_invariant(DefinableSet.empty(be0, 2))), "0 (exact)")),
    ]
    cbe, corpus = cdt_corpus()
    for i, d in enumerate(corpus):
        checks.append((f"corpus set {i}", lambda d=d: check_pieces(d)))
    fixed = _fixed("lambda", checks)
    be = AffineBackend()

    def make(r):
        n = r.choice([2, 3])
        m = r.randint(1, 3)
        levels = r.sample(range(-3, 4), m)
        hyper = []
        for c in levels:
            # parallel pp-sets x_n = c of dimension n-1, or points on that level
            eq = [[0] * (n - 1) + [1, c]]
            hyper.append(be.from_equations(n, eq))
        bs = []
        for h in hyper:
            holes = []
            for _ in range(r.randint(0, 2)):
                m_ = be.meet(h, gen.random_affine(r, n))
                if m_ is not None and m_ != h:
                    holes.append(m_)
            bs.append(DefinableSet.from_pp(be, h).difference(DefinableSet.from_antichain(be, holes, n)))
        i = r.randrange(m)
        sub = be.meet(hyper[i], gen.random_affine(r, n, r.randint(1, n - 1)))
        if sub is None:
            sub = hyper[i]
        a = DefinableSet.from_pp(be, sub).intersection(bs[i])
        if a.is_empty():
            a = bs[i]
        return (bs, a)

    def prop(inst):
        bs, a = inst
        union = reduce(lambda x, y: x.union(y), bs)
        lu = lambda_invariant(union)
        if (lu.value, lu.exact) != (len(bs), True):
            return f"lambda of the union is {lu}, expected {len(bs)} (exact)"
        la = lambda_invariant(a)
        if la.value != 1:
            return True if la.value == 0 else f"test set has lambda {la}"
        if not a.is_subset(union):
            return "test set escapes the union"
        hits = sum(1 for b in bs if a.is_subset(b))
        return True if hits == 1 else f"connected subset lies in {hits} pieces"

    rnd = _run("lambda", rng, cases, make, prop, lambda inst: " | ".join(_describe_set(b) for b in inst[0]))
    fixed.cases += rnd.cases
    fixed.passed += rnd.passed
    fixed.failures += rnd.failures
    fixed.seconds += rnd.seconds
    return fixed


SUITES: dict[str, Callable] = {
    "homology": suite_homology,
    "chi-cone": suite_chi_cone,
    "chi-disjunctive": suite_chi_disjunctive,
    "chi-product": suite_chi_product,
    "k0": suite_k0,
    "semiring": suite_semiring,
    "ev": suite_ev,
    "t1": suite_t1,
    "t2": suite_t2,
    "t3": suite_t3,
    "t5": suite_t5,
    "p1": suite_p1,
    "mink": suite_mink,
    "discrete": suite_discrete,
    "partitionfurther": suite_partitionfurther,
    "cdt": suite_cdt,
    "lambda": suite_lambda,
    "onto-php": suite_onto_php,
}

DEFAULT_CASES = {"chi-cone": 500, "chi-disjunctive": 500, "chi-product": 500, "cdt": 50, "ev": 100}


def run_suite(name: str, seed: int = 0, cases: int | None = None, budget: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all")
    n = cases if cases is not None else DEFAULT_CASES.get(name, 300)
    return SUITES[name](random.Random(seed), n, budget)
