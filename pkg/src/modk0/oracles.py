"""Slow reference computations used to cross-check the main routines."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .algebra import MonoidRingElement
from .linalg import IntMatrix, det
from .ppcalc.characteristics import discrete_nest
from .ppcalc.sets import DefinableSet, meet_closure


def determinantal_divisors(m: IntMatrix) -> list[int]:
    """Smith invariants from gcds of k x k minors (tiny matrices only)."""
    r, c = m.shape
    prev, out = 1, []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                g = gcd(g, int(det(IntMatrix([[m.rows[i][j] for j in cols] for i in rows], k))))
        if g == 0:
            out += [0] * (min(r, c) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


def brute_local_characteristic(be, alpha, p) -> int:
    """Euler characteristic by listing every subset of the vertex set."""
    verts = [a for a in set(alpha) if a != p and be.is_subset(p, a)]
    chi = 0
    for k in range(1, len(verts) + 1):
        for face in itertools.combinations(verts, k):
            m = face[0]
            for a in face[1:]:
                m = be.meet(m, a)
            if m != p:
                chi += (-1) ** (k - 1)
    covered = any(be.is_subset(p, a) for a in alpha)
    return chi - int(covered)


def brute_ev(d: DefinableSet) -> MonoidRingElement:
    """Sum of local characteristics of the given blocks over the whole nest."""
    be = d.backend
    coeff: dict[str, int] = {}
    for p in meet_closure(be, d.pp_sets()):
        k = sum(brute_local_characteristic(be, [b.top], p) - brute_local_characteristic(be, b.holes, p)
                for b in d.blocks)
        key = be.colour_key(p)
        coeff[key] = coeff.get(key, 0) - k
    return MonoidRingElement.make(be.monoid, coeff)


def mobius_ev(d: DefinableSet) -> MonoidRingElement:
    """Inclusion-exclusion over the nest poset.

    The indicator of a core is the Moebius combination of the indicators of
    the nest elements below it, and each pp-set is worth its colour.
    """
    be = d.backend
    elems = discrete_nest(be, d.pp_sets())
    below = {f: [g for g in elems if be.is_subset(g, f)] for f in elems}
    mu: dict = {}

    def moebius(g, f):
        if (g, f) not in mu:
            if g == f:
                mu[(g, f)] = 1
            else:
                mu[(g, f)] = -sum(moebius(g, h) for h in below[f] if h != f and be.is_subset(g, h))
        return mu[(g, f)]

    coeff: dict[str, int] = {}
    for f in elems:
        if d.member_of_core(f):
            for g in below[f]:
                key = be.colour_key(g)
                coeff[key] = coeff.get(key, 0) + moebius(g, f)
    return MonoidRingElement.make(be.monoid, coeff)


def rational_betti(boundaries, ranks) -> list[int]:
    """Betti numbers from ranks over Q."""
    from .linalg import rank_rat
    rk = [rank_rat(b.rows, b.ncols) if b.nrows else 0 for b in boundaries] + [0]
    return [ranks[n] - rk[n] - rk[n + 1] for n in range(len(ranks))]


def grid_points(n: int, radius: int = 2, step: Fraction = Fraction(1, 2)):
    vals = []
    x = -Fraction(radius)
    while x <= radius:
        vals.append(x)
        x += step
    return itertools.product(vals, repeat=n)
