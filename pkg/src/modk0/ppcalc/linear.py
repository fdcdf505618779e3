"""Additive structure of blocks: every point of a block's closure is x + y - z
with x, y, z in the block, and linear maps on a block extend to its closure."""
from __future__ import annotations

from typing import Callable

from .backend import CoveredError, PPError, vadd, vneg, vsub
from .sets import Block


def minkowski_witness(be, block: Block, d) -> tuple:
    """(x, y, z) in the block with d = x + y - z, for d in the closure of the block."""
    top, holes = block.top, block.holes
    if not be.contains_point(top, d):
        raise PPError("point is outside the closure of the block")
    if not any(be.contains_point(h, d) for h in holes):
        return (d, d, d)
    g = be.subgroup_part(top)
    shifted = [be.translate(h, vneg(d)) for h in holes]
    x = be.pick_point_avoiding(g, shifted)
    y = be.pick_point_avoiding(g, shifted + [be.translate(s, vneg(x)) for s in shifted])
    return (vadd(d, x), vadd(d, y), vadd(vadd(d, x), y))


def difference_witness(be, block: Block, a) -> tuple:
    """(u, v) in the block with a = u - v, when the closure is a subgroup containing a."""
    top = block.top
    if be.subgroup_part(top) != top:
        raise PPError("closure of the block is not a subgroup")
    if not be.contains_point(top, a):
        raise PPError("point is outside the closure of the block")
    x = be.pick_point_avoiding(top, list(block.holes) + [be.translate(h, vneg(a)) for h in block.holes])
    return (vadd(x, a), x)


def block_samples(be, block: Block, count: int) -> list:
    return be.sample_points(block.top, count, block.holes)


def extend_linear(be, block: Block, f: Callable, samples: int = 6) -> Callable:
    """Unique linear extension of an injective linear map from a block to its closure.

    The map is checked for linearity and injectivity on sample points first.
    """
    pts = block_samples(be, block, samples)
    images = [tuple(f(x)) for x in pts]
    if len(set(images)) != len(images):
        raise PPError("map is not injective on the block")

    def inside(x):
        return be.contains_point(block.top, x) and not any(be.contains_point(h, x) for h in block.holes)

    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            for k, z in enumerate(pts):
                w = vsub(vadd(x, y), z)
                if inside(w):
                    lhs = tuple(f(w))
                    rhs = vsub(vadd(images[i], images[j]), images[k])
                    if lhs != rhs:
                        raise PPError("map is not linear on the block")

    def extended(a):
        if inside(a):
            return tuple(f(a))
        x, y, z = minkowski_witness(be, block, a)
        return vsub(vadd(tuple(f(x)), tuple(f(y))), tuple(f(z)))

    return extended


__all__ = ["minkowski_witness", "difference_witness", "extend_linear", "block_samples", "CoveredError"]
