from ..ppcalc.backend import PPError
from .affine import AffineBackend, AffineSubspace, make_subspace
from .lattice import LatticeBackend, LatticeCoset, make_coset
from .zp import PadicBackend


def get_backend(name: str):
    """Backend from its command-line name: affine-q, integer-z, zp:<p> or zp-sum:<p>,<k>."""
    name = name.strip()
    if name in ("affine-q", "affine"):
        return AffineBackend()
    if name in ("integer-z", "integer", "lattice"):
        return LatticeBackend()
    try:
        if name.startswith("zp-sum:"):
            p, k = name[len("zp-sum:"):].split(",")
            return PadicBackend(int(p), int(k))
        if name.startswith("zp:"):
            return PadicBackend(int(name[len("zp:"):]))
    except ValueError:
        raise PPError(f"malformed backend name {name!r}") from None
    raise PPError(f"unknown backend {name!r}")
