"""Symbolic presentations for the p-adic integers and their finite sums.

Only the Grothendieck ring is available here: the pp-subgroups of
Z_p^(k) are the p^n-multiples, so the colour monoid is N and the single
relation X = p^k X generates the ideal.
"""
from __future__ import annotations

from ..algebra import GradedMonoid, IndexRelation, K0Presentation, k0_presentation
from ..ppcalc.backend import PPError


class Unsupported(PPError, AttributeError):
    pass


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class PadicBackend:
    """Presentation-only backend for Z_p^(k); set computations are not supported."""

    is_t_aleph0 = False
    monoid = GradedMonoid("d", 1, ("X",))

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise PPError(f"{p} is not prime")
        if k < 1:
            raise PPError("number of summands must be positive")
        self.p, self.k = p, k
        self.name = f"zp:{p}" if k == 1 else f"zp-sum:{p},{k}"

    def relation_schema(self) -> list[IndexRelation]:
        x = self.monoid.key(1)
        return [IndexRelation(x, x, self.p ** self.k)]

    def k0(self) -> K0Presentation:
        step = f"{self.p}" if self.k == 1 else f"{self.p}^{self.k}"
        note = f"the pp-subgroups of the line form a chain; multiplying by {self.p} has index {step}"
        return k0_presentation(self.monoid, self.relation_schema(), self.name, note)

    def __getattr__(self, item):
        if item.startswith("__"):
            raise AttributeError(item)
        raise Unsupported(f"backend {self.name} only supports the k0 presentation (no {item})")
