"""The pointwise f-algebra order on a Boolean power of a totally ordered ring.

``f <= g`` iff ``f(x) <= g(x)`` at every atom.  Positivity can also be read
off the full orthogonal form (every coefficient nonnegative); the two
predicates agreeing is the testable face of the order being the only
f-algebra order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from .core import SpeckerAlgebra, SpeckerElement, from_pointwise
from .errors import MixedAlgebras, UnorderedRing
from .functors import AlgebraHom

__all__ = [
    "OrderedContext",
    "leq",
    "join",
    "meet",
    "abs_",
    "is_positive",
    "is_positive_orthogonal",
    "f_ring_axiom_check",
    "FRingCheck",
    "lattice_hom_check",
]


@dataclass(frozen=True)
class OrderedContext:
    parent: SpeckerAlgebra

    def __post_init__(self):
        if not self.parent.ring.is_totally_ordered:
            raise UnorderedRing(f"{self.parent.ring!r} carries no total order")

    def cmp(self, a, b) -> int:
        return self.parent.ring.compare(a, b)

    def ring_abs(self, a):
        r = self.parent.ring
        return a if r.compare(r.zero, a) <= 0 else r.neg(a)


def _ctx(*elems: SpeckerElement) -> OrderedContext:
    parent = elems[0].parent
    for e in elems[1:]:
        if e.parent != parent:
            raise MixedAlgebras(f"{parent!r} vs {e.parent!r}")
    return OrderedContext(parent)


def leq(f: SpeckerElement, g: SpeckerElement) -> bool:
    c = _ctx(f, g)
    return all(c.cmp(a, b) <= 0 for a, b in zip(f.values, g.values))


def join(f: SpeckerElement, g: SpeckerElement) -> SpeckerElement:
    c = _ctx(f, g)
    return SpeckerElement._trusted(f.parent, tuple(b if c.cmp(a, b) < 0 else a for a, b in zip(f.values, g.values)))


def meet(f: SpeckerElement, g: SpeckerElement) -> SpeckerElement:
    c = _ctx(f, g)
    return SpeckerElement._trusted(f.parent, tuple(a if c.cmp(a, b) < 0 else b for a, b in zip(f.values, g.values)))


def abs_(f: SpeckerElement) -> SpeckerElement:
    c = _ctx(f)
    return SpeckerElement._trusted(f.parent, tuple(c.ring_abs(a) for a in f.values))


def is_positive(f: SpeckerElement) -> bool:
    return leq(f.parent.zero, f)


def is_positive_orthogonal(f: SpeckerElement) -> bool:
    """``0 <= f`` read from the coefficients of the full orthogonal form."""
    c = _ctx(f)
    z = f.parent.ring.zero
    return all(c.cmp(z, a) <= 0 for a, _ in from_pointwise(f).full_parts())


@dataclass(frozen=True)
class FRingCheck:
    holds: bool
    applicable: bool

    def __bool__(self):
        return self.holds


def f_ring_axiom_check(a: SpeckerElement, b: SpeckerElement, c: SpeckerElement) -> FRingCheck:
    """``a & b = 0`` and ``c >= 0`` imply ``ac & b = 0``.

    Triples outside the hypothesis hold vacuously and come back with
    ``applicable=False``.
    """
    _ctx(a, b, c)
    if not meet(a, b).is_zero or not is_positive(c):
        return FRingCheck(True, False)
    return FRingCheck(meet(a * c, b).is_zero, True)


def _pairs(S: SpeckerAlgebra, samples: int, rng: random.Random, exhaustive_limit: int) -> Iterable:
    size = S.size()
    if size is not None and size * size <= exhaustive_limit:
        elems = list(S.elements())
        return itertools.product(elems, elems)
    return ((S.sample(rng), S.sample(rng)) for _ in range(samples))


def lattice_hom_check(
    alpha: AlgebraHom, samples: int = 500, seed: int = 0, exhaustive_limit: int = 10_000
) -> bool:
    """Whether ``alpha`` preserves join, meet and absolute value.

    Also checks the lattice-ring identities ``2(f v g) = f + g + |f - g|``
    and ``2(f ^ g) = f + g - |f - g|`` on the source.
    """
    OrderedContext(alpha.source)
    OrderedContext(alpha.target)
    rng = random.Random(seed)
    for f, g in _pairs(alpha.source, samples, rng, exhaustive_limit):
        af, ag = alpha(f), alpha(g)
        if alpha(join(f, g)) != join(af, ag):
            return False
        if alpha(meet(f, g)) != meet(af, ag):
            return False
        if alpha(abs_(f)) != abs_(af):
            return False
        two = f.parent.constant(2)
        spread = abs_(f - g)
        if two * join(f, g) != f + g + spread or two * meet(f, g) != f + g - spread:
            return False
    return True
