"""Hom spaces, minimal primes, annihilators and Baer classification.

Points of the hom space are the algebra homs ``S -> R``; the subbasic
sets are the zero loci ``U_s``.  Over a domain these points correspond to
the minimal primes through ``alpha |-> ker(alpha)``.  Primes are kept
intensionally, by their hom, since carriers over ``Z`` are infinite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .boolean_algebra import BoolHom, dm_completion, is_complete
from .core import SpeckerAlgebra, SpeckerElement, from_pointwise
from .errors import InconsistentBackend, MixedAlgebras, NotADomain
from .functors import DEFAULT_EXHAUSTIVE_LIMIT, AlgebraHom, base_algebra, enumerate_algebra_homs

__all__ = [
    "HomSpace",
    "hom_space",
    "MinimalPrime",
    "MinSpectrum",
    "min_spectrum",
    "annihilator",
    "annihilator_of_set",
    "verify_annihilator",
    "BaerReport",
    "baer_report",
    "Hull",
    "injective_hull",
]


@dataclass(frozen=True)
class HomSpace:
    algebra: SpeckerAlgebra
    points: tuple

    def evaluate(self, i: int, s: SpeckerElement):
        return self.points[i].apply(s).values[0]

    def zero_set(self, s: SpeckerElement) -> frozenset:
        """``U_s``: indices of the points killing ``s``."""
        z = self.algebra.ring.zero
        return frozenset(i for i, a in enumerate(self.points) if a.apply(s).values[0] == z)

    def zero_set_via_parts(self, s: SpeckerElement) -> frozenset:
        """``U_{e_1} & ... & U_{e_n}`` over the orthogonal parts of ``s``."""
        S = self.algebra
        out = frozenset(range(len(self.points)))
        for _, idem in from_pointwise(s).parts:
            out &= self.zero_set(S.y(idem))
        return out

    def check_subbasis(self, s: SpeckerElement) -> bool:
        return self.zero_set(s) == self.zero_set_via_parts(s)

    def is_discrete(self) -> bool:
        """Every singleton is an intersection of idempotent zero sets."""
        S = self.algebra
        basics = [self.zero_set(S.y(e)) for e in S.algebra.elements()]
        all_pts = frozenset(range(len(self.points)))
        for i in range(len(self.points)):
            cut = reduce(frozenset.intersection, (b for b in basics if i in b), all_pts)
            if cut != {i}:
                return False
        return True


def hom_space(S: SpeckerAlgebra) -> HomSpace:
    return HomSpace(S, tuple(enumerate_algebra_homs(S, base_algebra(S.ring))))


@dataclass(frozen=True)
class MinimalPrime:
    hom: AlgebraHom

    def contains(self, s: SpeckerElement) -> bool:
        return self.hom.apply(s).is_zero

    __contains__ = contains

    def meets_base_trivially(self, scalars: Iterable) -> bool:
        """``P & R = 0`` on the given scalars."""
        S = self.hom.source
        z = S.ring.zero
        return all(a == z or not self.contains(S.constant(a)) for a in scalars)

    def zero_divisor_witness(self, s: SpeckerElement) -> SpeckerElement:
        """Nonzero ``t`` with ``s t = 0`` for ``s`` in the prime."""
        if not self.contains(s):
            raise ValueError(f"{s!r} is not in this prime")
        t = s.parent.y(s.zero_set())
        if t.is_zero or not (s * t).is_zero:
            raise InconsistentBackend(f"no zero-divisor witness for {s!r}")
        return t

    def residue_check(self, s: SpeckerElement) -> bool:
        """``s - alpha(s) 1`` lies in the prime, so ``R -> S/P`` is onto at ``s``."""
        a = self.hom.apply(s).values[0]
        return self.contains(s - s.parent.constant(a))


@dataclass(frozen=True)
class MinSpectrum:
    space: HomSpace
    primes: tuple

    def zero_locus(self, s: SpeckerElement) -> frozenset:
        """``Z(s)``: indices of the primes containing ``s``."""
        return frozenset(i for i, p in enumerate(self.primes) if p.contains(s))

    def phi(self, points: Iterable[int]) -> frozenset:
        """Image of a set of hom-space points under ``alpha |-> ker(alpha)``."""
        return frozenset(points)

    def check_phi(self, s: SpeckerElement) -> bool:
        return self.zero_locus(s) == self.phi(self.space.zero_set(s))

    def is_bijective(self) -> bool:
        return len(set(p.hom for p in self.primes)) == len(self.space.points) == len(self.primes)


def min_spectrum(S: SpeckerAlgebra) -> MinSpectrum:
    if not S.ring.is_domain:
        raise NotADomain(f"{S.ring!r} is not a domain")
    space = hom_space(S)
    return MinSpectrum(space, tuple(MinimalPrime(a) for a in space.points))


def annihilator(s: SpeckerElement) -> SpeckerElement:
    """Idempotent ``e`` with ``ann(s) = eS``, built from ring witnesses atomwise."""
    r = s.parent.ring
    return s.parent.element(r.annihilator_witness(v) for v in s.values)


def annihilator_of_set(S: SpeckerAlgebra, I: Sequence[SpeckerElement]) -> SpeckerElement:
    """Meet of the individual witnesses; the empty set gives 1."""
    out = S.one
    for s in I:
        if s.parent != S:
            raise MixedAlgebras(f"{s!r} is not in {S!r}")
        out = out * annihilator(s)
    return out


def _candidates(S: SpeckerAlgebra, I: Sequence[SpeckerElement], exhaustive_limit: int, rng, trials: int):
    size = S.size()
    if size is not None and size <= exhaustive_limit:
        yield from S.elements()
        return
    # random elements, plus random elements cut down to the common zero set of I
    zero_atoms = set(S.algebra.atoms)
    for s in I:
        zero_atoms &= s.zero_set().atoms
    mask = S.y(S.algebra.element(zero_atoms))
    for k in range(trials):
        t = S.sample(rng)
        yield t * mask if k % 2 else t


def verify_annihilator(
    I: Sequence[SpeckerElement] | SpeckerElement,
    e: SpeckerElement,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    seed: int = 0,
    trials: int = 1000,
) -> bool:
    """Check ``ann(I) = eS``: ``e`` kills ``I`` and fixes everything that does.

    Exhaustive when ``|S|`` is at most ``exhaustive_limit``, otherwise
    ``trials`` random candidates.
    """
    if isinstance(I, SpeckerElement):
        I = [I]
    S = e.parent
    if not all((e * s).is_zero for s in I) or e * e != e:
        return False
    rng = random.Random(seed)
    for t in _candidates(S, I, exhaustive_limit, rng, trials):
        if all((t * s).is_zero for s in I) and e * t != t:
            return False
    return True


@dataclass(frozen=True)
class BaerReport:
    weak_baer: bool
    baer: bool
    id_complete: bool
    witness_failure: object = None


def baer_report(S: SpeckerAlgebra) -> BaerReport:
    failure = S.ring.weak_baer_failure()
    weak = failure is None
    complete = is_complete(S.idempotents.algebra)
    if S.ring.is_domain and not weak:
        raise InconsistentBackend(f"{S.ring!r} is a domain but failed the weak Baer check")
    return BaerReport(weak_baer=weak, baer=weak and complete, id_complete=complete, witness_failure=failure)


@dataclass(frozen=True)
class Hull:
    algebra: SpeckerAlgebra
    embedding: AlgebraHom
    embedding_bijective: bool
    baer: bool


def injective_hull(S: SpeckerAlgebra, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> Hull:
    """``R[DM(Id(S))]`` with the embedding induced by ``B -> Id(S) -> DM(Id(S))``."""
    if not S.ring.is_domain:
        raise NotADomain(f"injective hulls need a domain, got {S.ring!r}")
    ida = S.idempotents
    completion = dm_completion(ida.algebra)
    H = SpeckerAlgebra(S.ring, completion)
    # finite algebras are complete, so the completion map is the identity on atoms
    into_completion = BoolHom(ida.algebra, completion, tuple(completion.atoms))
    datum = H.idempotents.canonical_inclusion().compose(into_completion).compose(ida.canonical_inclusion())
    emb = AlgebraHom(S, H, datum)
    return Hull(H, emb, emb.is_isomorphism(exhaustive_limit), baer_report(H).baer)
