"""The functors between Boolean algebras and Specker algebras.

``functor_S_*`` sends ``B`` to ``R[B]`` and a Boolean hom to the induced
algebra hom; ``functor_I*`` sends ``S`` to ``Id(S)`` and an algebra hom to
its restriction.  Algebra homs out of ``R[B]`` are stored as the
Boolean hom ``B -> Id(T)`` they lift, which loses nothing because ``R[B]``
is generated by the ``y_e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .boolean_algebra import BoolHom, FiniteBooleanAlgebra, enumerate_homs
from .core import SpeckerAlgebra, SpeckerElement
from .errors import MixedAlgebras, RingMismatch, TargetMismatch
from .rings import RingBackend, classify

__all__ = [
    "AlgebraHom",
    "base_algebra",
    "functor_S_obj",
    "functor_S_hom",
    "functor_I",
    "functor_I_hom",
    "ump_lift",
    "UnitCounit",
    "unit",
    "counit",
    "counit_kernel_witness",
    "unit_counit",
    "enumerate_algebra_homs",
    "EquivalenceReport",
    "equivalence_report",
]

DEFAULT_EXHAUSTIVE_LIMIT = 10_000


def base_algebra(ring: RingBackend) -> SpeckerAlgebra:
    """The ring itself, as the Boolean power over the two-element algebra."""
    return SpeckerAlgebra(ring, FiniteBooleanAlgebra(1))


@dataclass(frozen=True)
class AlgebraHom:
    source: SpeckerAlgebra
    target: SpeckerAlgebra
    datum: BoolHom

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch(f"{self.source.ring!r} vs {self.target.ring!r}")
        if self.datum.source != self.source.algebra:
            raise TargetMismatch("Boolean datum must start at the source's algebra")
        if self.datum.target != self.target.idempotents.algebra:
            raise TargetMismatch("Boolean datum must land in Id(target)")

    @cached_property
    def atom_images(self) -> tuple:
        ida = self.target.idempotents
        return tuple(ida.to_element(self.datum.apply(self.source.algebra.atom(x))) for x in self.source.algebra.atoms)

    def apply(self, s: SpeckerElement) -> SpeckerElement:
        """``sum a_i y_{e_i}  |->  sum a_i sigma(e_i)``, using the atom decomposition."""
        if s.parent != self.source:
            raise MixedAlgebras(f"{s!r} is not in {self.source!r}")
        # atom images are orthogonal idempotents, so each target value is a plain sum
        r = self.target.ring
        vals = []
        for y in range(self.target.atom_count):
            acc = r.zero
            for v, img in zip(s.values, self.atom_images):
                w = img.values[y]
                if w != r.zero:
                    acc = r.add(acc, r.mul(v, w))
            vals.append(acc)
        return SpeckerElement._trusted(self.target, tuple(vals))

    __call__ = apply

    def compose(self, first: AlgebraHom) -> AlgebraHom:
        """``self after first``."""
        if first.target != self.source:
            raise MixedAlgebras("algebra homs are not composable")
        return AlgebraHom(first.source, self.target, functor_I_hom(self).compose(first.datum))

    @classmethod
    def identity(cls, S: SpeckerAlgebra) -> AlgebraHom:
        return cls(S, S, S.idempotents.canonical_inclusion())

    def is_isomorphism(self, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> bool:
        """Bijectivity.

        Finite carriers are checked by enumerating the source.  For infinite
        carriers the datum must be a Boolean isomorphism onto ``Id(T)`` and
        the ring indecomposable, since only then is ``R[Id(T)] -> T`` onto
        and one-to-one.
        """
        src, tgt = self.source.size(), self.target.size()
        if src is not None and tgt is not None:
            if src != tgt:
                return False
            if src <= exhaustive_limit:
                images = {self.apply(s) for s in self.source.elements()}
                return len(images) == tgt
        return self.datum.is_isomorphism and self.source.ring.is_indecomposable


def functor_S_obj(B: FiniteBooleanAlgebra, R: RingBackend) -> SpeckerAlgebra:
    return SpeckerAlgebra(R, B)


def functor_S_hom(sigma: BoolHom, R: RingBackend) -> AlgebraHom:
    """The algebra hom ``R[B] -> R[B']`` sending ``y_e`` to ``y_sigma(e)``."""
    src = SpeckerAlgebra(R, sigma.source)
    tgt = SpeckerAlgebra(R, sigma.target)
    return AlgebraHom(src, tgt, tgt.idempotents.canonical_inclusion().compose(sigma))


def functor_I(S: SpeckerAlgebra) -> FiniteBooleanAlgebra:
    return S.idempotents.algebra


def functor_I_hom(alpha: AlgebraHom) -> BoolHom:
    """Restriction of ``alpha`` to idempotents, as a Boolean hom ``Id(S) -> Id(T)``."""
    src_id = alpha.source.idempotents
    tgt_id = alpha.target.idempotents
    dual = [None] * tgt_id.algebra.atom_count
    for p in src_id.algebra.atoms:
        image = tgt_id.from_element(alpha.apply(src_id.atom_element(p)))
        for q in image.atoms:
            if dual[q] is not None:
                raise MixedAlgebras("images of atoms overlap; not an algebra hom")
            dual[q] = p
    if any(p is None for p in dual):
        raise MixedAlgebras("images of atoms do not cover 1; not a unital hom")
    return BoolHom(src_id.algebra, tgt_id.algebra, tuple(dual))


def ump_lift(sigma: BoolHom, T: SpeckerAlgebra) -> AlgebraHom:
    """The unique algebra hom ``R[B] -> T`` restricting to ``sigma`` on the ``y_e``."""
    if sigma.target != T.idempotents.algebra:
        raise TargetMismatch(f"sigma lands in {sigma.target!r}, not in Id({T!r})")
    return AlgebraHom(SpeckerAlgebra(T.ring, sigma.source), T, sigma)


def enumerate_algebra_homs(S: SpeckerAlgebra, T: SpeckerAlgebra) -> list[AlgebraHom]:
    """Every ``R``-algebra hom ``S -> T``, one per Boolean hom ``B -> Id(T)``."""
    if S.ring != T.ring:
        raise RingMismatch(f"{S.ring!r} vs {T.ring!r}")
    return [ump_lift(sigma, T) for sigma in enumerate_homs(S.algebra, T.idempotents.algebra)]


def counit(S: SpeckerAlgebra) -> AlgebraHom:
    """``R[Id(S)] -> S``, sending ``y_e`` to ``e``."""
    ida = S.idempotents
    return AlgebraHom(SpeckerAlgebra(S.ring, ida.algebra), S, BoolHom.identity(ida.algebra))


def unit(B: FiniteBooleanAlgebra, R: RingBackend) -> BoolHom:
    """``i_B : B -> Id(R[B])``."""
    return SpeckerAlgebra(R, B).idempotents.canonical_inclusion()


def counit_kernel_witness(S: SpeckerAlgebra) -> SpeckerElement | None:
    """A nonzero element killed by the counit, or None.

    Candidates are ``a * y_q`` for ``a`` a nonzero idempotent of ``R`` and
    ``q`` an atom of ``Id(S)``; for a nontrivial idempotent ``a`` and ``q``
    below ``1 - a`` the image is ``a(1 - a) = 0``.
    """
    eps = counit(S)
    src = eps.source
    z = S.ring.zero
    for a in S.ring.idempotents():
        if a == z:
            continue
        for q in src.algebra.atoms:
            cand = src.chi(q).scale(a)
            if eps.apply(cand).is_zero:
                return cand
    return None


@dataclass(frozen=True)
class UnitCounit:
    unit: BoolHom
    unit_is_iso: bool
    counit: AlgebraHom
    counit_is_iso: bool
    counit_kernel: SpeckerElement | None = field(default=None)


def unit_counit(B: FiniteBooleanAlgebra, S: SpeckerAlgebra, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> UnitCounit:
    u = unit(B, S.ring)
    eps = counit(S)
    return UnitCounit(
        unit=u,
        unit_is_iso=u.is_isomorphism,
        counit=eps,
        counit_is_iso=eps.is_isomorphism(exhaustive_limit),
        counit_kernel=counit_kernel_witness(S),
    )


@dataclass(frozen=True)
class EquivalenceRow:
    atoms: int
    unit_is_iso: bool
    counit_is_iso: bool
    id_atoms: int
    counit_kernel: SpeckerElement | None


@dataclass(frozen=True)
class EquivalenceReport:
    ring: RingBackend
    rows: tuple
    indecomposable: bool

    @property
    def holds(self) -> bool:
        return all(r.unit_is_iso and r.counit_is_iso for r in self.rows)

    @property
    def consistent(self) -> bool:
        return self.holds == self.indecomposable


def equivalence_report(
    R: RingBackend, atom_sizes: Sequence[int], exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> EquivalenceReport:
    """Unit and counit iso flags for ``R[B]`` at each requested size of ``B``."""
    rows = []
    for n in atom_sizes:
        B = FiniteBooleanAlgebra(n)
        S = SpeckerAlgebra(R, B)
        uc = unit_counit(B, S, exhaustive_limit)
        rows.append(EquivalenceRow(n, uc.unit_is_iso, uc.counit_is_iso, S.idempotents.algebra.atom_count, uc.counit_kernel))
    return EquivalenceReport(R, tuple(rows), classify(R).is_indecomposable)
