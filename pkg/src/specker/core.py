"""Boolean powers of a ring over a finite Boolean algebra.

An element of ``R[B]`` is stored pointwise, as a function from the atoms of
``B`` to ``R``.  Orthogonal forms (distinct nonzero coefficients on
disjoint idempotents) and Foster functions (partitions of the top element
indexed by ring values) are derived views.  Foster arithmetic works purely
on partitions; pointwise arithmetic serves as its independent check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .boolean_algebra import (
    BAElement,
    BoolHom,
    FiniteBooleanAlgebra,
    generated_subalgebra,
    minterm_refinement,
)
from .errors import MixedAlgebras, NotIdempotent, UnsupportedCapability
from .rings import IdempotentBA, RingBackend, idempotent_ba

__all__ = [
    "SpeckerAlgebra",
    "SpeckerElement",
    "OrthogonalForm",
    "FosterFunction",
    "FormalCombination",
    "IdempotentAlgebra",
    "normalize",
    "to_pointwise",
    "from_pointwise",
    "foster_add",
    "foster_mul",
    "foster_scalar",
    "is_idempotent",
    "idempotent_algebra",
    "is_faithful",
    "is_faithful_exhaustive",
    "is_faithful_generating",
    "quotient_mod_prime",
]


@dataclass(frozen=True)
class SpeckerAlgebra:
    ring: RingBackend
    algebra: FiniteBooleanAlgebra

    def __repr__(self):
        return f"{self.ring!r}[B{self.algebra.atom_count}]"

    @property
    def atom_count(self) -> int:
        return self.algebra.atom_count

    def element(self, values: Iterable) -> SpeckerElement:
        return SpeckerElement(self, tuple(values))

    def constant(self, a) -> SpeckerElement:
        a = self.ring.coerce(a)
        return SpeckerElement(self, (a,) * self.atom_count)

    @property
    def zero(self) -> SpeckerElement:
        return self.constant(self.ring.zero)

    @property
    def one(self) -> SpeckerElement:
        return self.constant(self.ring.one)

    def y(self, e: BAElement) -> SpeckerElement:
        """Canonical generator ``y_e``: the characteristic function of ``e``."""
        if e.algebra != self.algebra:
            raise MixedAlgebras(f"{e!r} is not in {self.algebra!r}")
        r = self.ring
        return SpeckerElement(self, tuple(r.one if x in e.atoms else r.zero for x in self.algebra.atoms))

    def chi(self, atom: int) -> SpeckerElement:
        return self.y(self.algebra.atom(atom))

    def size(self) -> int | None:
        n = self.ring.size()
        return None if n is None else n ** self.atom_count

    def elements(self) -> Iterator[SpeckerElement]:
        vals = list(self.ring.elements())
        for combo in itertools.product(vals, repeat=self.atom_count):
            yield SpeckerElement(self, combo)

    def sample(self, rng: random.Random) -> SpeckerElement:
        return SpeckerElement(self, tuple(self.ring.sample(rng) for _ in self.algebra.atoms))

    def combination(self, terms: Iterable[tuple]) -> FormalCombination:
        return FormalCombination(self, tuple((self.ring.coerce(a), e) for a, e in terms))

    @cached_property
    def idempotents(self) -> IdempotentAlgebra:
        return idempotent_algebra(self)


@dataclass(frozen=True)
class SpeckerElement:
    parent: SpeckerAlgebra
    values: tuple

    def __post_init__(self):
        r = self.parent.ring
        vals = tuple(r.coerce(v) for v in self.values)
        if len(vals) != self.parent.atom_count:
            raise ValueError(f"need {self.parent.atom_count} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def _trusted(cls, parent: SpeckerAlgebra, values: tuple) -> SpeckerElement:
        # values already produced by ring operations; skip coercion
        s = object.__new__(cls)
        object.__setattr__(s, "parent", parent)
        object.__setattr__(s, "values", values)
        return s

    def __repr__(self):
        return f"({', '.join(map(str, self.values))})"

    def _check(self, other):
        if not isinstance(other, SpeckerElement):
            raise TypeError(f"expected SpeckerElement, got {type(other).__name__}")
        if other.parent != self.parent:
            raise MixedAlgebras(f"{self.parent!r} vs {other.parent!r}")

    def _zip(self, other, op):
        self._check(other)
        return SpeckerElement._trusted(self.parent, tuple(map(op, self.values, other.values)))

    def __add__(self, other):
        return self._zip(other, self.parent.ring.add)

    def __sub__(self, other):
        return self._zip(other, self.parent.ring.sub)

    def __mul__(self, other):
        return self._zip(other, self.parent.ring.mul)

    def __neg__(self):
        r = self.parent.ring
        return SpeckerElement._trusted(self.parent, tuple(map(r.neg, self.values)))

    def scale(self, a) -> SpeckerElement:
        r = self.parent.ring
        a = r.coerce(a)
        return SpeckerElement._trusted(self.parent, tuple(r.mul(a, v) for v in self.values))

    def __call__(self, atom: int):
        return self.values[atom]

    @property
    def is_zero(self) -> bool:
        z = self.parent.ring.zero
        return all(v == z for v in self.values)

    def zero_set(self) -> BAElement:
        z = self.parent.ring.zero
        return self.parent.algebra.element(x for x, v in enumerate(self.values) if v == z)

    def orthogonal(self) -> OrthogonalForm:
        return from_pointwise(self)

    def foster(self) -> FosterFunction:
        return FosterFunction.from_element(self)


@dataclass(frozen=True)
class OrthogonalForm:
    """Distinct nonzero coefficients on nonempty, pairwise disjoint idempotents.

    Parts are sorted by the least atom of their idempotent.  The zero part
    is never stored; ``full_parts`` appends it when the parts do not cover
    the top element.
    """

    parent: SpeckerAlgebra
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lambda p: p[1].least_atom()))
        object.__setattr__(self, "parts", parts)
        z = self.parent.ring.zero
        seen_coeffs = set()
        covered: set = set()
        for coeff, idem in parts:
            if idem.algebra != self.parent.algebra:
                raise MixedAlgebras(f"{idem!r} is not in {self.parent.algebra!r}")
            if coeff == z:
                raise ValueError("orthogonal forms omit the zero coefficient")
            if idem.is_bottom:
                raise ValueError("orthogonal form idempotents must be nonzero")
            if coeff in seen_coeffs:
                raise ValueError(f"coefficient {coeff!r} repeated")
            if covered & idem.atoms:
                raise ValueError("orthogonal form idempotents must be disjoint")
            seen_coeffs.add(coeff)
            covered |= idem.atoms

    def __repr__(self):
        return "[" + ", ".join(f"({c}, {e!r})" for c, e in self.parts) + "]"

    def support(self) -> BAElement:
        atoms: set = set()
        for _, e in self.parts:
            atoms |= e.atoms
        return self.parent.algebra.element(atoms)

    def full_parts(self) -> tuple:
        rest = ~self.support()
        if rest.is_bottom:
            return self.parts
        return tuple(sorted(self.parts + ((self.parent.ring.zero, rest),), key=lambda p: p[1].least_atom()))

    def terms(self) -> FormalCombination:
        return FormalCombination(self.parent, self.parts)

    def to_pointwise(self) -> SpeckerElement:
        return to_pointwise(self)


@dataclass(frozen=True)
class FormalCombination:
    """``sum a_i e_i`` with arbitrary, possibly overlapping idempotents."""

    parent: SpeckerAlgebra
    terms: tuple

    def evaluate(self) -> SpeckerElement:
        """Pointwise value, summing each term directly."""
        r = self.parent.ring
        vals = [r.zero] * self.parent.atom_count
        for a, e in self.terms:
            for x in e.atoms:
                vals[x] = r.add(vals[x], a)
        return SpeckerElement(self.parent, tuple(vals))


def normalize(c: FormalCombination) -> OrthogonalForm:
    """Rewrite a formal combination in orthogonal form.

    The idempotents are refined into minterms, the coefficient sum is taken
    on each minterm, minterms with equal sums are merged and the zero sum
    is dropped.
    """
    S = c.parent
    r = S.ring
    for _, e in c.terms:
        if e.algebra != S.algebra:
            raise MixedAlgebras(f"{e!r} is not in {S.algebra!r}")
    idems = [e for _, e in c.terms]
    merged: dict = {}
    for block in minterm_refinement(S.algebra, idems):
        probe = next(iter(block.atoms))
        coeff = r.sum(a for a, e in c.terms if probe in e.atoms)
        merged[coeff] = merged.get(coeff, frozenset()) | block.atoms
    merged.pop(r.zero, None)
    return OrthogonalForm(S, tuple((a, S.algebra.element(atoms)) for a, atoms in merged.items()))


def to_pointwise(o: OrthogonalForm) -> SpeckerElement:
    r = o.parent.ring
    vals = [r.zero] * o.parent.atom_count
    for a, e in o.parts:
        for x in e.atoms:
            vals[x] = a
    return SpeckerElement(o.parent, tuple(vals))


def from_pointwise(s: SpeckerElement) -> OrthogonalForm:
    groups: dict = {}
    for x, v in enumerate(s.values):
        groups.setdefault(v, set()).add(x)
    groups.pop(s.parent.ring.zero, None)
    alg = s.parent.algebra
    return OrthogonalForm(s.parent, tuple((v, alg.element(atoms)) for v, atoms in groups.items()))


@dataclass(frozen=True)
class FosterFunction:
    """Finite-support map ``R -> B`` whose nonzero values partition the top.

    ``cells`` holds ``(value, idempotent)`` pairs with nonempty idempotents,
    sorted by least atom; values outside the cells map to the bottom.
    """

    parent: SpeckerAlgebra
    cells: tuple

    def __post_init__(self):
        cells = tuple(sorted(self.cells, key=lambda p: p[1].least_atom()))
        object.__setattr__(self, "cells", cells)
        alg = self.parent.algebra
        covered: set = set()
        keys = set()
        for a, e in cells:
            if e.algebra != alg:
                raise MixedAlgebras(f"{e!r} is not in {alg!r}")
            if e.is_bottom:
                raise ValueError(f"cell for {a!r} is empty")
            if a in keys:
                raise ValueError(f"value {a!r} appears twice")
            if covered & e.atoms:
                raise ValueError("cells overlap")
            keys.add(a)
            covered |= e.atoms
        if len(covered) != alg.atom_count:
            raise ValueError("cells do not cover the top element")

    @classmethod
    def from_mapping(cls, parent: SpeckerAlgebra, mapping: dict) -> FosterFunction:
        r = parent.ring
        return cls(parent, tuple((r.coerce(a), e) for a, e in mapping.items() if not e.is_bottom))

    @classmethod
    def from_element(cls, s: SpeckerElement) -> FosterFunction:
        return cls(s.parent, from_pointwise(s).full_parts())

    def __call__(self, a) -> BAElement:
        a = self.parent.ring.coerce(a)
        for b, e in self.cells:
            if b == a:
                return e
        return self.parent.algebra.bottom

    def as_dict(self) -> dict:
        return dict(self.cells)

    def to_element(self) -> SpeckerElement:
        """``sum_a a * f(a)``."""
        r = self.parent.ring
        vals = [r.zero] * self.parent.atom_count
        for a, e in self.cells:
            for x in e.atoms:
                vals[x] = r.add(vals[x], a)
        return SpeckerElement(self.parent, tuple(vals))


def _same_parent(f: FosterFunction, g: FosterFunction) -> None:
    if f.parent != g.parent:
        raise MixedAlgebras(f"{f.parent!r} vs {g.parent!r}")


def _join_cells(parent: SpeckerAlgebra, pieces: Iterable[tuple]) -> FosterFunction:
    acc: dict = {}
    for a, e in pieces:
        if e.is_bottom:
            continue
        acc[a] = acc[a] | e if a in acc else e
    return FosterFunction(parent, tuple(acc.items()))


def foster_add(f: FosterFunction, g: FosterFunction) -> FosterFunction:
    """``(f + g)(a) = join of f(b) & g(c) over b + c = a``."""
    _same_parent(f, g)
    r = f.parent.ring
    return _join_cells(f.parent, ((r.add(b, c), fb & gc) for b, fb in f.cells for c, gc in g.cells))


def foster_mul(f: FosterFunction, g: FosterFunction) -> FosterFunction:
    """``(fg)(a) = join of f(b) & g(c) over bc = a``."""
    _same_parent(f, g)
    r = f.parent.ring
    return _join_cells(f.parent, ((r.mul(b, c), fb & gc) for b, fb in f.cells for c, gc in g.cells))


def foster_scalar(b, f: FosterFunction) -> FosterFunction:
    """``(bf)(a) = join of f(c) over bc = a``; colliding products are joined."""
    r = f.parent.ring
    b = r.coerce(b)
    return _join_cells(f.parent, ((r.mul(b, c), fc) for c, fc in f.cells))


def foster_neg(f: FosterFunction) -> FosterFunction:
    r = f.parent.ring
    return foster_scalar(r.neg(r.one), f)


def is_idempotent(s: SpeckerElement) -> bool:
    r = s.parent.ring
    return all(r.is_idempotent(v) for v in s.values)


@dataclass(frozen=True)
class IdempotentAlgebra:
    """``Id(S)`` as a finite Boolean algebra.

    Its atoms are the idempotents supported on one atom ``x`` of ``B`` whose
    value there is an atom ``t`` of ``Id(R)``; the pair ``(x, t)`` has index
    ``x * k + t`` with ``k`` the number of atoms of ``Id(R)``.
    """

    specker: SpeckerAlgebra
    ring_idempotents: IdempotentBA

    @property
    def k(self) -> int:
        return len(self.ring_idempotents.atoms)

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return FiniteBooleanAlgebra(self.specker.atom_count * self.k)

    @property
    def size(self) -> int:
        return self.algebra.size

    def atom_element(self, index: int) -> SpeckerElement:
        return self.to_element(self.algebra.atom(index))

    def to_element(self, e: BAElement) -> SpeckerElement:
        if e.algebra != self.algebra:
            raise MixedAlgebras(f"{e!r} is not in Id({self.specker!r})")
        S, k = self.specker, self.k
        r = S.ring
        atoms = self.ring_idempotents.atoms
        vals = [r.zero] * S.atom_count
        for q in e.atoms:
            x, t = divmod(q, k)
            vals[x] = r.add(vals[x], atoms[t])
        return SpeckerElement(S, tuple(vals))

    def from_element(self, s: SpeckerElement) -> BAElement:
        if s.parent != self.specker:
            raise MixedAlgebras(f"{s!r} is not in {self.specker!r}")
        if not is_idempotent(s):
            raise NotIdempotent(f"{s!r} is not idempotent")
        k = self.k
        out = set()
        for x, v in enumerate(s.values):
            for t in self.ring_idempotents.from_ring(v).atoms:
                out.add(x * k + t)
        return self.algebra.element(out)

    def elements(self) -> Iterator[SpeckerElement]:
        for e in self.algebra.elements():
            yield self.to_element(e)

    def canonical_inclusion(self) -> BoolHom:
        """``i_B : B -> Id(S)``, sending ``e`` to ``y_e``."""
        k = self.k
        return BoolHom(self.specker.algebra, self.algebra, tuple(q // k for q in self.algebra.atoms))


def idempotent_algebra(S: SpeckerAlgebra) -> IdempotentAlgebra:
    return IdempotentAlgebra(S, idempotent_ba(S.ring))


def _ring_join(r: RingBackend, a, b):
    return r.sub(r.add(a, b), r.mul(a, b))


def is_faithful(e: SpeckerElement) -> bool:
    """Faithfulness of an idempotent: the join of its values is 1 in ``Id(R)``."""
    if not is_idempotent(e):
        raise NotIdempotent(f"{e!r} is not idempotent")
    r = e.parent.ring
    acc = r.zero
    for v in e.values:
        acc = _ring_join(r, acc, v)
    return acc == r.one


def is_faithful_exhaustive(e: SpeckerElement) -> bool:
    """Faithfulness by scanning every scalar; finite rings only."""
    if not is_idempotent(e):
        raise NotIdempotent(f"{e!r} is not idempotent")
    z = e.parent.ring.zero
    return all(a == z or not e.scale(a).is_zero for a in e.parent.ring.elements())


@dataclass(frozen=True)
class GenerationReport:
    closure: tuple
    blocks: tuple
    all_faithful: bool
    spans: bool

    @property
    def faithful_generating(self) -> bool:
        return self.all_faithful and self.spans

    def __bool__(self):
        return self.faithful_generating


def _span_size(S: SpeckerAlgebra, gens: Sequence[SpeckerElement]) -> int:
    scalars = list(S.ring.elements())
    span = {S.zero}
    frontier = [S.zero]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                for a in scalars:
                    t = s + g.scale(a)
                    if t not in span:
                        span.add(t)
                        nxt.append(t)
        frontier = nxt
    return len(span)


def is_faithful_generating(S: SpeckerAlgebra, C: Iterable[SpeckerElement]) -> GenerationReport:
    """Decide whether the Boolean closure of ``C`` is a faithful generating algebra.

    The closure is computed inside ``Id(S)``.  Over a finite ring the span is
    closed exhaustively under addition and scalars and compared with ``|S|``;
    over an infinite indecomposable ring every idempotent is 0/1-valued, so
    the span is everything iff the closure separates all atoms of ``B``.
    """
    C = list(C)
    ida = S.idempotents
    gens = [ida.from_element(c) for c in C]
    blocks = minterm_refinement(ida.algebra, gens)
    closure = tuple(ida.to_element(e) for e in generated_subalgebra(ida.algebra, gens))
    all_faithful = all(is_faithful(c) for c in closure if not c.is_zero)
    block_elems = tuple(ida.to_element(b) for b in blocks)
    if S.ring.is_finite:
        # every closure member is a sum of blocks, so the blocks span the same module
        spans = _span_size(S, block_elems) == S.size()
    elif S.ring.is_indecomposable:
        spans = all(len(b.atoms) == 1 for b in blocks)
    else:
        raise UnsupportedCapability(
            f"generation over the infinite decomposable ring {S.ring!r} is not decidable here"
        )
    return GenerationReport(closure, block_elems, all_faithful, spans)


def quotient_mod_prime(S: SpeckerAlgebra, p) -> tuple[SpeckerAlgebra, object]:
    """``S / pS`` as the Boolean power of ``R / (p)`` over the same ``B``.

    Returns the quotient algebra and the projection, which reduces values
    atomwise.
    """
    qring, reduce_ = S.ring.quotient(p)
    T = SpeckerAlgebra(qring, S.algebra)

    def project(s: SpeckerElement) -> SpeckerElement:
        if s.parent != S:
            raise MixedAlgebras(f"{s!r} is not in {S!r}")
        return SpeckerElement(T, tuple(reduce_(v) for v in s.values))

    return T, project
