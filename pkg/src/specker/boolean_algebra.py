"""Finite Boolean algebras presented by their atoms.

A finite Boolean algebra with ``n`` atoms is the power set of
``{0, ..., n-1}``.  Homomorphisms are stored dually, as maps from the atoms
of the target to the atoms of the source, which is finite Stone duality
made literal: ``apply(e) = {q : dual_map[q] in e}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import MixedAlgebras

__all__ = [
    "FiniteBooleanAlgebra",
    "BAElement",
    "BoolHom",
    "minterm_refinement",
    "generated_subalgebra",
    "enumerate_homs",
    "coproduct",
    "mediating_hom",
    "dm_completion",
    "complete_join",
    "complete_meet",
    "is_complete",
    "is_isomorphic",
    "find_isomorphism",
]


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int

    def __post_init__(self):
        if isinstance(self.atom_count, bool) or not isinstance(self.atom_count, int):
            raise TypeError("atom_count must be an integer")
        if self.atom_count < 1:
            raise ValueError("a Boolean algebra needs at least one atom (1 != 0)")

    def __repr__(self):
        return f"FiniteBooleanAlgebra({self.atom_count})"

    @property
    def atoms(self) -> range:
        return range(self.atom_count)

    @property
    def size(self) -> int:
        return 2 ** self.atom_count

    @property
    def top(self) -> BAElement:
        return BAElement(self, frozenset(self.atoms))

    @property
    def bottom(self) -> BAElement:
        return BAElement(self, frozenset())

    def element(self, atoms: Iterable[int]) -> BAElement:
        return BAElement(self, frozenset(atoms))

    def atom(self, index: int) -> BAElement:
        return BAElement(self, frozenset((index,)))

    def elements(self) -> Iterator[BAElement]:
        """All ``2**atom_count`` elements, ordered by bitmask."""
        n = self.atom_count
        for mask in range(1 << n):
            yield BAElement(self, frozenset(i for i in range(n) if mask >> i & 1))


@dataclass(frozen=True)
class BAElement:
    algebra: FiniteBooleanAlgebra
    atoms: frozenset

    def __post_init__(self):
        if not isinstance(self.atoms, frozenset):
            object.__setattr__(self, "atoms", frozenset(self.atoms))
        for a in self.atoms:
            if not (isinstance(a, int) and 0 <= a < self.algebra.atom_count):
                raise ValueError(f"atom {a!r} outside 0..{self.algebra.atom_count - 1}")

    def __repr__(self):
        return "{" + ",".join(map(str, sorted(self.atoms))) + "}"

    def _check(self, other: BAElement) -> None:
        if not isinstance(other, BAElement):
            raise TypeError(f"expected BAElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise MixedAlgebras(f"{self.algebra!r} vs {other.algebra!r}")

    def meet(self, other: BAElement) -> BAElement:
        self._check(other)
        return BAElement(self.algebra, self.atoms & other.atoms)

    def join(self, other: BAElement) -> BAElement:
        self._check(other)
        return BAElement(self.algebra, self.atoms | other.atoms)

    def complement(self) -> BAElement:
        return BAElement(self.algebra, frozenset(self.algebra.atoms) - self.atoms)

    def leq(self, other: BAElement) -> bool:
        self._check(other)
        return self.atoms <= other.atoms

    __and__ = meet
    __or__ = join
    __invert__ = complement
    __le__ = leq

    def __ge__(self, other: BAElement) -> bool:
        return other.leq(self)

    @property
    def is_bottom(self) -> bool:
        return not self.atoms

    @property
    def is_top(self) -> bool:
        return len(self.atoms) == self.algebra.atom_count

    def least_atom(self) -> int:
        return min(self.atoms) if self.atoms else self.algebra.atom_count

    def sorted_atoms(self) -> list[int]:
        return sorted(self.atoms)


def _same_algebra(elements: Sequence[BAElement], algebra: FiniteBooleanAlgebra) -> None:
    for e in elements:
        if e.algebra != algebra:
            raise MixedAlgebras(f"{e!r} belongs to {e.algebra!r}, expected {algebra!r}")


def minterm_refinement(algebra: FiniteBooleanAlgebra, gens: Sequence[BAElement]) -> list[BAElement]:
    """Atoms of the subalgebra generated by ``gens``.

    Two atoms land in the same block iff they have the same membership
    pattern across the generators.  Blocks come back sorted by least atom.
    """
    gens = list(gens)
    _same_algebra(gens, algebra)
    blocks: dict[tuple, set] = {}
    for x in algebra.atoms:
        pattern = tuple(x in g.atoms for g in gens)
        blocks.setdefault(pattern, set()).add(x)
    out = [BAElement(algebra, frozenset(b)) for b in blocks.values()]
    out.sort(key=BAElement.least_atom)
    return out


def generated_subalgebra(algebra: FiniteBooleanAlgebra, gens: Sequence[BAElement]) -> list[BAElement]:
    """Every element of the subalgebra generated by ``gens`` (unions of minterms)."""
    blocks = minterm_refinement(algebra, gens)
    out = []
    for mask in range(1 << len(blocks)):
        atoms = frozenset().union(*(b.atoms for i, b in enumerate(blocks) if mask >> i & 1))
        out.append(BAElement(algebra, atoms))
    return out


@dataclass(frozen=True)
class BoolHom:
    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    dual_map: tuple

    def __post_init__(self):
        dm = tuple(self.dual_map)
        object.__setattr__(self, "dual_map", dm)
        if len(dm) != self.target.atom_count:
            raise ValueError(f"dual map needs {self.target.atom_count} entries, got {len(dm)}")
        for p in dm:
            if not (isinstance(p, int) and 0 <= p < self.source.atom_count):
                raise ValueError(f"dual map entry {p!r} is not an atom of the source")

    @classmethod
    def identity(cls, algebra: FiniteBooleanAlgebra) -> BoolHom:
        return cls(algebra, algebra, tuple(algebra.atoms))

    def apply(self, e: BAElement) -> BAElement:
        if e.algebra != self.source:
            raise MixedAlgebras(f"{e!r} is not in the source {self.source!r}")
        return BAElement(self.target, frozenset(q for q, p in enumerate(self.dual_map) if p in e.atoms))

    __call__ = apply

    def compose(self, first: BoolHom) -> BoolHom:
        """``self after first``."""
        if first.target != self.source:
            raise MixedAlgebras("homs are not composable")
        return BoolHom(first.source, self.target, tuple(first.dual_map[p] for p in self.dual_map))

    @property
    def is_injective(self) -> bool:
        return len(set(self.dual_map)) == self.source.atom_count

    @property
    def is_surjective(self) -> bool:
        return len(set(self.dual_map)) == len(self.dual_map)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse(self) -> BoolHom:
        if not self.is_isomorphism:
            raise ValueError("not an isomorphism")
        inv = [0] * self.source.atom_count
        for q, p in enumerate(self.dual_map):
            inv[p] = q
        return BoolHom(self.target, self.source, tuple(inv))


def enumerate_homs(source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra) -> list[BoolHom]:
    """All homs ``source -> target``, lexicographic in the dual map."""
    return [
        BoolHom(source, target, dm)
        for dm in itertools.product(range(source.atom_count), repeat=target.atom_count)
    ]


def coproduct(a: FiniteBooleanAlgebra, b: FiniteBooleanAlgebra) -> tuple[FiniteBooleanAlgebra, BoolHom, BoolHom]:
    """Coproduct with its two coprojections.

    Atom ``i * b.atom_count + j`` of the result is the pair ``(i, j)``.
    """
    c = FiniteBooleanAlgebra(a.atom_count * b.atom_count)
    nb = b.atom_count
    left = BoolHom(a, c, tuple(q // nb for q in c.atoms))
    right = BoolHom(b, c, tuple(q % nb for q in c.atoms))
    return c, left, right


def mediating_hom(
    a: FiniteBooleanAlgebra, b: FiniteBooleanAlgebra, f: BoolHom, g: BoolHom
) -> BoolHom:
    """The unique hom out of ``coproduct(a, b)`` restricting to ``f`` and ``g``."""
    if f.source != a or g.source != b or f.target != g.target:
        raise MixedAlgebras("f and g must share a target and start at a and b")
    c, _, _ = coproduct(a, b)
    nb = b.atom_count
    return BoolHom(c, f.target, tuple(p * nb + r for p, r in zip(f.dual_map, g.dual_map)))


def complete_join(algebra: FiniteBooleanAlgebra, family: Iterable[BAElement]) -> BAElement:
    family = list(family)
    _same_algebra(family, algebra)
    return BAElement(algebra, frozenset().union(*(e.atoms for e in family)))


def complete_meet(algebra: FiniteBooleanAlgebra, family: Iterable[BAElement]) -> BAElement:
    family = list(family)
    _same_algebra(family, algebra)
    atoms = frozenset(algebra.atoms)
    for e in family:
        atoms &= e.atoms
    return BAElement(algebra, atoms)


def is_complete(algebra: FiniteBooleanAlgebra, family_limit: int = 1 << 8) -> bool:
    """Check that every family has a least upper and greatest lower bound.

    Families are enumerated exhaustively while there are at most
    ``family_limit`` of them.  Past that the check covers the empty family
    and all pairs, which suffices for a finite lattice.
    """
    elements = list(algebra.elements())

    def lub_ok(family):
        j = complete_join(algebra, family)
        m = complete_meet(algebra, family)
        if not all(e <= j and m <= e for e in family):
            return False
        uppers = [u for u in elements if all(e <= u for e in family)]
        lowers = [l for l in elements if all(l <= e for e in family)]
        return all(j <= u for u in uppers) and all(l <= m for l in lowers)

    if 2 ** len(elements) <= family_limit:
        families = (
            [e for i, e in enumerate(elements) if mask >> i & 1] for mask in range(1 << len(elements))
        )
    else:
        families = itertools.chain([[]], ([x, y] for x in elements for y in elements))
    return all(lub_ok(f) for f in families)


def dm_completion(algebra: FiniteBooleanAlgebra) -> FiniteBooleanAlgebra:
    """Dedekind-MacNeille completion; finite Boolean algebras are already complete."""
    return FiniteBooleanAlgebra(algebra.atom_count)


def is_isomorphic(a: FiniteBooleanAlgebra, b: FiniteBooleanAlgebra) -> bool:
    return a.atom_count == b.atom_count


def find_isomorphism(a: FiniteBooleanAlgebra, b: FiniteBooleanAlgebra) -> BoolHom | None:
    """First bijective hom ``a -> b`` found by enumeration, or None."""
    for h in enumerate_homs(a, b):
        if h.is_isomorphism:
            return h
    return None
