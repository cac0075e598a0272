"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from specker import FiniteBooleanAlgebra, SpeckerAlgebra
from specker.rings import Integers, Modular, Product, Rationals

RING_VALUES = {
    Integers: lambda r: st.integers(-30, 30),
    Rationals: lambda r: st.fractions(max_denominator=12).filter(lambda q: abs(q) <= 30),
    Modular: lambda r: st.integers(0, r.modulus - 1),
}


def values(ring):
    if isinstance(ring, Product):
        return st.tuples(values(ring.left), values(ring.right))
    return RING_VALUES[type(ring)](ring)


rings = st.sampled_from(
    [Integers(), Rationals(), Modular(4), Modular(6), Modular(5), Modular(12), Product(Modular(2), Modular(3))]
)
ordered_rings = st.sampled_from([Integers(), Rationals()])


def algebras(max_atoms=4):
    return st.integers(1, max_atoms).map(FiniteBooleanAlgebra)


def ba_elements(algebra):
    return st.frozensets(st.integers(0, algebra.atom_count - 1)).map(algebra.element)


def specker_algebras(ring_strategy=rings, max_atoms=3):
    return st.builds(SpeckerAlgebra, ring_strategy, algebras(max_atoms))


def elements(S):
    return st.lists(values(S.ring), min_size=S.atom_count, max_size=S.atom_count).map(S.element)


@st.composite
def algebra_with_elements(draw, ring_strategy=rings, max_atoms=3, count=2):
    S = draw(specker_algebras(ring_strategy, max_atoms))
    return (S, *[draw(elements(S)) for _ in range(count)])


def as_fraction(v):
    return Fraction(v)
