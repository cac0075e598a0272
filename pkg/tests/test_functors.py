import itertools

import pytest

from specker import FiniteBooleanAlgebra, SpeckerAlgebra
from specker.boolean_algebra import BoolHom, enumerate_homs
from specker.errors import RingMismatch, TargetMismatch
from specker.functors import (
    AlgebraHom,
    base_algebra,
    counit,
    enumerate_algebra_homs,
    equivalence_report,
    functor_I,
    functor_I_hom,
    functor_S_hom,
    functor_S_obj,
    ump_lift,
    unit,
    unit_counit,
)
from specker.rings import QQ, ZZ, Modular, Product

B1, B2, B3 = (FiniteBooleanAlgebra(n) for n in (1, 2, 3))


def is_algebra_hom(alpha, elements):
    S, T = alpha.source, alpha.target
    if alpha(S.one) != T.one:
        return False
    for s, t in itertools.product(elements, repeat=2):
        if alpha(s + t) != alpha(s) + alpha(t) or alpha(s * t) != alpha(s) * alpha(t):
            return False
    return all(alpha(s.scale(a)) == alpha(s).scale(a) for s in elements for a in S.ring.idempotents())


def test_functor_S_obj_examples():
    S = functor_S_obj(B1, ZZ)
    assert S == base_algebra(ZZ)
    assert functor_S_obj(B2, Modular(6)).size() == 36
    assert functor_S_obj(B2, QQ).element(("1/2", 3)).values == (QQ.coerce("1/2"), 3)


def test_functor_S_hom_examples():
    R = Modular(4)
    assert functor_S_hom(BoolHom.identity(B2), R) == AlgebraHom.identity(SpeckerAlgebra(R, B2))
    collapse = BoolHom(B2, B1, (0,))
    ev = functor_S_hom(collapse, R)
    for s in SpeckerAlgebra(R, B2).elements():
        assert ev(s).values == (s(0),)


def test_functor_I_examples():
    assert functor_I(SpeckerAlgebra(ZZ, B3)).atom_count == 3
    assert functor_I(SpeckerAlgebra(Modular(6), B2)).atom_count == 4
    S = SpeckerAlgebra(Modular(6), B2)
    assert functor_I_hom(AlgebraHom.identity(S)) == BoolHom.identity(functor_I(S))


def test_ump_lift_examples():
    S = SpeckerAlgebra(ZZ, B2)
    assert ump_lift(unit(B2, ZZ), S) == AlgebraHom.identity(S)
    ev0 = ump_lift(BoolHom(B2, B1, (0,)), base_algebra(ZZ))
    assert ev0(S.element((7, -3))).values == (7,)
    T = base_algebra(Modular(6))
    alpha = ump_lift(BoolHom(B2, functor_I(T), (0, 1)), T)
    S6 = SpeckerAlgebra(Modular(6), B2)
    assert alpha(S6.y(B2.atom(0))).values == (3,)
    assert alpha(S6.y(B2.atom(1))).values == (4,)
    assert is_algebra_hom(alpha, list(S6.elements()))
    with pytest.raises(TargetMismatch):
        ump_lift(BoolHom(B2, B3, (0, 1, 1)), T)


def test_unit_counit_examples():
    for n in (1, 2, 3):
        uc = unit_counit(FiniteBooleanAlgebra(n), SpeckerAlgebra(ZZ, FiniteBooleanAlgebra(n)))
        assert uc.unit_is_iso and uc.counit_is_iso and uc.counit_kernel is None
    S = SpeckerAlgebra(Modular(6), B2)
    uc = unit_counit(B2, S)
    assert uc.unit.is_injective and not uc.unit.is_surjective
    assert not uc.counit_is_iso
    assert uc.counit_kernel is not None and not uc.counit_kernel.is_zero
    assert uc.counit(uc.counit_kernel).is_zero
    images = {uc.counit(t) for t in uc.counit.source.elements()}
    assert len(images) == S.size()


def test_enumerate_algebra_homs_examples():
    assert len(enumerate_algebra_homs(SpeckerAlgebra(ZZ, B2), base_algebra(ZZ))) == 2
    assert len(enumerate_algebra_homs(SpeckerAlgebra(Modular(6), B2), base_algebra(Modular(6)))) == 4
    assert len(enumerate_algebra_homs(SpeckerAlgebra(QQ, B2), base_algebra(QQ))) == 2
    with pytest.raises(RingMismatch):
        enumerate_algebra_homs(SpeckerAlgebra(ZZ, B2), base_algebra(QQ))


def test_equivalence_report_examples():
    assert equivalence_report(ZZ, [1, 2, 3]).holds
    rep = equivalence_report(Modular(6), [1, 2])
    assert not rep.holds and rep.consistent
    rep = equivalence_report(Product(ZZ, ZZ), [1])
    assert not rep.holds and rep.rows[0].counit_kernel is not None


@pytest.mark.parametrize("R", [Modular(4), Modular(6)])
@pytest.mark.parametrize("n", [1, 2])
def test_triangle_identities(R, n):
    B = FiniteBooleanAlgebra(n)
    S = SpeckerAlgebra(R, B)
    idS = functor_I(S)
    first = functor_I_hom(counit(S)).compose(unit(idS, R))
    assert first == BoolHom.identity(idS)
    second = counit(S).compose(functor_S_hom(unit(B, R), R))
    assert second == AlgebraHom.identity(S)
    assert all(second(s) == s for s in S.elements())


@pytest.mark.parametrize("R,n,m", [(Modular(6), 2, 1), (Modular(4), 2, 2), (ZZ, 3, 2), (Modular(6), 1, 2)])
def test_ump_bijection(R, n, m):
    S = SpeckerAlgebra(R, FiniteBooleanAlgebra(n))
    T = SpeckerAlgebra(R, FiniteBooleanAlgebra(m))
    iB = unit(S.algebra, R)
    sigmas = enumerate_homs(S.algebra, functor_I(T))
    for sigma in sigmas:
        assert functor_I_hom(ump_lift(sigma, T)).compose(iB) == sigma
    homs = enumerate_algebra_homs(S, T)
    assert len(homs) == len(sigmas)
    for alpha in homs:
        assert ump_lift(functor_I_hom(alpha).compose(iB), T) == alpha
    if S.size() is not None:
        elems = list(S.elements())
        assert all(is_algebra_hom(a, elems) for a in homs)


def test_functor_laws():
    R = Modular(6)
    for tau in enumerate_homs(B2, B2):
        for sigma in enumerate_homs(B2, B1):
            assert functor_S_hom(sigma.compose(tau), R) == functor_S_hom(sigma, R).compose(functor_S_hom(tau, R))
    S = SpeckerAlgebra(R, B2)
    T = SpeckerAlgebra(R, B1)
    U = base_algebra(R)
    for alpha in enumerate_algebra_homs(S, T):
        for beta in enumerate_algebra_homs(T, U):
            composite = beta.compose(alpha)
            assert functor_I_hom(composite) == functor_I_hom(beta).compose(functor_I_hom(alpha))
            assert all(composite(s) == beta(alpha(s)) for s in S.elements())
    assert functor_S_hom(BoolHom.identity(B3), R) == AlgebraHom.identity(SpeckerAlgebra(R, B3))


def test_infinite_iso_rule():
    S = SpeckerAlgebra(ZZ, B3)
    assert AlgebraHom.identity(S).is_isomorphism()
    P = SpeckerAlgebra(Product(ZZ, ZZ), B1)
    assert not counit(P).is_isomorphism()
