import pytest

from src.algebra.endofunctor import (
    TAlgebra, algebra_category, coalgebra_category, initial_algebra, is_faithful, terminal_coalgebra,
)
from src.category.catalog import chain, cyclic_monoid, monotone_map, walking_arrow
from src.category.core import constant_functor, identity_functor, opposite_category, opposite_functor
from src.category.laws import validate
from src.errors import NotEndofunctor


def test_identity_algebras_on_walking_arrow():
    T = identity_functor(walking_arrow())
    algebras = algebra_category(T)
    assert algebras.category.n_objects == 2
    assert algebras.category.n_morphisms == 3
    assert algebras.algebras == (TAlgebra(0, 0), TAlgebra(1, 1))
    assert validate(algebras.category).ok
    assert validate(algebras.forgetful).ok
    assert is_faithful(algebras.forgetful)


def test_coalgebras_are_dual_algebras():
    C = chain(2)
    T = constant_functor(C, C, 0)
    coalgebras = coalgebra_category(T)
    dual = algebra_category(opposite_functor(T))
    assert coalgebras.category == opposite_category(dual.category)
    assert validate(coalgebras.category).ok
    assert validate(coalgebras.forgetful).ok


def test_algebras_of_a_constant_functor():
    C = chain(2)
    algebras = algebra_category(constant_functor(C, C, 0))
    # every object receives an arrow from 0
    assert [A.carrier for A in algebras.algebras] == [0, 1]
    report = initial_algebra(constant_functor(C, C, 0))
    assert report.present
    assert report.algebra == TAlgebra(0, C.identity[0])
    assert report.ok


def test_terminal_coalgebra_of_a_constant_functor():
    C = chain(2)
    report = terminal_coalgebra(constant_functor(C, C, 0))
    assert report.present
    assert report.algebra.carrier == 0
    assert report.structure_invertible


def test_missing_initial_algebra_is_acceptable():
    T = identity_functor(cyclic_monoid(2))
    algebras = algebra_category(T)
    assert algebras.category.n_objects == 2
    # structures must agree, so only endomorphisms survive
    assert algebras.category.n_morphisms == 4
    report = initial_algebra(T)
    assert not report.present
    assert report.ok


@pytest.mark.parametrize("C", [walking_arrow(), chain(3), cyclic_monoid(3)])
def test_forgetful_functors_are_faithful(C):
    for T in (identity_functor(C), constant_functor(C, C, C.n_objects - 1)):
        assert is_faithful(algebra_category(T).forgetful)
        assert is_faithful(coalgebra_category(T).forgetful)


def test_algebras_need_an_endofunctor():
    F = monotone_map(chain(2), chain(3), [0, 1])
    with pytest.raises(NotEndofunctor):
        algebra_category(F)
    with pytest.raises(NotEndofunctor):
        coalgebra_category(F)
