import itertools
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.category.catalog import chain, cyclic_monoid, parallel_pair, walking_arrow
from src.category.core import opposite_category
from src.finset.diagrams import enumerate_diagrams, validate_diagram
from src.finset.sets import canonical_set
from src.yoneda.exponentials import ccc_exponential_iso, ccc_naturality_check
from src.yoneda.presheaves import (
    check_embedding, hom_functor, yoneda_bijection, yoneda_embedding, yoneda_naturality_check,
)

CATEGORIES = (walking_arrow(), parallel_pair(), cyclic_monoid(2), cyclic_monoid(3), chain(3))


@lru_cache(maxsize=None)
def presheaves_on(index: int):
    return tuple(enumerate_diagrams(opposite_category(CATEGORIES[index]), 2))


@st.composite
def presheaves(draw):
    index = draw(st.integers(0, len(CATEGORIES) - 1))
    return CATEGORIES[index], draw(st.sampled_from(presheaves_on(index)))


@given(presheaves())
def test_yoneda_bijection_on_random_presheaves(case):
    """Test |Nat(y c, F)| = |F(c)| with both round trips at every object."""
    C, F = case
    for c in C.objects:
        bijection = yoneda_bijection(F, c, C)
        count, size = bijection.cardinalities
        assert count == size
        assert bijection.round_trips
        assert sorted(bijection.forward) == list(range(size))


@given(presheaves())
def test_yoneda_bijection_is_natural(case):
    C, F = case
    ok, witness = yoneda_naturality_check(F, C)
    assert ok, witness


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: f"{C.n_objects}x{C.n_morphisms}")
def test_representables_are_presheaves(C):
    for c in C.objects:
        yc = hom_functor(C, c)
        assert validate_diagram(yc).ok
        assert [len(A) for A in yc.on_objects] == [len(C.hom(d, c)) for d in C.objects]


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: f"{C.n_objects}x{C.n_morphisms}")
def test_embedding_is_full_and_faithful(C):
    report = check_embedding(yoneda_embedding(C))
    assert report.ok
    assert report.functorial and report.full and report.faithful
    assert all(homs == nats for _, _, homs, nats in report.counts)


def test_representable_elements_are_arrows():
    C = parallel_pair()
    y = hom_functor(C, 1)
    bijection = yoneda_bijection(y, 1, C)
    # Nat(y y, y y) has one element per endomorphism of y
    assert bijection.cardinalities == (1, 1)
    assert y.on_objects[0].elements == ("f", "g")


def test_presheaf_must_live_on_the_opposite():
    C = walking_arrow()
    F = next(iter(enumerate_diagrams(C, 1)))
    with pytest.raises(ValueError):
        yoneda_bijection(F, 0, C)


@pytest.mark.parametrize("sizes", list(itertools.product(range(3), repeat=3)))
def test_exponential_law_round_trips(sizes):
    a, b, c = (canonical_set(n) for n in sizes)
    iso = ccc_exponential_iso(a, b, c)
    assert len(iso.nested.obj) == len(iso.flat.obj) == sizes[0] ** (sizes[1] * sizes[2])
    assert iso.round_trips


def test_exponential_law_is_natural():
    report = ccc_naturality_check(2)
    assert report.ok, report.witness
    assert report.squares > 0
