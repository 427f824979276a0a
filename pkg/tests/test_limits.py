import itertools
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.category.catalog import (
    chain, cyclic_monoid, discrete, enumerate_categories, parallel_pair, poset, walking_arrow,
)
from src.category.core import Functor, empty_category
from src.errors import DomainMismatch
from src.finset.diagrams import Diagram, enumerate_diagrams
from src.finset.sets import FinFn, canonical_set, compose_fns, identity_fn
from src.limits.cones import (
    Cone, colimit_by_search, cone_isomorphism, discrete_diagram, enumerate_cones, is_cone, is_limit,
    limit_by_search, universal_cones,
)
from src.limits.finset_limits import finset_colimit, finset_limit
from src.limits.preorder import complete_preorder_check, missing_generating_limit

SHAPES = (
    discrete(1), discrete(2), discrete(3), walking_arrow(), parallel_pair(), cyclic_monoid(2),
    poset(3, [(0, 1)]),
)


@lru_cache(maxsize=None)
def diagrams_on(index: int):
    return tuple(enumerate_diagrams(SHAPES[index], 3))


@st.composite
def diagrams(draw):
    index = draw(st.integers(0, len(SHAPES) - 1))
    return draw(st.sampled_from(diagrams_on(index)))


def matching_families(D: Diagram):
    J = D.shape
    return [
        family for family in itertools.product(*(range(len(A)) for A in D.on_objects))
        if all(D.on_morphisms[f](family[J.src[f]]) == family[J.dst[f]] for f in J.morphisms)
    ]


def glued_components(D: Diagram) -> int:
    """Components of the disjoint union under x ~ D(f)(x)."""
    J = D.shape
    graph = nx.Graph()
    graph.add_nodes_from((c, a) for c in J.objects for a in range(len(D.on_objects[c])))
    for f in J.morphisms:
        fn = D.on_morphisms[f]
        graph.add_edges_from(((J.src[f], x), (J.dst[f], fn(x))) for x in range(len(fn.dom)))
    return nx.number_connected_components(graph)


@pytest.fixture
def cospan_diagram():
    J = poset(3, [(0, 2), (1, 2)])
    A, B, C = canonical_set(3), canonical_set(2), canonical_set(2)
    sets = [A, B, C]
    maps = []
    for f in J.morphisms:
        if J.is_identity(f):
            maps.append(identity_fn(sets[J.src[f]]))
        elif J.src[f] == 0:
            maps.append(FinFn(A, C, (0, 0, 1)))
        else:
            maps.append(FinFn(B, C, (0, 0)))
    return Diagram(J, sets, maps)


@settings(max_examples=100)
@given(diagrams())
def test_limit_is_the_set_of_matching_families(D):
    """Test |lim D| equals the brute-force count of compatible families."""
    L = finset_limit(D)
    assert list(L.families) == matching_families(D)
    J = D.shape
    for f in J.morphisms:
        assert compose_fns(D.on_morphisms[f], L.legs[J.src[f]]) == L.legs[J.dst[f]]


@settings(max_examples=100)
@given(diagrams())
def test_colimit_glues_along_the_arrows(D):
    L = finset_colimit(D)
    assert len(L.obj) == glued_components(D)
    J = D.shape
    for f in J.morphisms:
        assert compose_fns(L.legs[J.dst[f]], D.on_morphisms[f]) == L.legs[J.src[f]]


@given(diagrams())
def test_limit_factors_its_own_cone(D):
    L = finset_limit(D)
    assert L.factor(L.legs, L.obj) == identity_fn(L.obj)
    C = finset_colimit(D)
    assert C.factor(C.legs, C.obj) == identity_fn(C.obj)


def test_cospan_limit(cospan_diagram):
    L = finset_limit(cospan_diagram)
    assert len(L.obj) == 4
    assert len(finset_colimit(cospan_diagram).obj) == 2


def test_limit_of_empty_shape_is_a_point():
    D = Diagram(empty_category(), [], [])
    assert len(finset_limit(D).obj) == 1
    assert len(finset_colimit(D).obj) == 0
    with pytest.raises(DomainMismatch):
        finset_limit(D).factor([])


def test_factor_rejects_non_cones(cospan_diagram):
    L = finset_limit(cospan_diagram)
    one = canonical_set(1)
    legs = [FinFn(one, A, (0,)) for A in cospan_diagram.on_objects[:2]] + [FinFn(one, canonical_set(2), (1,))]
    with pytest.raises(ValueError):
        L.factor(legs)


def test_products_in_a_chain_are_meets():
    C = chain(3)
    D = discrete_diagram(C, (1, 2))
    cone = limit_by_search(D)
    assert cone.apex == 1
    assert is_limit(D, cone)
    cocone = colimit_by_search(D)
    assert cocone.apex == 2


def test_missing_limit_is_none():
    P = parallel_pair()
    assert limit_by_search(discrete_diagram(P, (0, 1))) is None


def test_terminal_object_as_empty_limit():
    C = chain(3)
    cone = limit_by_search(Functor(empty_category(), C, (), ()))
    assert cone == Cone(2, ())
    assert colimit_by_search(Functor(empty_category(), C, (), ())).apex == 0


def test_cones_are_cones():
    C = chain(3)
    D = Functor(walking_arrow(), C, (0, 2), (C.identity[0], C.identity[2], C.hom(0, 2)[0]))
    cones = list(enumerate_cones(D))
    assert cones
    assert all(is_cone(D, cone) for cone in cones)
    assert [cone.apex for cone in cones] == sorted(cone.apex for cone in cones)


def test_universal_cones_are_unique_up_to_iso():
    C = cyclic_monoid(2)
    D = discrete_diagram(C, (0,))
    found = universal_cones(D)
    assert found == [Cone(0, (0,)), Cone(0, (1,))]
    u = cone_isomorphism(D, found[0], found[1])
    assert u == 1
    assert C.compose(found[1].legs[0], u) == found[0].legs[0]


def test_chain_is_a_complete_preorder():
    report = complete_preorder_check(chain(3))
    assert report.complete
    assert report.preorder
    assert report.hom_powers
    assert all(check.bijective for check in report.hom_powers)
    assert report.ok


@pytest.mark.parametrize("C, missing", [
    (parallel_pair(), ("terminal",)),
    (discrete(2), ("terminal",)),
    (cyclic_monoid(2), ("terminal",)),
])
def test_incomplete_categories_are_vacuous(C, missing):
    assert missing_generating_limit(C) == missing
    report = complete_preorder_check(C)
    assert not report.complete
    assert report.ok


def test_complete_preorder_on_small_categories():
    for C in enumerate_categories(2, 4):
        assert complete_preorder_check(C).ok


@pytest.mark.slow
def test_complete_preorder_exhaustive():
    """Test every category with up to 3 objects and 8 morphisms."""
    for C in enumerate_categories(3, 8):
        report = complete_preorder_check(C)
        assert report.ok, C
