import pytest

from src.category.catalog import chain, discrete, monotone_map, parallel_pair, walking_arrow
from src.category.core import constant_functor, identity_functor, unit_category
from src.errors import DomainMismatch, PointwiseKanMissing
from src.finset.diagrams import Diagram, validate_diagram
from src.finset.sets import canonical_set, identity_fn
from src.kan.checks import (
    kan_global_check, kan_isomorphism, kan_local_check, kan_local_check_left, kan_local_check_sets,
    postcompose_kan, representable_preservation,
)
from src.kan.pointwise import left_kan, left_kan_sets, right_kan_pointwise, right_kan_sets
from src.limits.cones import colimit_by_search, discrete_diagram, limit_by_search


@pytest.fixture
def to_point():
    return constant_functor(discrete(2), unit_category(), 0)


@pytest.fixture
def inclusion():
    return monotone_map(chain(2), chain(3), [0, 1])


def test_right_extension_to_a_point_is_the_limit(to_point):
    F = discrete_diagram(chain(3), (1, 2))
    result = right_kan_pointwise(F, to_point)
    assert result.extension.omap == (limit_by_search(F).apex,)
    assert kan_local_check(result, F, to_point).ok


def test_left_extension_to_a_point_is_the_colimit(to_point):
    F = discrete_diagram(chain(3), (0, 1))
    result = left_kan(F, to_point)
    assert result.side == "left"
    assert result.extension.omap == (colimit_by_search(F).apex,)
    assert kan_local_check_left(result).ok


def test_right_extension_along_inclusion_is_clamping(inclusion):
    F = identity_functor(chain(2))
    result = right_kan_pointwise(F, inclusion)
    assert result.extension.omap == (0, 1, 1)
    report = kan_local_check(result, F, inclusion)
    assert report.ok
    assert report.form == "cones+hom"
    assert all(n_sigma == n_delta for n_sigma, n_delta in report.counts)


def test_extension_is_unique_up_to_iso(inclusion):
    F = identity_functor(chain(2))
    result = right_kan_pointwise(F, inclusion)
    sigma = kan_isomorphism(result, result)
    assert sigma is not None
    assert sigma.components == tuple(chain(2).identity[x] for x in result.extension.omap)


def test_identity_postcomposition_keeps_the_extension(inclusion):
    F = identity_functor(chain(2))
    result = postcompose_kan(right_kan_pointwise(F, inclusion), identity_functor(chain(2)))
    assert kan_local_check(result, F, inclusion).ok


def test_candidate_must_extend_the_given_functor(inclusion):
    F = identity_functor(chain(2))
    result = right_kan_pointwise(F, inclusion)
    with pytest.raises(DomainMismatch):
        kan_local_check(result, F, monotone_map(chain(2), chain(3), [0, 2]))


def test_missing_pointwise_limit(to_point):
    F = discrete_diagram(parallel_pair(), (0, 1))
    assert right_kan_pointwise(F, to_point) is None
    with pytest.raises(DomainMismatch):
        right_kan_pointwise(identity_functor(chain(2)), to_point)


def test_representables_are_preserved(inclusion):
    result = right_kan_pointwise(identity_functor(chain(2)), inclusion)
    for e in chain(2).objects:
        report = representable_preservation(result, e)
        assert report.ok, report


def test_global_check_on_small_shapes(inclusion):
    report = kan_global_check(inclusion, chain(2))
    assert report.ok
    assert report.counts_match
    assert report.adjunction.ok


def test_global_check_needs_pointwise_limits(to_point):
    with pytest.raises(PointwiseKanMissing):
        kan_global_check(to_point, parallel_pair())


@pytest.fixture
def point_diagram():
    """A two-element set sitting over the source of the walking arrow."""
    two = canonical_set(2)
    D = Diagram(discrete(1), [two], [identity_fn(two)])
    p = constant_functor(discrete(1), walking_arrow(), 0)
    return D, p


def test_set_valued_right_extension(point_diagram):
    D, p = point_diagram
    result = right_kan_sets(D, p)
    assert [len(A) for A in result.extension.on_objects] == [2, 1]
    assert validate_diagram(result.extension).ok
    assert kan_local_check_sets(result, 2).ok


def test_set_valued_left_extension(point_diagram):
    D, p = point_diagram
    result = left_kan_sets(D, p)
    assert result.side == "left"
    assert [len(A) for A in result.extension.on_objects] == [2, 2]
    assert validate_diagram(result.extension).ok
    f = walking_arrow().hom(0, 1)[0]
    assert result.extension.on_morphisms[f].table == (0, 1)


def test_set_valued_extension_needs_matching_shape(point_diagram):
    D, _ = point_diagram
    with pytest.raises(DomainMismatch):
        right_kan_sets(D, identity_functor(chain(2)))
