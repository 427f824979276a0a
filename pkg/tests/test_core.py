import itertools

import pytest

from src.category.catalog import (
    chain, cyclic_monoid, discrete, enumerate_categories, monoid, monotone_map, parallel_pair,
    poset, walking_arrow,
)
from src.category.constructions import (
    cat_terminal_initial_witness, comma_category, curry_functor, diagonal_functor, functor_category,
    product_category, uncurry_functor,
)
from src.category.core import (
    FinCat, Functor, NatTrans, compose_functors, constant_functor, identity_functor, identity_nattrans,
    inverse, is_isomorphism, opposite_category, opposite_functor, opposite_nattrans, point_functor,
    unit_category, vertical_compose, whisker_left, whisker_right,
)
from src.category.enumerate import count_functors, enumerate_functors, enumerate_nattrans
from src.category.laws import require_valid, validate
from src.errors import DomainMismatch, InvalidStructure, NotAProductDomain


@pytest.fixture
def corpus(small_categories):
    return small_categories + list(enumerate_categories(2, 4))


def test_catalog_categories_are_valid(small_categories):
    """Test that every handcrafted category passes the category laws."""
    for C in small_categories:
        assert validate(C).ok, C


def test_generated_corpus_is_large_enough():
    """Test the exhaustive generator yields a usable corpus of valid categories."""
    generated = list(enumerate_categories(2, 4))
    assert len(generated) >= 20
    assert all(validate(C).ok for C in generated)


def test_walking_arrow_shape():
    C = walking_arrow()
    assert C.n_objects == 2
    assert C.n_morphisms == 3
    assert C.hom(0, 1) == (2,)
    assert C.hom(1, 0) == ()


def test_opposite_is_involutive_on_categories(corpus):
    """Test C^op^op is byte-identical to C."""
    for C in corpus:
        twice = opposite_category(opposite_category(C))
        assert twice.tables() == C.tables()
        assert twice.comp.tobytes() == C.comp.tobytes()
        assert twice == C


def test_opposite_reverses_arrows():
    C = walking_arrow()
    Cop = opposite_category(C)
    assert Cop.hom(1, 0) == (2,)
    assert validate(Cop).ok
    assert Cop.compose(2, C.identity[1]) == 2


def test_opposite_is_involutive_on_functors_and_transformations():
    C, D = walking_arrow(), chain(3)
    functors = list(enumerate_functors(C, D))
    for F in functors:
        assert opposite_functor(opposite_functor(F)) == F
        assert validate(opposite_functor(F)).ok
    for F, G in itertools.product(functors, repeat=2):
        for N in enumerate_nattrans(F, G):
            assert opposite_nattrans(opposite_nattrans(N)) == N
            assert validate(opposite_nattrans(N)).ok


def test_opposite_distributes_over_composition():
    """Test (F2 . F1)^op = F2^op . F1^op table for table."""
    A, B, C = walking_arrow(), chain(3), chain(2)
    for F1 in enumerate_functors(A, B):
        for F2 in enumerate_functors(B, C):
            lhs = opposite_functor(compose_functors(F2, F1))
            rhs = compose_functors(opposite_functor(F2), opposite_functor(F1))
            assert lhs == rhs


def test_identity_law_violation_is_reported():
    broken = monoid([[1, 1], [1, 0]])
    report = validate(broken)
    assert not report.ok
    assert report.violation.law == "IdentityLaw"
    with pytest.raises(InvalidStructure):
        require_valid(broken)


def test_functor_typing_violation_is_reported():
    C = walking_arrow()
    swap = Functor(C, C, (1, 0), (1, 0, 2))
    report = validate(swap)
    assert report.violation.law == "Typing"
    assert report.violation.witness == (2,)


def test_naturality_violation_is_reported():
    A, P = walking_arrow(), parallel_pair()
    F = Functor(A, P, (0, 1), (0, 1, 2))
    G = Functor(A, P, (0, 1), (0, 1, 3))
    report = validate(NatTrans(F, G, (0, 1)))
    assert report.violation.law == "Naturality"
    assert report.violation.witness == (2,)


def test_component_typing_violation_is_reported():
    C, D = walking_arrow(), chain(2)
    low = constant_functor(C, D, 0)
    inclusion = Functor(C, D, (0, 1), (0, 1, 2))
    wrong = NatTrans(low, inclusion, (0, 0))
    assert validate(wrong).violation.law == "Typing"


def test_compose_functors_requires_matching_ends():
    with pytest.raises(DomainMismatch):
        compose_functors(identity_functor(chain(2)), identity_functor(chain(3)))


def test_functor_counts_into_posets():
    """Test functors from the walking arrow into a chain are pairs a <= b."""
    assert count_functors(walking_arrow(), chain(3)) == 6
    assert count_functors(chain(3), walking_arrow()) == 4
    assert count_functors(discrete(2), chain(2)) == 4


def test_functor_enumeration_is_lexicographic():
    functors = list(enumerate_functors(walking_arrow(), chain(3)))
    keys = [(F.omap, F.mmap) for F in functors]
    assert keys == sorted(keys)


def test_product_category():
    P = product_category(chain(2), chain(2))
    assert P.category.n_objects == 4
    assert P.category.n_morphisms == 9
    assert validate(P.category).ok
    assert validate(P.first).ok and validate(P.second).ok
    assert validate(diagonal_functor(chain(2))).ok


def test_comma_of_identities_is_arrow_category():
    C = chain(2)
    K = comma_category(identity_functor(C), identity_functor(C))
    assert K.category.n_objects == C.n_morphisms
    assert validate(K.category).ok
    assert validate(K.first).ok and validate(K.second).ok


def test_functor_category_sizes():
    fc = functor_category(walking_arrow(), chain(2))
    assert len(fc.functors) == 3
    assert len(fc.transformations) == 6
    assert validate(fc.category).ok


def test_curry_uncurry_round_trip():
    C, D = walking_arrow(), chain(2)
    P = product_category(C, D)
    fc = functor_category(D, D)
    curried = curry_functor(P.second, fc)
    assert validate(curried).ok
    assert uncurry_functor(curried, fc) == P.second


def test_curry_needs_product_domain():
    with pytest.raises(NotAProductDomain):
        curry_functor(identity_functor(chain(2)))


@pytest.mark.parametrize("x, objects, morphisms", [(0, 2, 3), (1, 1, 1)])
def test_comma_under_an_object(x, objects, morphisms):
    C = walking_arrow()
    K = comma_category(point_functor(C, x), identity_functor(C))
    assert (K.category.n_objects, K.category.n_morphisms) == (objects, morphisms)
    assert validate(K.category).ok


def test_comma_of_the_unit_category():
    one = identity_functor(unit_category())
    K = comma_category(one, one)
    assert (K.category.n_objects, K.category.n_morphisms) == (1, 1)


@pytest.mark.parametrize("C", [discrete(1), chain(3), walking_arrow(), parallel_pair(), cyclic_monoid(3)],
                         ids=lambda C: f"{C.n_objects}x{C.n_morphisms}")
def test_functors_from_two_points_are_pairs_of_objects(C):
    assert len(functor_category(discrete(2), C).functors) == C.n_objects ** 2


def test_walking_arrow_endofunctors():
    # both constants and the identity
    assert count_functors(walking_arrow(), walking_arrow()) == 3


SMALL = (discrete(1), discrete(2), walking_arrow(), parallel_pair(), cyclic_monoid(2))


@pytest.mark.parametrize("C, D, E", list(itertools.product(SMALL, repeat=3)),
                         ids=lambda C: f"{C.n_objects}x{C.n_morphisms}")
def test_currying_is_a_bijection_on_functors(C, D, E):
    """Test |Fun(C x D, E)| = |Fun(C, [D, E])| and that curry/uncurry invert each other."""
    P = product_category(C, D).category
    fc = functor_category(D, E)
    assert count_functors(P, E) == count_functors(C, fc.category)
    for F in enumerate_functors(P, E):
        assert uncurry_functor(curry_functor(F, fc), fc) == F


def test_opposite_of_a_product_can_be_curried():
    C, D = walking_arrow(), chain(3)
    P = product_category(C, D)
    Pop = opposite_category(P.category)
    assert Pop.factors == (opposite_category(C), opposite_category(D))
    second = opposite_functor(P.second)
    fc = functor_category(opposite_category(D), opposite_category(D))
    curried = curry_functor(second, fc)
    assert validate(curried).ok
    assert uncurry_functor(curried, fc) == second


def test_cat_has_terminal_and_initial_objects(small_categories):
    for C in small_categories:
        assert cat_terminal_initial_witness(C).ok


def test_whiskering_and_vertical_composition():
    C, D = walking_arrow(), chain(3)
    functors = list(enumerate_functors(C, D))
    F, G = functors[0], functors[-1]
    N = next(enumerate_nattrans(F, G))
    assert vertical_compose(identity_nattrans(G), N) == N
    assert vertical_compose(N, identity_nattrans(F)) == N
    H = monotone_map(chain(3), chain(2), (0, 1, 1))
    assert validate(whisker_left(H, N)).ok
    p = monotone_map(chain(2), C, (0, 1))
    assert validate(whisker_right(N, p)).ok


def test_inverses_in_a_group():
    C = cyclic_monoid(3)
    for f in C.morphisms:
        g = inverse(C, f)
        assert g is not None
        assert C.compose(g, f) == C.identity[0]
    assert not is_isomorphism(chain(2), 2)


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        poset(2, [(0, 1), (1, 0)])


def test_fincat_is_immutable():
    C = parallel_pair()
    with pytest.raises(AttributeError):
        C.n_objects = 3
    assert isinstance(C, FinCat)
    assert not C.comp.flags.writeable
