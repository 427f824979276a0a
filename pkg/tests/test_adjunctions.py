import itertools

import pytest

from src.adjunctions.finset_chain import (
    WITNESS_KINDS, curry_fn, fs_adjunction_witness, prod_join, prod_split, sum_join, sum_split, uncurry_fn,
)
from src.adjunctions.forms import (
    FORMS, AdjHom, AdjUnitCounit, adj_convert, adj_dual, adj_unique_iso, find_adjunction, form_of,
    identity_adjunction, right_adjoints, validate_adjunction,
)
from src.category.catalog import chain, cyclic_monoid, monotone_map
from src.category.core import NatTrans, is_natural_isomorphism, opposite_functor
from src.errors import InvalidInput, NotAdjoint, UnknownKind
from src.finset.constructions import fs_product, fs_sum
from src.finset.sets import all_functions, canonical_set


@pytest.fixture
def galois():
    """Inclusion of {0 <= 1} into {0 <= 1 <= 2}, left adjoint to clamping at 1."""
    incl = monotone_map(chain(2), chain(3), [0, 1])
    clamp = monotone_map(chain(3), chain(2), [0, 1, 1])
    return incl, clamp


@pytest.fixture
def twisted():
    """Id -| Id on Z/2 with phi given by postcomposing the generator."""
    C = cyclic_monoid(2)
    plain = identity_adjunction(C)
    phi = (((C.compose(1, 0), C.compose(1, 1)),),)
    return plain, AdjHom(plain.F, plain.G, phi)


def test_find_adjunction(galois):
    incl, clamp = galois
    adj = find_adjunction(incl, clamp)
    assert isinstance(adj, AdjUnitCounit)
    assert validate_adjunction(adj).ok
    # clamping has no right adjoint in this direction
    assert find_adjunction(clamp, incl) is None


def test_every_form_validates(galois):
    adj = find_adjunction(*galois)
    for form in FORMS:
        converted = adj_convert(adj, form)
        assert form_of(converted) == form
        assert validate_adjunction(converted).ok


def test_conversions_commute(galois, twisted):
    """Test converting through any intermediate form lands on the direct conversion."""
    for adj in (find_adjunction(*galois), twisted[1]):
        for source, middle, target in itertools.product(FORMS, repeat=3):
            start = adj_convert(adj, source)
            direct = adj_convert(start, target)
            via = adj_convert(adj_convert(start, middle), target)
            assert via == direct, (source, middle, target)


def test_twisted_phi_survives_round_trips(twisted):
    _, adj = twisted
    assert validate_adjunction(adj).ok
    back = adj_convert(adj_convert(adj, "unit_counit"), "hom")
    assert back.phi == adj.phi
    assert adj_convert(adj, "unit_counit").unit.components == (1,)


def test_triangle_identity_violation(twisted):
    plain, _ = twisted
    Id = plain.F
    unit = NatTrans(Id, Id, (1,))
    counit = NatTrans(Id, Id, (0,))
    report = validate_adjunction(AdjUnitCounit(Id, Id, unit, counit))
    assert report.violation.law == "Triangle"
    assert report.violation.witness == (0, 0, 1)


def test_hom_form_rejects_non_bijections(twisted):
    plain, _ = twisted
    bad = AdjHom(plain.F, plain.G, (((0, 0),),))
    report = validate_adjunction(bad)
    assert not report.ok
    assert report.violation.law == "PhiNotBijective"
    with pytest.raises(InvalidInput):
        adj_convert(bad, "unit_counit")
    with pytest.raises(InvalidInput):
        adj_convert(plain, "adjoint")


def test_dual_is_involutive(galois, twisted):
    adj = find_adjunction(*galois)
    for form in FORMS:
        converted = adj_convert(adj, form)
        dual = adj_dual(converted)
        assert validate_adjunction(dual).ok
        assert adj_dual(dual) == converted
    assert adj_dual(adj_dual(twisted[1])) == twisted[1]


def test_dual_swaps_the_functors(galois):
    incl, clamp = galois
    dual = adj_dual(find_adjunction(incl, clamp))
    assert dual.F == opposite_functor(clamp)
    assert dual.G == opposite_functor(incl)


def test_identity_adjunction_is_valid():
    for C in (chain(3), cyclic_monoid(3)):
        assert validate_adjunction(identity_adjunction(C)).ok


def test_right_adjoints_are_isomorphic(twisted):
    plain, adj = twisted
    iso = adj_unique_iso(plain, adj)
    assert is_natural_isomorphism(iso)
    assert iso.components == (1,)
    assert adj_unique_iso(plain, plain).components == (0,)


def test_every_right_adjoint_is_found(galois, twisted):
    incl, clamp = galois
    found = right_adjoints(incl)
    assert [adj.G for adj in found] == [clamp]
    plain, _ = twisted
    found = right_adjoints(plain.F)
    # the constant functor admits no unit, so only Id survives with two unit/counit pairs
    assert len(found) == 2
    assert {adj.G for adj in found} == {plain.G}
    first = adj_convert(found[0], "hom")
    for other in found:
        assert is_natural_isomorphism(adj_unique_iso(first, adj_convert(other, "hom")))


def test_unique_iso_needs_a_shared_left_adjoint(galois, twisted):
    adj = adj_convert(find_adjunction(*galois), "hom")
    with pytest.raises(NotAdjoint):
        adj_unique_iso(adj, twisted[0])


@pytest.mark.parametrize("kind", WITNESS_KINDS)
def test_finset_adjunction_chain(kind):
    report = fs_adjunction_witness(kind, 2)
    assert report.ok, report
    assert report.instances == 27
    assert report.squares > 0


def test_unknown_adjunction_kind():
    with pytest.raises(UnknownKind):
        fs_adjunction_witness("exp_prod", 2)


def test_bijection_round_trips():
    A, B, C = canonical_set(2), canonical_set(1), canonical_set(3)
    S, P = fs_sum(A, B), fs_product(B, C)
    for h in all_functions(S.obj, C):
        assert sum_join(*sum_split(h, A, B)) == h
    for h in all_functions(A, P.obj):
        assert prod_join(*prod_split(h, B, C)) == h
    AX = fs_product(A, B).obj
    for f in all_functions(AX, C):
        assert uncurry_fn(curry_fn(f, A, B), B, C) == f
