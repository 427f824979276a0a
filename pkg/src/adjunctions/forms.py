"""
Adjunctions F -| G between finite categories in their three presentations.

F: A -> B is the left adjoint and G: B -> A the right adjoint throughout.

  hom form          phi[a][b][i] is the image of the i-th arrow of
                    Hom(F a, b) (morphism-index order) in Hom(a, G b)
  unit-counit form  eta: Id_A => G F and eps: F G => Id_B
  universal form    G with, per object a, an object F0(a) and a universal
                    arrow eta_a: a -> G F0(a)

The hom form is the normal form; every conversion can route through it.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

from src.category.core import (
    FinCat, Functor, NatTrans, compose_functors, identity_functor,
    opposite_functor, opposite_nattrans,
)
from src.category.enumerate import enumerate_functors, enumerate_nattrans
from src.category.laws import LawViolation, ValidationReport, validate
from src.errors import InvalidInput, NotAdjoint

logger = logging.getLogger(__name__)

PhiTable = Tuple[Tuple[Tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class AdjHom:
    F: Functor
    G: Functor
    phi: PhiTable

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(tuple(tuple(int(x) for x in row) for row in col) for col in self.phi))


@dataclass(frozen=True)
class AdjUnitCounit:
    F: Functor
    G: Functor
    unit: NatTrans
    counit: NatTrans


@dataclass(frozen=True)
class AdjUniversal:
    G: Functor
    F0: Tuple[int, ...]
    eta: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "F0", tuple(int(x) for x in self.F0))
        object.__setattr__(self, "eta", tuple(int(f) for f in self.eta))


Adjunction = Union[AdjHom, AdjUnitCounit, AdjUniversal]
FORMS = ("hom", "unit_counit", "universal")


def form_of(adj: Adjunction) -> str:
    if isinstance(adj, AdjHom):
        return "hom"
    if isinstance(adj, AdjUnitCounit):
        return "unit_counit"
    if isinstance(adj, AdjUniversal):
        return "universal"
    raise TypeError(f"Not an adjunction: {type(adj).__name__}")


def _check_pair(F: Functor, G: Functor) -> Optional[LawViolation]:
    if F.dom != G.cod or F.cod != G.dom:
        return LawViolation("Typing", (), "functors do not point in opposite directions")
    for functor in (F, G):
        report = validate(functor)
        if not report.ok:
            return report.violation
    return None


def apply_phi(adj: AdjHom, a: int, b: int, h: int) -> int:
    B = adj.F.cod
    return adj.phi[a][b][B.hom(adj.F.omap[a], b).index(h)]


def unapply_phi(adj: AdjHom, a: int, b: int, k: int) -> int:
    """phi^-1 at (a, b) of k: a -> G b."""
    B = adj.F.cod
    return B.hom(adj.F.omap[a], b)[adj.phi[a][b].index(k)]


def _check_hom(adj: AdjHom) -> Optional[LawViolation]:
    F, G = adj.F, adj.G
    violation = _check_pair(F, G)
    if violation:
        return violation
    A, B = F.dom, F.cod
    if len(adj.phi) != A.n_objects or any(len(col) != B.n_objects for col in adj.phi):
        return LawViolation("Typing", (), "phi needs one table per pair of objects")

    for a in A.objects:
        for b in B.objects:
            row = adj.phi[a][b]
            source, target = B.hom(F.omap[a], b), A.hom(a, G.omap[b])
            if len(row) != len(source) or sorted(row) != list(target):
                return LawViolation("PhiNotBijective", (a, b), f"phi at ({A.obj_names[a]}, {B.obj_names[b]}) is not a bijection")

    for a in A.objects:
        for b in B.objects:
            for h in B.hom(F.omap[a], b):
                k = apply_phi(adj, a, b, h)
                # naturality in a
                for u in A.morphisms:
                    if A.dst[u] != a:
                        continue
                    lhs = apply_phi(adj, A.src[u], b, B.compose(h, F.mmap[u]))
                    if lhs != A.compose(k, u):
                        return LawViolation("PhiNaturality", (a, b, h, u), "phi is not natural in the first variable")
                # naturality in b
                for v in B.morphisms:
                    if B.src[v] != b:
                        continue
                    lhs = apply_phi(adj, a, B.dst[v], B.compose(v, h))
                    if lhs != A.compose(G.mmap[v], k):
                        return LawViolation("PhiNaturality", (a, b, h, v), "phi is not natural in the second variable")
    return None


def _check_unit_counit(adj: AdjUnitCounit) -> Optional[LawViolation]:
    F, G = adj.F, adj.G
    violation = _check_pair(F, G)
    if violation:
        return violation
    A, B = F.dom, F.cod
    if adj.unit.source != identity_functor(A) or adj.unit.target != compose_functors(G, F):
        return LawViolation("Typing", (), "unit is not Id => G F")
    if adj.counit.source != compose_functors(F, G) or adj.counit.target != identity_functor(B):
        return LawViolation("Typing", (), "counit is not F G => Id")
    for N in (adj.unit, adj.counit):
        report = validate(N)
        if not report.ok:
            return report.violation

    eta, eps = adj.unit.components, adj.counit.components
    for b in B.objects:
        composite = A.compose(G.mmap[eps[b]], eta[G.omap[b]])
        if composite != A.identity[G.omap[b]]:
            return LawViolation(
                "Triangle", (b, eps[b], eta[G.omap[b]]),
                f"G eps . eta G is not the identity at {B.obj_names[b]} "
                f"(eps={B.mor_names[eps[b]]}, eta={A.mor_names[eta[G.omap[b]]]})",
            )
    for a in A.objects:
        composite = B.compose(eps[F.omap[a]], F.mmap[eta[a]])
        if composite != B.identity[F.omap[a]]:
            return LawViolation(
                "Triangle", (a, eps[F.omap[a]], eta[a]),
                f"eps F . F eta is not the identity at {A.obj_names[a]} "
                f"(eps={B.mor_names[eps[F.omap[a]]]}, eta={A.mor_names[eta[a]]})",
            )
    return None


def _check_universal(adj: AdjUniversal) -> Optional[LawViolation]:
    G = adj.G
    report = validate(G)
    if not report.ok:
        return report.violation
    A, B = G.cod, G.dom
    if len(adj.F0) != A.n_objects or len(adj.eta) != A.n_objects:
        return LawViolation("Typing", (), "need one object and one arrow per object of the domain")
    for a in A.objects:
        c, e = adj.F0[a], adj.eta[a]
        if not 0 <= c < B.n_objects or A.src[e] != a or A.dst[e] != G.omap[c]:
            return LawViolation("Typing", (a,), f"eta at {A.obj_names[a]} has the wrong type")
        for b in B.objects:
            for f in A.hom(a, G.omap[b]):
                count = sum(1 for h in B.hom(c, b) if A.compose(G.mmap[h], e) == f)
                if count != 1:
                    return LawViolation(
                        "NotUniversal", (a, b, f),
                        f"{A.mor_names[f]} factors {count} times through eta at {A.obj_names[a]}",
                    )
    return None


def validate_adjunction(adj: Adjunction) -> ValidationReport:
    form = form_of(adj)
    if form == "hom":
        violation = _check_hom(adj)
    elif form == "unit_counit":
        violation = _check_unit_counit(adj)
    else:
        violation = _check_universal(adj)
    if violation is not None:
        logger.info(f"Adjunction ({form}) fails {violation}")
    return ValidationReport(f"Adjunction[{form}]", violation)


def _require_valid(adj: Adjunction) -> None:
    report = validate_adjunction(adj)
    if not report.ok:
        raise InvalidInput(f"Invalid adjunction: {report.violation}")


def hom_to_unit_counit(adj: AdjHom) -> AdjUnitCounit:
    F, G = adj.F, adj.G
    A, B = F.dom, F.cod
    eta = [apply_phi(adj, a, F.omap[a], B.identity[F.omap[a]]) for a in A.objects]
    eps = [unapply_phi(adj, G.omap[b], b, A.identity[G.omap[b]]) for b in B.objects]
    unit = NatTrans(identity_functor(A), compose_functors(G, F), eta)
    counit = NatTrans(compose_functors(F, G), identity_functor(B), eps)
    return AdjUnitCounit(F, G, unit, counit)


def unit_counit_to_hom(adj: AdjUnitCounit) -> AdjHom:
    """phi(h) = G h . eta_a."""
    F, G = adj.F, adj.G
    A, B = F.dom, F.cod
    eta = adj.unit.components
    phi = tuple(
        tuple(
            tuple(A.compose(G.mmap[h], eta[a]) for h in B.hom(F.omap[a], b))
            for b in B.objects
        )
        for a in A.objects
    )
    return AdjHom(F, G, phi)


def unit_counit_to_universal(adj: AdjUnitCounit) -> AdjUniversal:
    return AdjUniversal(adj.G, adj.F.omap, adj.unit.components)


def hom_to_universal(adj: AdjHom) -> AdjUniversal:
    F, B = adj.F, adj.F.cod
    eta = [apply_phi(adj, a, F.omap[a], B.identity[F.omap[a]]) for a in F.dom.objects]
    return AdjUniversal(adj.G, F.omap, eta)


def left_adjoint_of(adj: AdjUniversal) -> Functor:
    """F on arrows: F u is the unique h with G h . eta_a = eta_a' . u."""
    G = adj.G
    A, B = G.cod, G.dom
    mmap = []
    for u in A.morphisms:
        a, a2 = A.src[u], A.dst[u]
        target = A.compose(adj.eta[a2], u)
        h = [h for h in B.hom(adj.F0[a], adj.F0[a2]) if A.compose(G.mmap[h], adj.eta[a]) == target]
        mmap.append(h[0])
    return Functor(A, B, adj.F0, mmap)


def universal_to_hom(adj: AdjUniversal) -> AdjHom:
    F = left_adjoint_of(adj)
    A, B = F.dom, F.cod
    phi = tuple(
        tuple(
            tuple(A.compose(adj.G.mmap[h], adj.eta[a]) for h in B.hom(F.omap[a], b))
            for b in B.objects
        )
        for a in A.objects
    )
    return AdjHom(F, adj.G, phi)


def universal_to_unit_counit(adj: AdjUniversal) -> AdjUnitCounit:
    """eps_b is the unique h: F0(G b) -> b with G h . eta_{G b} = id."""
    F, G = left_adjoint_of(adj), adj.G
    A, B = F.dom, F.cod
    eps = []
    for b in B.objects:
        gb = G.omap[b]
        eps.append(next(
            h for h in B.hom(F.omap[gb], b) if A.compose(G.mmap[h], adj.eta[gb]) == A.identity[gb]
        ))
    unit = NatTrans(identity_functor(A), compose_functors(G, F), adj.eta)
    counit = NatTrans(compose_functors(F, G), identity_functor(B), eps)
    return AdjUnitCounit(F, G, unit, counit)


_CONVERSIONS = {
    ("hom", "unit_counit"): hom_to_unit_counit,
    ("hom", "universal"): hom_to_universal,
    ("unit_counit", "hom"): unit_counit_to_hom,
    ("unit_counit", "universal"): unit_counit_to_universal,
    ("universal", "hom"): universal_to_hom,
    ("universal", "unit_counit"): universal_to_unit_counit,
}


def adj_convert(adj: Adjunction, target_form: str) -> Adjunction:
    if target_form not in FORMS:
        raise InvalidInput(f"Unknown adjunction form: {target_form}")
    _require_valid(adj)
    source_form = form_of(adj)
    if source_form == target_form:
        return adj
    return _CONVERSIONS[(source_form, target_form)](adj)


def adj_dual(adj: Adjunction) -> Adjunction:
    """F -| G becomes G^op -| F^op, in the same form."""
    _require_valid(adj)
    form = form_of(adj)
    if form == "unit_counit":
        return AdjUnitCounit(
            opposite_functor(adj.G), opposite_functor(adj.F),
            opposite_nattrans(adj.counit), opposite_nattrans(adj.unit),
        )
    hom = adj if form == "hom" else universal_to_hom(adj)
    F, G = hom.F, hom.G
    A, B = F.dom, F.cod
    # phi'[b][a] inverts phi[a][b]; Hom_{A^op}(G b, a) lists Hom_A(a, G b) in the same order
    phi = tuple(
        tuple(
            tuple(unapply_phi(hom, a, b, k) for k in A.hom(a, G.omap[b]))
            for a in A.objects
        )
        for b in B.objects
    )
    dual = AdjHom(opposite_functor(G), opposite_functor(F), phi)
    return dual if form == "hom" else hom_to_universal(dual)


def identity_adjunction(C: FinCat) -> AdjHom:
    Id = identity_functor(C)
    phi = tuple(tuple(C.hom(a, b) for b in C.objects) for a in C.objects)
    return AdjHom(Id, Id, phi)


def adj_unique_iso(first: AdjHom, second: AdjHom) -> NatTrans:
    """G => G' with components phi'(phi^-1(id_{G b})) for two right adjoints of one F."""
    for adj in (first, second):
        if not isinstance(adj, AdjHom) or not validate_adjunction(adj).ok:
            raise NotAdjoint("Both inputs must be valid hom-form adjunctions")
    if first.F != second.F:
        raise NotAdjoint("The adjunctions do not share a left adjoint")
    G, G2 = first.G, second.G
    A = first.F.dom
    components = []
    for b in G.dom.objects:
        eps_b = unapply_phi(first, G.omap[b], b, A.identity[G.omap[b]])
        components.append(apply_phi(second, G.omap[b], b, eps_b))
    return NatTrans(G, G2, components)


def _adjunctions(F: Functor, G: Functor) -> Iterator[AdjUnitCounit]:
    if _check_pair(F, G) is not None:
        return
    A, B = F.dom, F.cod
    units = list(enumerate_nattrans(identity_functor(A), compose_functors(G, F)))
    counits = list(enumerate_nattrans(compose_functors(F, G), identity_functor(B)))
    for unit in units:
        for counit in counits:
            candidate = AdjUnitCounit(F, G, unit, counit)
            if _check_unit_counit(candidate) is None:
                yield candidate


def find_adjunction(F: Functor, G: Functor) -> Optional[AdjUnitCounit]:
    """First unit/counit pair, in enumeration order, satisfying the triangle identities."""
    return next(_adjunctions(F, G), None)


def right_adjoints(F: Functor) -> List[AdjUnitCounit]:
    """Every adjunction F -| G: all functors G and all unit/counit pairs for each."""
    found = [adj for G in enumerate_functors(F.cod, F.dom) for adj in _adjunctions(F, G)]
    logger.debug(f"Found {len(found)} adjunctions with {len({adj.G for adj in found})} distinct right adjoints")
    return found
