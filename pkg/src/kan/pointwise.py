"""
Pointwise Kan extensions.

Ran_p F (d) is the limit of F over the comma category (d | p); Lan_p F (d)
is the colimit of F over (p | d). For a finite target category the left
extension is the right extension of the opposite functors read back through
opposites. Set-valued functors (Diagram) use the finite-set (co)limits.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.category.constructions import CommaCategory, comma_category
from src.category.core import (
    Functor, NatTrans, compose_functors, opposite_functor, opposite_nattrans, point_functor,
)
from src.errors import DomainMismatch
from src.finset.diagrams import Diagram, SetTransformation, precompose_diagram
from src.finset.sets import FinFn
from src.limits.cones import Cone, factor_through, limit_by_search
from src.limits.finset_limits import FinSetColimit, FinSetLimit, finset_colimit, finset_limit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KanResult:
    """extension: D -> E with comparison Ran.p => F (right) or F => Lan.p (left)."""
    F: Functor
    p: Functor
    extension: Functor
    comparison: NatTrans
    side: str = "right"


@dataclass(frozen=True)
class SetKanResult:
    F: Diagram
    p: Functor
    extension: Diagram
    comparison: SetTransformation
    pointwise: Tuple
    side: str = "right"


def _under(p: Functor, d: int) -> CommaCategory:
    """(d | p): objects (*, c, h: d -> p c)."""
    return comma_category(point_functor(p.cod, d), p)


def _over(p: Functor, d: int) -> CommaCategory:
    """(p | d): objects (c, *, h: p c -> d)."""
    return comma_category(p, point_functor(p.cod, d))


def right_kan_pointwise(F: Functor, p: Functor) -> Optional[KanResult]:
    if F.dom != p.dom:
        raise DomainMismatch("F and p must share a domain")
    D, E = p.cod, F.cod
    commas: List[CommaCategory] = []
    limits: List[Cone] = []
    diagrams: List[Functor] = []
    for d in D.objects:
        K = _under(p, d)
        diagram = compose_functors(F, K.second)
        L = limit_by_search(diagram)
        if L is None:
            logger.debug(f"No pointwise limit at {D.obj_names[d]}")
            return None
        commas.append(K)
        limits.append(L)
        diagrams.append(diagram)

    mmap = []
    for v in D.morphisms:
        d, d2 = D.src[v], D.dst[v]
        K, K2 = commas[d], commas[d2]
        # L_d restricted along v is a cone over the diagram at d2
        legs = [limits[d].legs[K.index[(0, c, D.compose(h, v))]] for _, c, h in K2.objects]
        mediators = factor_through(diagrams[d2], Cone(limits[d].apex, legs), limits[d2])
        mmap.append(mediators[0])
    extension = Functor(D, E, [L.apex for L in limits], mmap)

    components = [
        limits[p.omap[c]].legs[commas[p.omap[c]].index[(0, c, D.identity[p.omap[c]])]]
        for c in p.dom.objects
    ]
    comparison = NatTrans(compose_functors(extension, p), F, components)
    return KanResult(F, p, extension, comparison, "right")


def left_kan(F: Functor, p: Functor) -> Optional[KanResult]:
    """Lan_p F = (Ran_{p^op} F^op)^op."""
    ran = right_kan_pointwise(opposite_functor(F), opposite_functor(p))
    if ran is None:
        return None
    return KanResult(F, p, opposite_functor(ran.extension), opposite_nattrans(ran.comparison), "left")


def right_kan_sets(F: Diagram, p: Functor) -> SetKanResult:
    if F.shape != p.dom:
        raise DomainMismatch("Diagram shape and p must share a domain")
    D = p.cod
    commas = [_under(p, d) for d in D.objects]
    limits: List[FinSetLimit] = [finset_limit(precompose_diagram(F, K.second)) for K in commas]

    on_morphisms = []
    for v in D.morphisms:
        d, d2 = D.src[v], D.dst[v]
        K, K2 = commas[d], commas[d2]
        legs = [limits[d].legs[K.index[(0, c, D.compose(h, v))]] for _, c, h in K2.objects]
        on_morphisms.append(limits[d2].factor(legs, apex=limits[d].obj))
    extension = Diagram(D, [L.obj for L in limits], on_morphisms)

    components = [
        limits[p.omap[c]].legs[commas[p.omap[c]].index[(0, c, D.identity[p.omap[c]])]]
        for c in p.dom.objects
    ]
    comparison = SetTransformation(precompose_diagram(extension, p), F, components)
    return SetKanResult(F, p, extension, comparison, tuple(limits), "right")


def left_kan_sets(F: Diagram, p: Functor) -> SetKanResult:
    if F.shape != p.dom:
        raise DomainMismatch("Diagram shape and p must share a domain")
    D = p.cod
    commas = [_over(p, d) for d in D.objects]
    colimits: List[FinSetColimit] = [finset_colimit(precompose_diagram(F, K.first)) for K in commas]

    on_morphisms: List[FinFn] = []
    for v in D.morphisms:
        d, d2 = D.src[v], D.dst[v]
        K, K2 = commas[d], commas[d2]
        legs = [colimits[d2].legs[K2.index[(c, 0, D.compose(v, h))]] for c, _, h in K.objects]
        on_morphisms.append(colimits[d].factor(legs, apex=colimits[d2].obj))
    extension = Diagram(D, [L.obj for L in colimits], on_morphisms)

    components = [
        colimits[p.omap[c]].legs[commas[p.omap[c]].index[(c, 0, D.identity[p.omap[c]])]]
        for c in p.dom.objects
    ]
    comparison = SetTransformation(F, precompose_diagram(extension, p), components)
    return SetKanResult(F, p, extension, comparison, tuple(colimits), "left")
