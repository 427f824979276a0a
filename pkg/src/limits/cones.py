"""
Cones over diagrams in finite categories and the brute-force search for
universal ones.

A diagram here is a Functor D: J -> C. Colimits are limits of the opposite
diagram; since opposites keep every index, the universal cone found in C^op
is read back as a cocone in C unchanged.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from src.category.catalog import discrete
from src.category.core import FinCat, Functor, constant_functor, inverse, opposite_functor
from src.category.enumerate import enumerate_nattrans

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cone:
    apex: int
    legs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(int(f) for f in self.legs))


def is_cone(D: Functor, cone: Cone) -> bool:
    J, C = D.dom, D.cod
    if len(cone.legs) != J.n_objects:
        return False
    for j in J.objects:
        leg = cone.legs[j]
        if C.src[leg] != cone.apex or C.dst[leg] != D.omap[j]:
            return False
    return all(
        C.compose(D.mmap[f], cone.legs[J.src[f]]) == cone.legs[J.dst[f]]
        for f in J.morphisms
    )


def enumerate_cones(D: Functor, apex: Optional[int] = None) -> Iterator[Cone]:
    """All cones over D, by apex index then leg tuple."""
    J, C = D.dom, D.cod
    apexes = C.objects if apex is None else (apex,)
    for c in apexes:
        for N in enumerate_nattrans(constant_functor(J, C, c), D):
            yield Cone(c, N.components)


def factor_through(D: Functor, cone: Cone, limit: Cone) -> List[int]:
    """Every u: cone.apex -> limit.apex with limit.legs[j] . u = cone.legs[j]."""
    C = D.cod
    return [
        u for u in C.hom(cone.apex, limit.apex)
        if all(C.compose(limit.legs[j], u) == cone.legs[j] for j in D.dom.objects)
    ]


def _is_universal(D: Functor, candidate: Cone, cones: List[Cone]) -> bool:
    return all(len(factor_through(D, cone, candidate)) == 1 for cone in cones)


def universal_cones(D: Functor) -> List[Cone]:
    cones = list(enumerate_cones(D))
    return [cone for cone in cones if _is_universal(D, cone, cones)]


def limit_by_search(D: Functor) -> Optional[Cone]:
    """The first universal cone in enumeration order, or None."""
    cones = list(enumerate_cones(D))
    for cone in cones:
        if _is_universal(D, cone, cones):
            return cone
    logger.debug(f"No limit among {len(cones)} cones")
    return None


def colimit_by_search(D: Functor) -> Optional[Cone]:
    """Universal cocone of D: legs D(j) -> apex, found as a limit in the opposite."""
    return limit_by_search(opposite_functor(D))


def is_limit(D: Functor, candidate: Cone) -> bool:
    return is_cone(D, candidate) and _is_universal(D, candidate, list(enumerate_cones(D)))


def cone_isomorphism(D: Functor, first: Cone, second: Cone) -> Optional[int]:
    """The unique mediating iso first.apex -> second.apex between two universal cones."""
    mediators = factor_through(D, first, second)
    if len(mediators) != 1:
        return None
    u = mediators[0]
    return u if inverse(D.cod, u) is not None else None


def arrow_index(C: FinCat) -> FinCat:
    """Discrete category with one object per morphism of C."""
    return FinCat(
        C.n_morphisms, range(C.n_morphisms), range(C.n_morphisms), range(C.n_morphisms),
        discrete(C.n_morphisms).comp,
        obj_names=C.mor_names,
        mor_names=[f"id_{name}" for name in C.mor_names],
    )


def diagram_in(J: FinCat, C: FinCat, omap, mmap=None) -> Functor:
    """Functor J -> C from an object map; for discrete J the morphism map is forced."""
    if mmap is None:
        mmap = [C.identity[omap[J.src[f]]] for f in J.morphisms]
    return Functor(J, C, omap, mmap)


def discrete_diagram(C: FinCat, objects) -> Functor:
    objects = tuple(objects)
    return diagram_in(discrete(len(objects)), C, objects)
