"""
Limits and colimits of set-valued diagrams by the product–equalizer
construction and its dual.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from src.errors import DomainMismatch
from src.finset.constructions import fs_coequalizer, fs_equalizer, fs_product_family, fs_sum_family
from src.finset.diagrams import Diagram
from src.finset.sets import FinFn, FinSetObj, compose_fns, wrap_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinSetLimit:
    diagram: Diagram
    obj: FinSetObj
    legs: Tuple[FinFn, ...]
    families: Tuple[Tuple[int, ...], ...]

    @cached_property
    def position(self) -> Dict[Tuple[int, ...], int]:
        return {family: i for i, family in enumerate(self.families)}

    def factor(self, legs: Sequence[FinFn], apex: Optional[FinSetObj] = None) -> FinFn:
        """Mediating map from a cone with the given legs; apex is needed when there are none."""
        J = self.diagram.shape
        if len(legs) != J.n_objects:
            raise DomainMismatch("A cone needs one leg per object of the shape")
        if apex is None and not legs:
            raise DomainMismatch("The apex of an empty cone is not determined by its legs")
        X = legs[0].dom if legs else apex
        table = []
        for x in range(len(X)):
            family = tuple(leg.table[x] for leg in legs)
            if family not in self.position:
                raise ValueError("Legs do not form a cone")
            table.append(self.position[family])
        return FinFn(X, self.obj, table)


@dataclass(frozen=True)
class FinSetColimit:
    diagram: Diagram
    obj: FinSetObj
    legs: Tuple[FinFn, ...]
    representatives: Tuple[Tuple[int, int], ...]

    def factor(self, legs: Sequence[FinFn], apex: Optional[FinSetObj] = None) -> FinFn:
        """Mediating map into the apex of a cocone with the given legs."""
        if len(legs) != self.diagram.shape.n_objects:
            raise DomainMismatch("A cocone needs one leg per object of the shape")
        if apex is None and not legs:
            raise DomainMismatch("The apex of an empty cocone is not determined by its legs")
        X = legs[0].cod if legs else apex
        table = [legs[c].table[a] for c, a in self.representatives]
        mediator = FinFn(self.obj, X, table)
        for c, leg in enumerate(legs):
            if compose_fns(mediator, self.legs[c]) != leg:
                raise ValueError("Legs do not form a cocone")
        return mediator


def finset_limit(D: Diagram) -> FinSetLimit:
    """Equalizer of the two canonical maps prod_c D(c) => prod_f D(dst f)."""
    J = D.shape
    P = fs_product_family(D.on_objects)
    Q = fs_product_family([D.on_objects[J.dst[f]] for f in J.morphisms])

    projecting = FinFn(P.obj, Q.obj, [
        Q.tuple_index([t[J.dst[f]] for f in J.morphisms]) for t in P.tuples
    ])
    applying = FinFn(P.obj, Q.obj, [
        Q.tuple_index([D.on_morphisms[f].table[t[J.src[f]]] for f in J.morphisms]) for t in P.tuples
    ])
    eq = fs_equalizer(projecting, applying)
    legs = tuple(compose_fns(P.projections[c], eq.inclusion) for c in J.objects)
    families = tuple(P.tuples[i] for i in eq.inclusion.table)
    logger.debug(f"Finite-set limit has {len(eq.obj)} elements")
    return FinSetLimit(D, eq.obj, legs, families)


def finset_colimit(D: Diagram) -> FinSetColimit:
    """Coequalizer of the two canonical maps sum_f D(src f) => sum_c D(c)."""
    J = D.shape
    S = fs_sum_family(D.on_objects, [wrap_label(name) for name in J.obj_names])
    R = fs_sum_family([D.on_objects[J.src[f]] for f in J.morphisms], [str(f) for f in J.morphisms])

    source_table, target_table = [], []
    for f in J.morphisms:
        fn = D.on_morphisms[f]
        for x in range(len(fn.dom)):
            source_table.append(S.element(J.src[f], x))
            target_table.append(S.element(J.dst[f], fn.table[x]))
    coeq = fs_coequalizer(FinFn(R.obj, S.obj, source_table), FinFn(R.obj, S.obj, target_table))
    legs = tuple(compose_fns(coeq.quotient, S.injections[c]) for c in J.objects)
    representatives = tuple(S.locate(members[0]) for members in coeq.classes)
    logger.debug(f"Finite-set colimit has {len(coeq.obj)} elements")
    return FinSetColimit(D, coeq.obj, legs, representatives)
