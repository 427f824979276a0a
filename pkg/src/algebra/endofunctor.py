"""
Categories of T-algebras and T-coalgebras for an endofunctor T of a finite
category.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.category.core import (
    UNDEFINED, FinCat, Functor, empty_category, inverse, opposite_category, opposite_functor,
)
from src.errors import NotEndofunctor
from src.limits.cones import colimit_by_search, limit_by_search

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TAlgebra:
    carrier: int
    structure: int


@dataclass(frozen=True)
class AlgebraCategory:
    endofunctor: Functor
    category: FinCat
    algebras: Tuple[TAlgebra, ...]
    arrows: Tuple[int, ...]
    forgetful: Functor


def _require_endofunctor(T: Functor) -> None:
    if T.dom != T.cod:
        raise NotEndofunctor("Domain and codomain differ")


def algebra_category(T: Functor) -> AlgebraCategory:
    """Objects (c, s: T c -> c); morphisms carrier arrows h with s' . T h = h . s."""
    _require_endofunctor(T)
    C = T.dom
    algebras = [TAlgebra(c, s) for c in C.objects for s in C.hom(T.omap[c], c)]

    src, dst, arrows = [], [], []
    for i, A in enumerate(algebras):
        for j, B in enumerate(algebras):
            for h in C.hom(A.carrier, B.carrier):
                if C.compose(B.structure, T.mmap[h]) == C.compose(h, A.structure):
                    src.append(i)
                    dst.append(j)
                    arrows.append(h)
    index = {(src[k], dst[k], h): k for k, h in enumerate(arrows)}
    identity = [index[(i, i, C.identity[A.carrier])] for i, A in enumerate(algebras)]

    m = len(arrows)
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for k2 in range(m):
        for k1 in range(m):
            if dst[k1] == src[k2]:
                comp[k2, k1] = index[(src[k1], dst[k2], C.compose(arrows[k2], arrows[k1]))]

    obj_names = [f"({C.obj_names[A.carrier]},{C.mor_names[A.structure]})" for A in algebras]
    mor_names = [f"{k}:{C.mor_names[h]}" for k, h in enumerate(arrows)]
    category = FinCat(len(algebras), src, dst, identity, comp, obj_names=obj_names, mor_names=mor_names)
    forgetful = Functor(category, C, [A.carrier for A in algebras], arrows)
    logger.debug(f"Algebra category has {len(algebras)} objects and {m} morphisms")
    return AlgebraCategory(T, category, tuple(algebras), tuple(arrows), forgetful)


def coalgebra_category(T: Functor) -> AlgebraCategory:
    """Opposite of the algebra category of T^op; structures are c -> T c."""
    _require_endofunctor(T)
    dual = algebra_category(opposite_functor(T))
    category = opposite_category(dual.category)
    forgetful = Functor(category, T.dom, dual.forgetful.omap, dual.forgetful.mmap)
    return AlgebraCategory(T, category, dual.algebras, dual.arrows, forgetful)


def is_faithful(F: Functor) -> bool:
    C = F.dom
    for a in C.objects:
        for b in C.objects:
            images = [F.mmap[f] for f in C.hom(a, b)]
            if len(set(images)) != len(images):
                return False
    return True


@dataclass(frozen=True)
class LambekReport:
    present: bool
    algebra: Optional[TAlgebra] = None
    structure_invertible: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return not self.present or bool(self.structure_invertible)


def _extremal(algebras: AlgebraCategory, initial: bool) -> LambekReport:
    K = algebras.category
    empty = Functor(empty_category(), K, (), ())
    found = colimit_by_search(empty) if initial else limit_by_search(empty)
    if found is None:
        return LambekReport(False)
    algebra = algebras.algebras[found.apex]
    invertible = inverse(algebras.endofunctor.dom, algebra.structure) is not None
    return LambekReport(True, algebra, invertible)


def initial_algebra(T: Functor) -> LambekReport:
    """Initial T-algebra by search, with Lambek's check that its structure is an iso."""
    return _extremal(algebra_category(T), initial=True)


def terminal_coalgebra(T: Functor) -> LambekReport:
    return _extremal(coalgebra_category(T), initial=False)
