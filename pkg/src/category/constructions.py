"""
Product, comma and functor categories, currying, and the terminal/initial
objects of Cat.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from src.category.core import (
    UNDEFINED, FinCat, Functor, NatTrans, empty_category, unit_category,
)
from src.category.enumerate import count_functors, enumerate_functors, enumerate_nattrans
from src.errors import DomainMismatch, NotAProductDomain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductCategory:
    category: FinCat
    first: Functor
    second: Functor


def product_category(C: FinCat, D: FinCat) -> ProductCategory:
    """Objects and morphisms are pairs indexed lexicographically; componentwise composition."""
    nD, mD = D.n_objects, D.n_morphisms
    src, dst, names = [], [], []
    for f in C.morphisms:
        for g in D.morphisms:
            src.append(C.src[f] * nD + D.src[g])
            dst.append(C.dst[f] * nD + D.dst[g])
            names.append(f"({C.mor_names[f]},{D.mor_names[g]})")
    identity = [C.identity[x] * mD + D.identity[y] for x in C.objects for y in D.objects]
    obj_names = [f"({C.obj_names[x]},{D.obj_names[y]})" for x in C.objects for y in D.objects]

    m = C.n_morphisms * mD
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for f2 in C.morphisms:
        for g2 in D.morphisms:
            for f1 in C.morphisms:
                if not C.composable(f2, f1):
                    continue
                for g1 in D.morphisms:
                    if D.composable(g2, g1):
                        comp[f2 * mD + g2, f1 * mD + g1] = C.compose(f2, f1) * mD + D.compose(g2, g1)

    P = FinCat(C.n_objects * nD, src, dst, identity, comp,
               obj_names=obj_names, mor_names=names, factors=(C, D))
    first = Functor(P, C, [x // nD for x in P.objects], [f // mD for f in P.morphisms])
    second = Functor(P, D, [x % nD for x in P.objects], [f % mD for f in P.morphisms])
    logger.debug(f"Built product category with {P.n_objects} objects, {P.n_morphisms} morphisms")
    return ProductCategory(P, first, second)


def diagonal_functor(C: FinCat) -> Functor:
    """The diagonal C -> C x C."""
    P = product_category(C, C).category
    n, m = C.n_objects, C.n_morphisms
    return Functor(C, P, [x * n + x for x in C.objects], [f * m + f for f in C.morphisms])


@dataclass(frozen=True)
class CommaCategory:
    category: FinCat
    objects: Tuple[Tuple[int, int, int], ...]
    arrows: Tuple[Tuple[int, int], ...]
    first: Functor
    second: Functor
    index: Dict[Tuple[int, int, int], int]


def comma_category(F: Functor, G: Functor) -> CommaCategory:
    """(F | G): objects (c, d, h: F c -> G d), morphisms commuting squares (u, v)."""
    if F.cod != G.cod:
        raise DomainMismatch("Comma category needs functors into the same category")
    C, D, E = F.dom, G.dom, F.cod

    objects = [
        (c, d, h)
        for c in C.objects
        for d in D.objects
        for h in E.hom(F.omap[c], G.omap[d])
    ]
    index = {obj: i for i, obj in enumerate(objects)}

    src, dst, arrows = [], [], []
    for i, (c, d, h) in enumerate(objects):
        for j, (c2, d2, h2) in enumerate(objects):
            for u in C.hom(c, c2):
                for v in D.hom(d, d2):
                    if E.compose(h2, F.mmap[u]) == E.compose(G.mmap[v], h):
                        src.append(i)
                        dst.append(j)
                        arrows.append((u, v))
    arrow_index = {(src[k], dst[k], arrows[k]): k for k in range(len(arrows))}

    identity = [arrow_index[(i, i, (C.identity[c], D.identity[d]))] for i, (c, d, _) in enumerate(objects)]
    m = len(arrows)
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for k2 in range(m):
        for k1 in range(m):
            if dst[k1] == src[k2]:
                (u2, v2), (u1, v1) = arrows[k2], arrows[k1]
                key = (src[k1], dst[k2], (C.compose(u2, u1), D.compose(v2, v1)))
                comp[k2, k1] = arrow_index[key]

    obj_names = [f"({C.obj_names[c]},{D.obj_names[d]},{E.mor_names[h]})" for c, d, h in objects]
    mor_names = [f"{k}:({C.mor_names[u]},{D.mor_names[v]})" for k, (u, v) in enumerate(arrows)]
    K = FinCat(len(objects), src, dst, identity, comp, obj_names=obj_names, mor_names=mor_names)
    first = Functor(K, C, [c for c, _, _ in objects], [u for u, _ in arrows])
    second = Functor(K, D, [d for _, d, _ in objects], [v for _, v in arrows])
    return CommaCategory(K, tuple(objects), tuple(arrows), first, second, index)


@dataclass(frozen=True)
class FunctorCategory:
    category: FinCat
    functors: Tuple[Functor, ...]
    transformations: Tuple[NatTrans, ...]
    dom: FinCat
    cod: FinCat
    functor_lookup: Dict[tuple, int] = field(compare=False, repr=False)
    transformation_lookup: Dict[tuple, int] = field(compare=False, repr=False)

    def functor_index(self, F: Functor) -> int:
        return self.functor_lookup[(F.omap, F.mmap)]

    def transformation_index(self, N: NatTrans) -> int:
        i = self.functor_index(N.source)
        j = self.functor_index(N.target)
        return self.transformation_lookup[(i, j, N.components)]

    def __hash__(self) -> int:
        return hash((self.dom, self.cod))


@lru_cache(maxsize=None)
def functor_category(C: FinCat, D: FinCat) -> FunctorCategory:
    """[C, D]: all functors, all natural transformations, vertical composition."""
    functors = tuple(enumerate_functors(C, D))
    src, dst, transformations = [], [], []
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for N in enumerate_nattrans(F, G):
                src.append(i)
                dst.append(j)
                transformations.append(N)
    lookup = {(src[k], dst[k], N.components): k for k, N in enumerate(transformations)}

    identity = [
        lookup[(i, i, tuple(D.identity[F.omap[x]] for x in C.objects))]
        for i, F in enumerate(functors)
    ]
    m = len(transformations)
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for k2 in range(m):
        for k1 in range(m):
            if dst[k1] == src[k2]:
                components = tuple(
                    D.compose(b, a)
                    for b, a in zip(transformations[k2].components, transformations[k1].components)
                )
                comp[k2, k1] = lookup[(src[k1], dst[k2], components)]

    obj_names = [f"F{i}" for i in range(len(functors))]
    mor_names = [f"N{k}" for k in range(m)]
    category = FinCat(len(functors), src, dst, identity, comp, obj_names=obj_names, mor_names=mor_names)
    logger.debug(f"Functor category has {len(functors)} functors and {m} transformations")
    functor_lookup = {(F.omap, F.mmap): i for i, F in enumerate(functors)}
    return FunctorCategory(category, functors, tuple(transformations), C, D, functor_lookup, lookup)


def curry_functor(F: Functor, fc: Optional[FunctorCategory] = None) -> Functor:
    """F: C x D -> E becomes C -> [D, E]."""
    if F.dom.factors is None:
        raise NotAProductDomain("Domain was not built by product_category")
    C, D = F.dom.factors
    E = F.cod
    if fc is None:
        fc = functor_category(D, E)
    nD, mD = D.n_objects, D.n_morphisms

    omap = []
    for c in C.objects:
        partial = Functor(
            D, E,
            [F.omap[c * nD + d] for d in D.objects],
            [F.mmap[C.identity[c] * mD + g] for g in D.morphisms],
        )
        omap.append(fc.functor_index(partial))

    mmap = []
    for u in C.morphisms:
        components = tuple(F.mmap[u * mD + D.identity[d]] for d in D.objects)
        source, target = fc.functors[omap[C.src[u]]], fc.functors[omap[C.dst[u]]]
        mmap.append(fc.transformation_index(NatTrans(source, target, components)))
    return Functor(C, fc.category, omap, mmap)


def uncurry_functor(H: Functor, fc: FunctorCategory) -> Functor:
    """H: C -> [D, E] becomes C x D -> E."""
    if H.cod != fc.category:
        raise DomainMismatch("Functor does not land in the given functor category")
    C, D, E = H.dom, fc.dom, fc.cod
    P = product_category(C, D).category
    omap = [fc.functors[H.omap[c]].omap[d] for c in C.objects for d in D.objects]
    mmap = []
    for u in C.morphisms:
        N = fc.transformations[H.mmap[u]]
        target = fc.functors[H.omap[C.dst[u]]]
        for v in D.morphisms:
            # F(u, v) = F(c', v) after F(u, d)
            mmap.append(E.compose(target.mmap[v], N.components[D.src[v]]))
    return Functor(P, E, omap, mmap)


@dataclass(frozen=True)
class CatExtremes:
    unit: FinCat
    empty: FinCat
    from_empty: int
    to_unit: int

    @property
    def ok(self) -> bool:
        return self.from_empty == 1 and self.to_unit == 1


def cat_terminal_initial_witness(C: FinCat) -> CatExtremes:
    """Counts functors empty -> C and C -> 1; both must be exactly one."""
    unit, empty = unit_category(), empty_category()
    return CatExtremes(unit, empty, count_functors(empty, C), count_functors(C, unit))
