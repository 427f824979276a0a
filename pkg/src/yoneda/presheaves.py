"""
Representable presheaves, the Yoneda embedding and the Yoneda bijection.

Presheaves on C are set-valued diagrams on opposite_category(C). Hom-sets
list their arrows in morphism-index order and are labelled by arrow names.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.category.core import FinCat, opposite_category
from src.finset.diagrams import Diagram, SetTransformation, enumerate_set_transformations
from src.finset.sets import FinFn, FinSetObj, compose_fns, identity_fn

logger = logging.getLogger(__name__)

Presheaf = Diagram


def hom_functor(C: FinCat, c: int) -> Presheaf:
    """y c = Hom(-, c), acting on f: d' -> d by precomposition."""
    Cop = opposite_category(C)
    sets = [FinSetObj([C.mor_names[h] for h in C.hom(d, c)]) for d in C.objects]
    fns = []
    for f in C.morphisms:
        d, d2 = C.dst[f], C.src[f]
        source, target = C.hom(d, c), C.hom(d2, c)
        fns.append(FinFn(sets[d], sets[d2], [target.index(C.compose(h, f)) for h in source]))
    return Diagram(Cop, sets, fns)


def postcomposition(C: FinCat, g: int, presheaves: Optional[List[Presheaf]] = None) -> SetTransformation:
    """y g: y c => y c' sends h to g . h."""
    c, c2 = C.src[g], C.dst[g]
    source = presheaves[c] if presheaves else hom_functor(C, c)
    target = presheaves[c2] if presheaves else hom_functor(C, c2)
    components = []
    for d in C.objects:
        homs, homs2 = C.hom(d, c), C.hom(d, c2)
        components.append(FinFn(
            source.on_objects[d], target.on_objects[d],
            [homs2.index(C.compose(g, h)) for h in homs],
        ))
    return SetTransformation(source, target, components)


@dataclass(frozen=True)
class YonedaEmbedding:
    category: FinCat
    presheaves: Tuple[Presheaf, ...]
    arrows: Tuple[SetTransformation, ...]


def yoneda_embedding(C: FinCat) -> YonedaEmbedding:
    presheaves = [hom_functor(C, c) for c in C.objects]
    arrows = tuple(postcomposition(C, g, presheaves) for g in C.morphisms)
    return YonedaEmbedding(C, tuple(presheaves), arrows)


def _vertical(beta: SetTransformation, alpha: SetTransformation) -> SetTransformation:
    return SetTransformation(
        alpha.source, beta.target,
        [compose_fns(b, a) for b, a in zip(beta.components, alpha.components)],
    )


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    functorial: bool
    faithful: bool
    full: bool
    counts: Tuple[Tuple[int, int, int, int], ...]
    witness: Optional[Tuple] = None


def check_embedding(embedding: YonedaEmbedding) -> EmbeddingReport:
    """Functoriality, then Hom(c, c') -> Nat(y c, y c') bijective for every pair."""
    C = embedding.category
    functorial, witness = True, None
    for c in C.objects:
        arrow = embedding.arrows[C.identity[c]]
        if any(fn != identity_fn(fn.dom) for fn in arrow.components):
            functorial, witness = False, ("identity", c)
    for g in C.morphisms:
        for f in C.morphisms:
            if functorial and C.composable(g, f):
                composite = _vertical(embedding.arrows[g], embedding.arrows[f])
                if composite != embedding.arrows[C.compose(g, f)]:
                    functorial, witness = False, ("composition", g, f)

    faithful = full = True
    counts = []
    for c in C.objects:
        for c2 in C.objects:
            homs = C.hom(c, c2)
            images = {embedding.arrows[g].components for g in homs}
            nats = sum(1 for _ in enumerate_set_transformations(embedding.presheaves[c], embedding.presheaves[c2]))
            counts.append((c, c2, len(homs), nats))
            if len(images) != len(homs):
                faithful = False
                witness = witness or ("faithful", c, c2)
            if nats != len(homs):
                full = False
                witness = witness or ("full", c, c2)
    ok = functorial and faithful and full
    if not ok:
        logger.info(f"Yoneda embedding check fails at {witness}")
    return EmbeddingReport(ok, functorial, faithful, full, tuple(counts), witness)


@dataclass(frozen=True)
class YonedaBijection:
    presheaf: Presheaf
    obj: int
    transformations: Tuple[SetTransformation, ...]
    forward: Tuple[int, ...]
    inverse: Tuple[SetTransformation, ...]
    round_trips: bool

    @property
    def cardinalities(self) -> Tuple[int, int]:
        return len(self.transformations), len(self.presheaf.on_objects[self.obj])


def yoneda_element(alpha: SetTransformation, C: FinCat, c: int) -> int:
    """theta(alpha) = alpha_c(id_c)."""
    return alpha.components[c].table[C.hom(c, c).index(C.identity[c])]


def yoneda_transformation(F: Presheaf, C: FinCat, c: int, x: int, representable: Optional[Presheaf] = None) -> SetTransformation:
    """alpha_d(f) = F(f)(x) for f: d -> c."""
    yc = representable or hom_functor(C, c)
    components = [
        FinFn(yc.on_objects[d], F.on_objects[d], [F.on_morphisms[f].table[x] for f in C.hom(d, c)])
        for d in C.objects
    ]
    return SetTransformation(yc, F, components)


def yoneda_bijection(F: Presheaf, c: int, C: Optional[FinCat] = None) -> YonedaBijection:
    """Nat(y c, F) ~ F(c), both directions and both round trips."""
    C = C or opposite_category(F.shape)
    if F.shape != opposite_category(C):
        raise ValueError("Presheaf is not defined on the opposite of C")
    yc = hom_functor(C, c)
    transformations = tuple(enumerate_set_transformations(yc, F))
    forward = tuple(yoneda_element(alpha, C, c) for alpha in transformations)
    inverse = tuple(yoneda_transformation(F, C, c, x, yc) for x in range(len(F.on_objects[c])))
    round_trips = (
        all(yoneda_element(alpha, C, c) == x for x, alpha in enumerate(inverse))
        and all(inverse[forward[k]] == alpha for k, alpha in enumerate(transformations))
        and len(transformations) == len(inverse)
    )
    if not round_trips:
        logger.info(f"Yoneda round trip fails at {C.obj_names[c]}")
    return YonedaBijection(F, c, transformations, forward, inverse, round_trips)


def yoneda_naturality_check(F: Presheaf, C: Optional[FinCat] = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """theta_c(alpha . y g) = F(g)(theta_c'(alpha)) for every g: c -> c' and alpha: y c' => F."""
    C = C or opposite_category(F.shape)
    presheaves = [hom_functor(C, c) for c in C.objects]
    for g in C.morphisms:
        c, c2 = C.src[g], C.dst[g]
        yg = postcomposition(C, g, presheaves)
        for alpha in enumerate_set_transformations(presheaves[c2], F):
            lhs = yoneda_element(_vertical(alpha, yg), C, c)
            rhs = F.on_morphisms[g].table[yoneda_element(alpha, C, c2)]
            if lhs != rhs:
                return False, (g, yoneda_element(alpha, C, c2))
    return True, None
