"""
Universal-property checks for Kan extensions: local (cones and hom-functor
forms, against every functor M: D -> E), global (the extension as right
adjoint to precomposition), uniqueness and preservation.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.adjunctions.forms import AdjHom, validate_adjunction
from src.category.constructions import functor_category
from src.category.core import (
    FinCat, Functor, NatTrans, compose_functors, is_natural_isomorphism, opposite_functor,
    opposite_nattrans, whisker_left, whisker_right,
)
from src.category.enumerate import enumerate_functors, enumerate_nattrans
from src.category.laws import ValidationReport
from src.errors import DomainMismatch, PointwiseKanMissing
from src.finset.diagrams import Diagram, enumerate_diagrams, enumerate_set_transformations, precompose_diagram
from src.finset.sets import FinFn, FinSetObj, compose_fns
from src.kan.pointwise import KanResult, SetKanResult, right_kan_pointwise, right_kan_sets

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KanReport:
    ok: bool
    form: str = ""
    checked: int = 0
    witness: Optional[Tuple] = None
    detail: str = ""
    counts: Tuple[Tuple[int, int], ...] = ()


def _transported(result: KanResult, sigma: NatTrans) -> Tuple[int, ...]:
    """comparison . (sigma p), componentwise (right extensions)."""
    E = result.F.cod
    p = result.p
    return tuple(
        E.compose(result.comparison.components[c], sigma.components[p.omap[c]])
        for c in p.dom.objects
    )


def _local_verdict(
    buckets: Dict[Tuple, int], deltas: List[Tuple], n_sigma: int, m: int, checked: int,
) -> Optional[KanReport]:
    # cones form: each delta has exactly one sigma
    for delta in deltas:
        if buckets.get(delta, 0) != 1:
            return KanReport(False, "cones", checked, (m, delta), f"{buckets.get(delta, 0)} factorizations")
    # hom-functor form: sigma -> comparison.(sigma p) is a bijection
    if n_sigma != len(deltas) or any(count != 1 for count in buckets.values()):
        return KanReport(False, "hom", checked, (m,), f"|Nat(M, K)| = {n_sigma} but |Nat(M.p, F)| = {len(deltas)}")
    return None


def kan_local_check(candidate: KanResult, F: Functor, p: Functor) -> KanReport:
    """Both characterizations of a right Kan extension against every M: D -> E."""
    if candidate.F != F or candidate.p != p:
        raise DomainMismatch("Candidate does not extend F along p")
    D, E = p.cod, F.cod
    K = candidate.extension
    counts = []
    checked = 0
    for m, M in enumerate(enumerate_functors(D, E)):
        buckets: Dict[Tuple, int] = {}
        n_sigma = 0
        for sigma in enumerate_nattrans(M, K):
            n_sigma += 1
            key = _transported(candidate, sigma)
            buckets[key] = buckets.get(key, 0) + 1
        deltas = [delta.components for delta in enumerate_nattrans(compose_functors(M, p), F)]
        checked += 1
        counts.append((n_sigma, len(deltas)))
        failure = _local_verdict(buckets, deltas, n_sigma, m, checked)
        if failure:
            logger.info(f"Kan check ({failure.form}) fails at M{m}: {failure.detail}")
            return failure
    return KanReport(True, "cones+hom", checked, counts=tuple(counts))


def kan_local_check_sets(candidate: SetKanResult, bound: int) -> KanReport:
    """Same checks for set-valued extensions, M ranging over diagrams with sets of size <= bound."""
    F, p = candidate.F, candidate.p
    R = candidate.extension
    counts = []
    checked = 0
    for m, M in enumerate(enumerate_diagrams(p.cod, bound)):
        buckets: Dict[Tuple, int] = {}
        n_sigma = 0
        for sigma in enumerate_set_transformations(M, R):
            n_sigma += 1
            key = tuple(
                compose_fns(candidate.comparison.components[c], sigma.components[p.omap[c]]).table
                for c in p.dom.objects
            )
            buckets[key] = buckets.get(key, 0) + 1
        deltas = [
            tuple(fn.table for fn in delta.components)
            for delta in enumerate_set_transformations(precompose_diagram(M, p), F)
        ]
        checked += 1
        counts.append((n_sigma, len(deltas)))
        failure = _local_verdict(buckets, deltas, n_sigma, m, checked)
        if failure:
            logger.info(f"Set Kan check ({failure.form}) fails at M{m}: {failure.detail}")
            return failure
    return KanReport(True, "cones+hom", checked, counts=tuple(counts))


def _mediator(result: KanResult, target: KanResult, alpha: NatTrans) -> Optional[NatTrans]:
    """The sigma: Ran F => Ran F' with comparison' . (sigma p) = alpha . comparison."""
    E = result.F.cod
    wanted = tuple(
        E.compose(a, k) for a, k in zip(alpha.components, result.comparison.components)
    )
    found = [
        sigma for sigma in enumerate_nattrans(result.extension, target.extension)
        if _transported(target, sigma) == wanted
    ]
    return found[0] if len(found) == 1 else None


@dataclass(frozen=True)
class KanGlobalReport:
    ok: bool
    adjunction: ValidationReport
    counts_match: bool
    precomposition: Functor
    extension: Functor


def kan_global_check(p: Functor, E: FinCat) -> KanGlobalReport:
    """Ran_p as the right adjoint of precomposition [D, E] -> [C, E]."""
    C, D = p.dom, p.cod
    fcC, fcD = functor_category(C, E), functor_category(D, E)

    pre_omap = [fcC.functor_index(compose_functors(M, p)) for M in fcD.functors]
    pre_mmap = [fcC.transformation_index(whisker_right(N, p)) for N in fcD.transformations]
    precomposition = Functor(fcD.category, fcC.category, pre_omap, pre_mmap)

    results: List[KanResult] = []
    for k, F in enumerate(fcC.functors):
        result = right_kan_pointwise(F, p)
        if result is None:
            raise PointwiseKanMissing(f"No pointwise right Kan extension of F{k}")
        results.append(result)

    ran_omap = [fcD.functor_index(result.extension) for result in results]
    ran_mmap = []
    for alpha in fcC.transformations:
        i, j = fcC.functor_index(alpha.source), fcC.functor_index(alpha.target)
        sigma = _mediator(results[i], results[j], alpha)
        if sigma is None:
            raise PointwiseKanMissing("Extension is not functorial on transformations")
        ran_mmap.append(fcD.transformation_index(sigma))
    extension = Functor(fcC.category, fcD.category, ran_omap, ran_mmap)

    phi = []
    counts_match = True
    for m, M in enumerate(fcD.functors):
        column = []
        for k, F in enumerate(fcC.functors):
            row = []
            deltas = fcC.category.hom(pre_omap[m], k)
            for delta_index in deltas:
                delta = fcC.transformations[delta_index]
                matches = [
                    sigma_index for sigma_index in fcD.category.hom(m, ran_omap[k])
                    if _transported(results[k], fcD.transformations[sigma_index]) == delta.components
                ]
                if len(matches) == 1:
                    row.append(matches[0])
            if len(fcD.category.hom(m, ran_omap[k])) != len(deltas):
                counts_match = False
            column.append(tuple(row))
        phi.append(tuple(column))

    report = validate_adjunction(AdjHom(precomposition, extension, tuple(phi)))
    logger.debug(f"Global Kan check over {len(fcC.functors)} functors: {report.ok}")
    return KanGlobalReport(report.ok and counts_match, report, counts_match, precomposition, extension)


def kan_isomorphism(first: KanResult, second: KanResult) -> Optional[NatTrans]:
    """The unique sigma with second.comparison . (sigma p) = first.comparison, when it is invertible."""
    if first.F != second.F or first.p != second.p:
        raise DomainMismatch("Extensions of different functors")
    E = first.F.cod
    identity = NatTrans(first.F, first.F, [E.identity[x] for x in first.F.omap])
    sigma = _mediator(first, second, identity)
    if sigma is None or not is_natural_isomorphism(sigma):
        return None
    return sigma


def postcompose_kan(result: KanResult, G: Functor) -> KanResult:
    """G . Ran_p F with comparison G(comparison), a candidate for Ran_p (G . F)."""
    return KanResult(
        compose_functors(G, result.F), result.p,
        compose_functors(G, result.extension), whisker_left(G, result.comparison),
    )


def covariant_hom_diagram(F: Functor, e: int) -> Diagram:
    """c -> Hom(e, F c), acting by postcomposition with F."""
    E, C = F.cod, F.dom
    sets = [FinSetObj([E.mor_names[h] for h in E.hom(e, F.omap[c])]) for c in C.objects]
    fns = []
    for f in C.morphisms:
        source, target = E.hom(e, F.omap[C.src[f]]), E.hom(e, F.omap[C.dst[f]])
        fns.append(FinFn(sets[C.src[f]], sets[C.dst[f]], [target.index(E.compose(F.mmap[f], h)) for h in source]))
    return Diagram(C, sets, fns)


@dataclass(frozen=True)
class RepresentableReport:
    ok: bool
    sizes: Tuple[Tuple[int, int], ...]
    witness: Optional[int] = None


def representable_preservation(result: KanResult, e: int) -> RepresentableReport:
    """Hom(e, Ran_p F d) against Ran_p Hom(e, F -) (d), by a constructed bijection at each d."""
    E, D = result.F.cod, result.p.cod
    hom_F = covariant_hom_diagram(result.F, e)
    set_ran = right_kan_sets(hom_F, result.p)
    sizes = []
    for d in D.objects:
        L = set_ran.pointwise[d]
        K = result.extension
        # u: e -> Ran d goes to its family of composites with the limit legs
        limit_cone = right_kan_limit_legs(result, d)
        families = set()
        for u in E.hom(e, K.omap[d]):
            family = []
            for (c, h), leg in limit_cone:
                composite = E.compose(leg, u)
                family.append(E.hom(e, result.F.omap[c]).index(composite))
            families.add(tuple(family))
        lhs = len(E.hom(e, K.omap[d]))
        sizes.append((lhs, len(L.obj)))
        if lhs != len(L.obj) or len(families) != lhs or not families <= set(L.families):
            return RepresentableReport(False, tuple(sizes), d)
    return RepresentableReport(True, tuple(sizes))


def right_kan_limit_legs(result: KanResult, d: int) -> List[Tuple[Tuple[int, int], int]]:
    """Legs Ran(d) -> F c indexed by comma objects (c, h: d -> p c), rebuilt from the extension."""
    E, D, p = result.F.cod, result.p.cod, result.p
    legs = []
    for c in p.dom.objects:
        for h in D.hom(d, p.omap[c]):
            legs.append(((c, h), E.compose(result.comparison.components[c], result.extension.mmap[h])))
    return legs


def kan_local_check_left(candidate: KanResult) -> KanReport:
    """A left extension checked as the right extension of the opposite functors."""
    dual = KanResult(
        opposite_functor(candidate.F), opposite_functor(candidate.p),
        opposite_functor(candidate.extension), opposite_nattrans(candidate.comparison),
    )
    return kan_local_check(dual, dual.F, dual.p)
