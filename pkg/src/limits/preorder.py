"""
A complete finite category is a preorder.

Completeness is decided on the generating limits: a terminal object,
binary products of every pair of objects and equalizers of every parallel
pair. Those give every finite limit, in particular the |Mor C|-fold power
y' of an object y, whose hom-sets Hom(x, y') are in bijection with the
functions Mor C -> Hom(x, y). Counting both sides forces |Hom(x, y)| <= 1.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.category.catalog import discrete, parallel_pair
from src.category.core import FinCat, Functor, empty_category
from src.limits.cones import Cone, arrow_index, diagram_in, limit_by_search

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomPowerCheck:
    x: int
    y: int
    power: int
    lhs: int
    rhs: int
    bijective: bool


@dataclass(frozen=True)
class PreorderReport:
    complete: bool
    missing: Optional[Tuple] = None
    preorder: Optional[bool] = None
    violation: Optional[Tuple[int, int]] = None
    hom_powers: Tuple[HomPowerCheck, ...] = ()

    @property
    def ok(self) -> bool:
        """The implication complete => preorder, with every hom-power bijection."""
        if not self.complete:
            return True
        return bool(self.preorder) and all(check.bijective for check in self.hom_powers)


def missing_generating_limit(C: FinCat) -> Optional[Tuple]:
    """First generating limit C lacks, as (kind, data), or None when C is complete."""
    if limit_by_search(Functor(empty_category(), C, (), ())) is None:
        return ("terminal",)
    two = discrete(2)
    for a in C.objects:
        for b in C.objects:
            if limit_by_search(diagram_in(two, C, (a, b))) is None:
                return ("product", a, b)
    pair = parallel_pair()
    for a in C.objects:
        for b in C.objects:
            for f, g in itertools.combinations(C.hom(a, b), 2):
                D = Functor(pair, C, (a, b), (C.identity[a], C.identity[b], f, g))
                if limit_by_search(D) is None:
                    return ("equalizer", f, g)
    return None


def hom_power(C: FinCat, x: int, y: int, power: Cone) -> HomPowerCheck:
    """Compare Hom(x, y') against functions Mor C -> Hom(x, y) via u -> (leg_k . u)_k."""
    homs = C.hom(x, y)
    images = set()
    for u in C.hom(x, power.apex):
        images.add(tuple(C.compose(leg, u) for leg in power.legs))
    rhs = len(homs) ** C.n_morphisms
    lhs = len(C.hom(x, power.apex))
    bijective = lhs == rhs and len(images) == lhs
    return HomPowerCheck(x, y, C.n_morphisms, lhs, rhs, bijective)


def complete_preorder_check(C: FinCat) -> PreorderReport:
    """Completeness here means a terminal object, binary products and equalizers.

    In a finite category that is equivalent to having limits of every diagram
    over a shape with at most max(|Mor C|, 3) objects: every finite limit is an
    equalizer of two maps between finite products. When complete, each
    hom-power bijection is checked and every hom-set must have at most one arrow.
    """
    missing = missing_generating_limit(C)
    if missing is not None:
        logger.debug(f"Category is not complete: missing {missing}")
        return PreorderReport(False, missing)

    violation = None
    for x in C.objects:
        for y in C.objects:
            if len(C.hom(x, y)) > 1:
                violation = (x, y)
                break
        if violation:
            break

    arrows = arrow_index(C)
    checks: List[HomPowerCheck] = []
    for y in C.objects:
        power = limit_by_search(diagram_in(arrows, C, (y,) * C.n_morphisms))
        if power is None:
            continue
        for x in C.objects:
            checks.append(hom_power(C, x, y, power))

    report = PreorderReport(True, None, violation is None, violation, tuple(checks))
    if not report.ok:
        logger.info(f"Complete category fails the preorder conclusion at {violation}")
    return report
