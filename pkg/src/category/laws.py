"""
Exhaustive law checks for categories, functors and natural transformations.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from src.category.core import UNDEFINED, FinCat, Functor, NatTrans
from src.errors import InvalidStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: Tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.law}{self.witness}: {self.detail}" if self.detail else f"{self.law}{self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violation: Optional[LawViolation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def _check_category(C: FinCat) -> Optional[LawViolation]:
    m = C.n_morphisms

    # Identities are endomorphisms of their object
    for x in C.objects:
        i = C.identity[x]
        if C.src[i] != x or C.dst[i] != x:
            return LawViolation("Typing", (i,), f"identity of object {x} is not an endomorphism of it")

    # comp defined for every composable pair and no other
    for g in range(m):
        for f in range(m):
            h = C.raw_comp(g, f)
            if C.composable(g, f) and h == UNDEFINED:
                return LawViolation("Typing", (g, f), "composite missing for a composable pair")
            if not C.composable(g, f) and h != UNDEFINED:
                return LawViolation("Typing", (g, f), "composite defined for a non-composable pair")

    for f in range(m):
        if C.raw_comp(C.identity[C.dst[f]], f) != f or C.raw_comp(f, C.identity[C.src[f]]) != f:
            return LawViolation("IdentityLaw", (f,), f"identity law fails for {C.mor_names[f]}")

    for g in range(m):
        for f in range(m):
            h = C.raw_comp(g, f)
            if h != UNDEFINED and (C.src[h] != C.src[f] or C.dst[h] != C.dst[g]):
                return LawViolation("Typing", (h,), f"composite of {g} after {f} has the wrong type")

    for h in range(m):
        for g in range(m):
            if not C.composable(h, g):
                continue
            hg = C.raw_comp(h, g)
            for f in range(m):
                if not C.composable(g, f):
                    continue
                if C.raw_comp(h, C.raw_comp(g, f)) != C.raw_comp(hg, f):
                    return LawViolation("Associativity", (h, g, f), "composition is not associative")
    return None


def _check_functor(F: Functor) -> Optional[LawViolation]:
    C, D = F.dom, F.cod
    for f in C.morphisms:
        g = F.mmap[f]
        if D.src[g] != F.omap[C.src[f]] or D.dst[g] != F.omap[C.dst[f]]:
            return LawViolation("Typing", (f,), f"image of {C.mor_names[f]} has the wrong type")
    for x in C.objects:
        if F.mmap[C.identity[x]] != D.identity[F.omap[x]]:
            return LawViolation("IdentityLaw", (x,), f"identity of {C.obj_names[x]} is not preserved")
    for g in C.morphisms:
        for f in C.morphisms:
            if C.composable(g, f) and F.mmap[C.compose(g, f)] != D.compose(F.mmap[g], F.mmap[f]):
                return LawViolation("Composition", (g, f), "composition is not preserved")
    return None


def _check_nattrans(N: NatTrans) -> Optional[LawViolation]:
    F, G = N.source, N.target
    C, D = F.dom, F.cod
    for x in C.objects:
        a = N.components[x]
        if D.src[a] != F.omap[x] or D.dst[a] != G.omap[x]:
            return LawViolation("Typing", (x,), f"component at {C.obj_names[x]} has the wrong type")
    for f in C.morphisms:
        lhs = D.compose(G.mmap[f], N.components[C.src[f]])
        rhs = D.compose(N.components[C.dst[f]], F.mmap[f])
        if lhs != rhs:
            return LawViolation("Naturality", (f,), f"naturality square fails at {C.mor_names[f]}")
    return None


def validate(entity: Union[FinCat, Functor, NatTrans]) -> ValidationReport:
    """Pass, or the first violated law with a witness tuple."""
    if isinstance(entity, FinCat):
        violation = _check_category(entity)
    elif isinstance(entity, Functor):
        violation = _check_functor(entity)
    elif isinstance(entity, NatTrans):
        violation = _check_nattrans(entity)
    else:
        raise TypeError(f"Cannot validate {type(entity).__name__}")
    if violation is not None:
        logger.info(f"{type(entity).__name__} fails {violation}")
    return ValidationReport(type(entity).__name__, violation)


def require_valid(entity) -> None:
    report = validate(entity)
    if not report.ok:
        raise InvalidStructure(report.violation)
