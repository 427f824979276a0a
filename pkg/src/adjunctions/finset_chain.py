"""
The adjunction chain + -| diagonal -| x and (- x X) -| (-)^X on finite sets.

Finite sets do not form a FinCat, so each adjunction is given by its
explicit hom-set bijections; naturality is checked against every function
between test sets of size <= bound.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from src.errors import UnknownKind
from src.finset.constructions import (
    fs_exponential, fs_exponential_map, fs_product, fs_product_map, fs_sum,
)
from src.finset.sets import FinFn, FinSetObj, all_functions, canonical_set, compose_fns, identity_fn

logger = logging.getLogger(__name__)

WITNESS_KINDS = ("sum_diag", "diag_prod", "prod_exp")


@dataclass(frozen=True)
class SetAdjunctionReport:
    kind: str
    bound: int
    ok: bool
    instances: int
    squares: int
    witness: Optional[Tuple] = None
    detail: str = ""


def fs_sum_map(u: FinFn, v: FinFn) -> FinFn:
    """u + v : A' + B' -> A + B."""
    source = fs_sum(u.dom, v.dom)
    target = fs_sum(u.cod, v.cod)
    return source.copair(compose_fns(target.inj1, u), compose_fns(target.inj2, v))


# Hom(A + B, C) ~ Hom(A, C) x Hom(B, C)

def sum_split(h: FinFn, A: FinSetObj, B: FinSetObj) -> Tuple[FinFn, FinFn]:
    S = fs_sum(A, B)
    return compose_fns(h, S.inj1), compose_fns(h, S.inj2)


def sum_join(f: FinFn, g: FinFn) -> FinFn:
    return fs_sum(f.dom, g.dom).copair(f, g)


# Hom(A, B) x Hom(A, C) ~ Hom(A, B x C)

def prod_join(f: FinFn, g: FinFn) -> FinFn:
    return fs_product(f.cod, g.cod).pair(f, g)


def prod_split(h: FinFn, B: FinSetObj, C: FinSetObj) -> Tuple[FinFn, FinFn]:
    P = fs_product(B, C)
    return compose_fns(P.proj1, h), compose_fns(P.proj2, h)


# Hom(A x X, B) ~ Hom(A, B^X)

def curry_fn(f: FinFn, A: FinSetObj, X: FinSetObj) -> FinFn:
    return fs_exponential(X, f.cod).transpose(f, A)


def uncurry_fn(k: FinFn, X: FinSetObj, B: FinSetObj) -> FinFn:
    E = fs_exponential(X, B)
    return compose_fns(E.eval, fs_product_map(k, identity_fn(X)))


def _sets(bound: int):
    return [canonical_set(n) for n in range(bound + 1)]


def _maps(bound: int, target: FinSetObj) -> Iterator[FinFn]:
    """Every map from a test set into target."""
    for X in _sets(bound):
        yield from all_functions(X, target)


def _maps_from(bound: int, source: FinSetObj) -> Iterator[FinFn]:
    for X in _sets(bound):
        yield from all_functions(source, X)


def _check_sum_diag(bound: int) -> SetAdjunctionReport:
    instances = squares = 0
    for A, B, C in itertools.product(_sets(bound), repeat=3):
        instances += 1
        S = fs_sum(A, B)
        for h in all_functions(S.obj, C):
            f, g = sum_split(h, A, B)
            if sum_join(f, g) != h:
                return SetAdjunctionReport("sum_diag", bound, False, instances, squares, (len(A), len(B), len(C), h.table), "round trip fails")
            for k in _maps_from(bound, C):
                squares += 1
                if sum_split(compose_fns(k, h), A, B) != (compose_fns(k, f), compose_fns(k, g)):
                    return SetAdjunctionReport("sum_diag", bound, False, instances, squares, (h.table, k.table), "not natural in C")
            for u in _maps(bound, A):
                for v in _maps(bound, B):
                    squares += 1
                    if sum_split(compose_fns(h, fs_sum_map(u, v)), u.dom, v.dom) != (compose_fns(f, u), compose_fns(g, v)):
                        return SetAdjunctionReport("sum_diag", bound, False, instances, squares, (h.table, u.table, v.table), "not natural in (A, B)")
        if len(list(all_functions(S.obj, C))) != len(C) ** len(A) * len(C) ** len(B):
            return SetAdjunctionReport("sum_diag", bound, False, instances, squares, (len(A), len(B), len(C)), "cardinalities differ")
    return SetAdjunctionReport("sum_diag", bound, True, instances, squares)


def _check_diag_prod(bound: int) -> SetAdjunctionReport:
    instances = squares = 0
    for A, B, C in itertools.product(_sets(bound), repeat=3):
        instances += 1
        P = fs_product(B, C)
        for h in all_functions(A, P.obj):
            f, g = prod_split(h, B, C)
            if prod_join(f, g) != h:
                return SetAdjunctionReport("diag_prod", bound, False, instances, squares, (len(A), len(B), len(C), h.table), "round trip fails")
            for u in _maps(bound, A):
                squares += 1
                if prod_split(compose_fns(h, u), B, C) != (compose_fns(f, u), compose_fns(g, u)):
                    return SetAdjunctionReport("diag_prod", bound, False, instances, squares, (h.table, u.table), "not natural in A")
            for k in _maps_from(bound, B):
                for l in _maps_from(bound, C):
                    squares += 1
                    lhs = prod_split(compose_fns(fs_product_map(k, l), h), k.cod, l.cod)
                    if lhs != (compose_fns(k, f), compose_fns(l, g)):
                        return SetAdjunctionReport("diag_prod", bound, False, instances, squares, (h.table, k.table, l.table), "not natural in (B, C)")
    return SetAdjunctionReport("diag_prod", bound, True, instances, squares)


def _check_prod_exp(bound: int) -> SetAdjunctionReport:
    instances = squares = 0
    for A, X, B in itertools.product(_sets(bound), repeat=3):
        instances += 1
        AX = fs_product(A, X).obj
        E = fs_exponential(X, B)
        count = 0
        for f in all_functions(AX, B):
            count += 1
            k = curry_fn(f, A, X)
            if uncurry_fn(k, X, B) != f:
                return SetAdjunctionReport("prod_exp", bound, False, instances, squares, (len(A), len(X), len(B), f.table), "round trip fails")
            for u in _maps(bound, A):
                squares += 1
                if curry_fn(compose_fns(f, fs_product_map(u, identity_fn(X))), u.dom, X) != compose_fns(k, u):
                    return SetAdjunctionReport("prod_exp", bound, False, instances, squares, (f.table, u.table), "not natural in A")
            for v in _maps_from(bound, B):
                squares += 1
                post = fs_exponential_map(E, fs_exponential(X, v.cod), post=v)
                if curry_fn(compose_fns(v, f), A, X) != compose_fns(post, k):
                    return SetAdjunctionReport("prod_exp", bound, False, instances, squares, (f.table, v.table), "not natural in B")
        if count != len(E.obj) ** len(A):
            return SetAdjunctionReport("prod_exp", bound, False, instances, squares, (len(A), len(X), len(B)), "cardinalities differ")
    return SetAdjunctionReport("prod_exp", bound, True, instances, squares)


_WITNESSES = {
    "sum_diag": _check_sum_diag,
    "diag_prod": _check_diag_prod,
    "prod_exp": _check_prod_exp,
}


def fs_adjunction_witness(kind: str, bound: int) -> SetAdjunctionReport:
    if kind not in _WITNESSES:
        raise UnknownKind(f"Unknown finite-set adjunction: {kind}")
    report = _WITNESSES[kind](bound)
    if not report.ok:
        logger.info(f"Adjunction witness {kind} fails at {report.witness}: {report.detail}")
    return report
