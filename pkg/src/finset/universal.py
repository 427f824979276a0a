"""
Bounded checks of universal properties in finite sets.

Every candidate mediating map out of (or into) each test set of size <= bound
is enumerated and bucketed by the data it induces; a construction passes when
every admissible datum has exactly one mediator and that mediator is the one
its own operator (pair, copair, factor, transpose) returns.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.errors import UnknownKind
from src.finset.constructions import (
    FinCoequalizer, FinEqualizer, FinExponential, FinProduct, FinPullback, FinSum,
    SliceExponential, fs_product, fs_product_map, fs_pullback,
)
from src.finset.sets import FinFn, FinSetObj, all_functions, canonical_set, compose_fns, identity_fn

logger = logging.getLogger(__name__)

KINDS = (
    "terminal", "initial", "product", "sum", "equalizer",
    "coequalizer", "exponential", "pullback-square",
)


@dataclass(frozen=True)
class UniversalReport:
    kind: str
    bound: int
    ok: bool
    checked: int
    witness: Optional[Tuple] = None
    detail: str = ""


Key = Tuple[Tuple[int, ...], ...]


def _bucket(mediators: Iterable[FinFn], induced: Callable[[FinFn], Key]) -> Dict[Key, List[FinFn]]:
    buckets: Dict[Key, List[FinFn]] = {}
    for u in mediators:
        buckets.setdefault(induced(u), []).append(u)
    return buckets


def _judge(
    kind: str,
    bound: int,
    X: FinSetObj,
    data: Iterable[Key],
    buckets: Dict[Key, List[FinFn]],
    chosen: Callable[[Key], FinFn],
) -> Tuple[int, Optional[UniversalReport]]:
    checked = 0
    for key in data:
        checked += 1
        found = buckets.get(key, [])
        if len(found) != 1:
            detail = "no mediating map" if not found else f"{len(found)} mediating maps"
            return checked, UniversalReport(kind, bound, False, checked, (len(X), key), detail)
        if chosen(key) != found[0]:
            return checked, UniversalReport(
                kind, bound, False, checked, (len(X), key), "constructed mediator is not the universal one"
            )
    return checked, None


def _test_sets(bound: int):
    for n in range(bound + 1):
        yield canonical_set(n)


def _check_terminal(T: FinSetObj, bound: int) -> UniversalReport:
    checked = 0
    for X in _test_sets(bound):
        checked += 1
        count = sum(1 for _ in all_functions(X, T))
        if count != 1:
            return UniversalReport("terminal", bound, False, checked, (len(X),), f"{count} maps into candidate")
    return UniversalReport("terminal", bound, True, checked)


def _check_initial(I: FinSetObj, bound: int) -> UniversalReport:
    checked = 0
    for X in _test_sets(bound):
        checked += 1
        count = sum(1 for _ in all_functions(I, X))
        if count != 1:
            return UniversalReport("initial", bound, False, checked, (len(X),), f"{count} maps out of candidate")
    return UniversalReport("initial", bound, True, checked)


def _check_product(P: FinProduct, bound: int) -> UniversalReport:
    total = 0
    for X in _test_sets(bound):
        buckets = _bucket(
            all_functions(X, P.obj),
            lambda u: (compose_fns(P.proj1, u).table, compose_fns(P.proj2, u).table),
        )
        data = (
            (f.table, g.table)
            for f in all_functions(X, P.left)
            for g in all_functions(X, P.right)
        )
        checked, failure = _judge(
            "product", bound, X, data, buckets,
            lambda key: P.pair(FinFn(X, P.left, key[0]), FinFn(X, P.right, key[1])),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("product", bound, True, total)


def _check_sum(S: FinSum, bound: int) -> UniversalReport:
    total = 0
    for X in _test_sets(bound):
        buckets = _bucket(
            all_functions(S.obj, X),
            lambda u: (compose_fns(u, S.inj1).table, compose_fns(u, S.inj2).table),
        )
        data = (
            (f.table, g.table)
            for f in all_functions(S.left, X)
            for g in all_functions(S.right, X)
        )
        checked, failure = _judge(
            "sum", bound, X, data, buckets,
            lambda key: S.copair(FinFn(S.left, X, key[0]), FinFn(S.right, X, key[1])),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("sum", bound, True, total)


def _check_equalizer(E: FinEqualizer, bound: int) -> UniversalReport:
    total = 0
    for X in _test_sets(bound):
        buckets = _bucket(all_functions(X, E.obj), lambda u: (compose_fns(E.inclusion, u).table,))
        data = (
            (h.table,)
            for h in all_functions(X, E.f.dom)
            if compose_fns(E.f, h) == compose_fns(E.g, h)
        )
        checked, failure = _judge(
            "equalizer", bound, X, data, buckets,
            lambda key: E.factor(FinFn(X, E.f.dom, key[0])),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("equalizer", bound, True, total)


def _check_coequalizer(Q: FinCoequalizer, bound: int) -> UniversalReport:
    total = 0
    for X in _test_sets(bound):
        buckets = _bucket(all_functions(Q.obj, X), lambda u: (compose_fns(u, Q.quotient).table,))
        data = (
            (h.table,)
            for h in all_functions(Q.f.cod, X)
            if compose_fns(h, Q.f) == compose_fns(h, Q.g)
        )
        checked, failure = _judge(
            "coequalizer", bound, X, data, buckets,
            lambda key: Q.factor(FinFn(Q.f.cod, X, key[0])),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("coequalizer", bound, True, total)


def _check_exponential(B_A: FinExponential, bound: int) -> UniversalReport:
    total = 0
    A = B_A.exponent
    for X in _test_sets(bound):
        XA = fs_product(X, A).obj
        buckets = _bucket(
            all_functions(X, B_A.obj),
            lambda u: (compose_fns(B_A.eval, fs_product_map(u, identity_fn(A))).table,),
        )
        data = ((f.table,) for f in all_functions(XA, B_A.base))
        checked, failure = _judge(
            "exponential", bound, X, data, buckets,
            lambda key: B_A.transpose(FinFn(XA, B_A.base, key[0]), X),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("exponential", bound, True, total)


def _check_pullback(P: FinPullback, bound: int) -> UniversalReport:
    total = 0
    A, B = P.f.dom, P.g.dom
    for X in _test_sets(bound):
        buckets = _bucket(
            all_functions(X, P.obj),
            lambda u: (compose_fns(P.proj1, u).table, compose_fns(P.proj2, u).table),
        )
        data = (
            (u.table, v.table)
            for u in all_functions(X, A)
            for v in all_functions(X, B)
            if compose_fns(P.f, u) == compose_fns(P.g, v)
        )
        checked, failure = _judge(
            "pullback-square", bound, X, data, buckets,
            lambda key: P.pair(FinFn(X, A, key[0]), FinFn(X, B, key[1])),
        )
        total += checked
        if failure:
            return failure
    return UniversalReport("pullback-square", bound, True, total)


_CHECKS = {
    "terminal": _check_terminal,
    "initial": _check_initial,
    "product": _check_product,
    "sum": _check_sum,
    "equalizer": _check_equalizer,
    "coequalizer": _check_coequalizer,
    "exponential": _check_exponential,
    "pullback-square": _check_pullback,
}


def fs_verify_universal(candidate, kind: str, bound: int) -> UniversalReport:
    """Existence and uniqueness of mediating maps against all test sets of size <= bound."""
    if kind not in _CHECKS:
        raise UnknownKind(f"Unknown universal property: {kind}")
    if bound < 1:
        raise ValueError(f"Bound must be at least 1, got {bound}")
    report = _CHECKS[kind](candidate, bound)
    if not report.ok:
        logger.info(f"Universal check {kind} failed at {report.witness}: {report.detail}")
    return report


def _slice_objects(A: FinSetObj, bound: int):
    for n in range(bound + 1):
        Z = canonical_set(n)
        yield from all_functions(Z, A)


def fs_verify_slice_exponential(E: SliceExponential, bound: int) -> UniversalReport:
    """Transpose universality over every slice object z: Z -> A with |Z| <= bound."""
    total = 0
    f, g = E.f, E.g
    for z in _slice_objects(f.cod, bound):
        Z = z.dom
        pb = fs_pullback(z, g)
        lifted = [u for u in all_functions(Z, E.obj) if compose_fns(E.projection, u) == z]

        def induced(u: FinFn) -> Key:
            table = []
            for zi, y in pb.pairs:
                table.append(E.eval.table[E.eval_pullback.index[(u.table[zi], y)]])
            return (tuple(table),)

        buckets = _bucket(lifted, induced)
        data = (
            (h.table,)
            for h in all_functions(pb.obj, f.dom)
            if compose_fns(f, h) == compose_fns(z, pb.proj1)
        )
        checked, failure = _judge(
            "slice-exponential", bound, Z, data, buckets,
            lambda key: E.transpose(FinFn(pb.obj, f.dom, key[0]), z),
        )
        total += checked
        if failure:
            return UniversalReport(
                "slice-exponential", bound, False, total, (z.table,) + failure.witness[1:], failure.detail
            )
    return UniversalReport("slice-exponential", bound, True, total)
