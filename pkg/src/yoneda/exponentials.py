"""
The exponential law (a^b)^c ~ a^(b x c) in finite sets.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from src.finset.constructions import FinExponential, fs_exponential, fs_exponential_map, fs_product, fs_product_map
from src.finset.sets import FinFn, FinSetObj, all_functions, canonical_set, compose_fns, identity_fn

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentialIso:
    inner: FinExponential
    nested: FinExponential
    flat: FinExponential
    forward: FinFn
    backward: FinFn

    @property
    def round_trips(self) -> bool:
        return (
            compose_fns(self.backward, self.forward) == identity_fn(self.nested.obj)
            and compose_fns(self.forward, self.backward) == identity_fn(self.flat.obj)
        )


def ccc_exponential_iso(a: FinSetObj, b: FinSetObj, c: FinSetObj) -> ExponentialIso:
    """g |-> ((y, z) |-> g(z)(y)) and its inverse."""
    inner = fs_exponential(b, a)
    nested = fs_exponential(c, inner.obj)
    flat = fs_exponential(fs_product(b, c).obj, a)
    nb, nc = len(b), len(c)

    forward = [
        flat.table_index([inner.tables[outer[z]][y] for y in range(nb) for z in range(nc)])
        for outer in nested.tables
    ]
    backward = [
        nested.table_index([
            inner.table_index([psi[y * nc + z] for y in range(nb)]) for z in range(nc)
        ])
        for psi in flat.tables
    ]
    return ExponentialIso(
        inner, nested, flat,
        FinFn(nested.obj, flat.obj, forward),
        FinFn(flat.obj, nested.obj, backward),
    )


@dataclass(frozen=True)
class ExponentialNaturality:
    ok: bool
    bound: int
    squares: int
    witness: Optional[Tuple] = None


def _commutes(first: ExponentialIso, second: ExponentialIso, nested_map: FinFn, flat_map: FinFn) -> bool:
    return compose_fns(second.forward, nested_map) == compose_fns(flat_map, first.forward)


def ccc_naturality_check(bound: int) -> ExponentialNaturality:
    """Naturality of the forward map in a, b and c for every map between test sets of size <= bound."""
    sets = [canonical_set(n) for n in range(bound + 1)]
    squares = 0
    for a, b, c in itertools.product(sets, repeat=3):
        iso = ccc_exponential_iso(a, b, c)
        if not iso.round_trips:
            return ExponentialNaturality(False, bound, squares, ("round-trip", len(a), len(b), len(c)))
        for target in sets:
            # covariant in a
            for k in all_functions(a, target):
                other = ccc_exponential_iso(target, b, c)
                inner_map = fs_exponential_map(iso.inner, other.inner, post=k)
                nested_map = fs_exponential_map(iso.nested, other.nested, post=inner_map)
                flat_map = fs_exponential_map(iso.flat, other.flat, post=k)
                squares += 1
                if not _commutes(iso, other, nested_map, flat_map):
                    return ExponentialNaturality(False, bound, squares, ("a", k.table))
            # contravariant in b
            for u in all_functions(target, b):
                other = ccc_exponential_iso(a, target, c)
                inner_map = fs_exponential_map(iso.inner, other.inner, pre=u)
                nested_map = fs_exponential_map(iso.nested, other.nested, post=inner_map)
                flat_map = fs_exponential_map(iso.flat, other.flat, pre=fs_product_map(u, identity_fn(c)))
                squares += 1
                if not _commutes(iso, other, nested_map, flat_map):
                    return ExponentialNaturality(False, bound, squares, ("b", u.table))
            # contravariant in c
            for w in all_functions(target, c):
                other = ccc_exponential_iso(a, b, target)
                nested_map = fs_exponential_map(iso.nested, other.nested, pre=w)
                flat_map = fs_exponential_map(iso.flat, other.flat, pre=fs_product_map(identity_fn(b), w))
                squares += 1
                if not _commutes(iso, other, nested_map, flat_map):
                    return ExponentialNaturality(False, bound, squares, ("c", w.table))
    return ExponentialNaturality(True, bound, squares)
