"""
Universal constructions in the category of finite sets.

Labels are canonical: products "a,b", sums "L:a"/"R:b", quotient classes by
their least member, function elements by their table string.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import CodomainMismatch, DomainMismatch, NotMono, NotParallel
from src.finset.sets import (
    FinFn, FinSetObj, all_functions, canonical_set, compose_fns, identity_fn,
    is_bijective, is_injective, join_labels, terminal_map, terminal_set,
)
from src.finset.union_find import UnionFind

logger = logging.getLogger(__name__)


def _mixed_radix(digits: Sequence[int], sizes: Sequence[int]) -> int:
    index = 0
    for digit, size in zip(digits, sizes):
        index = index * size + digit
    return index


@dataclass(frozen=True)
class FinProductFamily:
    factors: Tuple[FinSetObj, ...]
    obj: FinSetObj
    projections: Tuple[FinFn, ...]
    tuples: Tuple[Tuple[int, ...], ...]

    def tuple_index(self, digits: Sequence[int]) -> int:
        return _mixed_radix(digits, [len(A) for A in self.factors])

    def pair(self, maps: Sequence[FinFn]) -> FinFn:
        """The unique map into the product with the given components."""
        if len(maps) != len(self.factors):
            raise DomainMismatch("One map per factor is required")
        if len({f.dom for f in maps}) > 1:
            raise DomainMismatch("Component maps must share a domain")
        if any(f.cod != A for f, A in zip(maps, self.factors)):
            raise CodomainMismatch("Component map lands in the wrong factor")
        X = maps[0].dom if maps else None
        if X is None:
            raise DomainMismatch("Pairing of an empty family needs a domain; use terminal_map")
        return FinFn(X, self.obj, [self.tuple_index([f.table[x] for f in maps]) for x in range(len(X))])


def fs_product_family(factors: Sequence[FinSetObj]) -> FinProductFamily:
    factors = tuple(factors)
    tuples = tuple(itertools.product(*[range(len(A)) for A in factors]))
    labels = [join_labels([A.elements[i] for A, i in zip(factors, t)]) for t in tuples]
    obj = FinSetObj(labels)
    projections = tuple(FinFn(obj, A, [t[k] for t in tuples]) for k, A in enumerate(factors))
    return FinProductFamily(factors, obj, projections, tuples)


@dataclass(frozen=True)
class FinProduct:
    left: FinSetObj
    right: FinSetObj
    obj: FinSetObj
    proj1: FinFn
    proj2: FinFn

    def pair(self, f: FinFn, g: FinFn) -> FinFn:
        if f.dom != g.dom:
            raise DomainMismatch("Pairing needs maps with a common domain")
        if f.cod != self.left or g.cod != self.right:
            raise CodomainMismatch("Pairing maps do not land in the factors")
        n = len(self.right)
        return FinFn(f.dom, self.obj, [a * n + b for a, b in zip(f.table, g.table)])


def fs_product(A: FinSetObj, B: FinSetObj) -> FinProduct:
    family = fs_product_family([A, B])
    return FinProduct(A, B, family.obj, family.projections[0], family.projections[1])


def fs_product_map(h: FinFn, k: FinFn) -> FinFn:
    """h x k : X x A -> Y x B."""
    source = fs_product(h.dom, k.dom).obj
    target = fs_product(h.cod, k.cod).obj
    n = len(k.cod)
    return FinFn(source, target, [h.table[x] * n + k.table[a] for x in range(len(h.dom)) for a in range(len(k.dom))])


@dataclass(frozen=True)
class FinSum:
    left: FinSetObj
    right: FinSetObj
    obj: FinSetObj
    inj1: FinFn
    inj2: FinFn

    def copair(self, f: FinFn, g: FinFn) -> FinFn:
        if f.cod != g.cod:
            raise CodomainMismatch("Copairing needs maps with a common codomain")
        if f.dom != self.left or g.dom != self.right:
            raise DomainMismatch("Copairing maps do not start at the summands")
        return FinFn(self.obj, f.cod, f.table + g.table)


@dataclass(frozen=True)
class FinSumFamily:
    summands: Tuple[FinSetObj, ...]
    obj: FinSetObj
    injections: Tuple[FinFn, ...]
    offsets: Tuple[int, ...]

    def element(self, k: int, x: int) -> int:
        return self.offsets[k] + x

    def locate(self, i: int) -> Tuple[int, int]:
        """(summand, position) of a sum element."""
        for k in reversed(range(len(self.summands))):
            if i >= self.offsets[k] and len(self.summands[k]) > 0:
                return k, i - self.offsets[k]
        raise IndexError(i)


def fs_sum_family(summands: Sequence[FinSetObj], tags: Sequence[str]) -> FinSumFamily:
    summands = tuple(summands)
    labels, offsets = [], []
    for A, tag in zip(summands, tags):
        offsets.append(len(labels))
        labels.extend(f"{tag}:{a}" for a in A.elements)
    obj = FinSetObj(labels)
    injections = tuple(
        FinFn(A, obj, [offset + i for i in range(len(A))]) for A, offset in zip(summands, offsets)
    )
    return FinSumFamily(summands, obj, injections, tuple(offsets))


def fs_sum(A: FinSetObj, B: FinSetObj) -> FinSum:
    family = fs_sum_family([A, B], ["L", "R"])
    return FinSum(A, B, family.obj, family.injections[0], family.injections[1])


def _require_parallel(f: FinFn, g: FinFn) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("Maps must share domain and codomain")


@dataclass(frozen=True)
class FinEqualizer:
    f: FinFn
    g: FinFn
    obj: FinSetObj
    inclusion: FinFn

    def factor(self, h: FinFn) -> FinFn:
        """Mediating map for h with f.h = g.h."""
        if compose_fns(self.f, h) != compose_fns(self.g, h):
            raise ValueError("Map does not equalize the pair")
        position = {x: i for i, x in enumerate(self.inclusion.table)}
        return FinFn(h.dom, self.obj, [position[x] for x in h.table])


def fs_equalizer(f: FinFn, g: FinFn) -> FinEqualizer:
    _require_parallel(f, g)
    subset = [x for x in range(len(f.dom)) if f.table[x] == g.table[x]]
    obj = FinSetObj([f.dom.elements[x] for x in subset])
    return FinEqualizer(f, g, obj, FinFn(obj, f.dom, subset))


@dataclass(frozen=True)
class FinCoequalizer:
    f: FinFn
    g: FinFn
    obj: FinSetObj
    quotient: FinFn
    classes: Tuple[Tuple[int, ...], ...]

    def factor(self, h: FinFn) -> FinFn:
        """Mediating map for h with h.f = h.g."""
        if compose_fns(h, self.f) != compose_fns(h, self.g):
            raise ValueError("Map does not coequalize the pair")
        return FinFn(self.obj, h.cod, [h.table[members[0]] for members in self.classes])


def fs_coequalizer(f: FinFn, g: FinFn) -> FinCoequalizer:
    _require_parallel(f, g)
    uf = UnionFind(len(f.cod))
    for a in range(len(f.dom)):
        uf.union(f.table[a], g.table[a])
    classes = tuple(tuple(members) for members in uf.classes())
    obj = FinSetObj([f.cod.elements[members[0]] for members in classes])
    table = [0] * len(f.cod)
    for k, members in enumerate(classes):
        for x in members:
            table[x] = k
    return FinCoequalizer(f, g, obj, FinFn(f.cod, obj, table), classes)


@dataclass(frozen=True)
class FinPullback:
    f: FinFn
    g: FinFn
    obj: FinSetObj
    proj1: FinFn
    proj2: FinFn
    pairs: Tuple[Tuple[int, int], ...]

    @cached_property
    def index(self) -> Dict[Tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def pair(self, u: FinFn, v: FinFn) -> FinFn:
        """Mediating map for u: X -> A, v: X -> B with f.u = g.v."""
        if compose_fns(self.f, u) != compose_fns(self.g, v):
            raise ValueError("Maps do not form a commuting square")
        return FinFn(u.dom, self.obj, [self.index[(a, b)] for a, b in zip(u.table, v.table)])


def fs_pullback(f: FinFn, g: FinFn) -> FinPullback:
    """Pullback as the equalizer of f.p1 and g.p2 on the product."""
    if f.cod != g.cod:
        raise CodomainMismatch("Pullback needs maps into a common codomain")
    product = fs_product(f.dom, g.dom)
    eq = fs_equalizer(compose_fns(f, product.proj1), compose_fns(g, product.proj2))
    proj1 = compose_fns(product.proj1, eq.inclusion)
    proj2 = compose_fns(product.proj2, eq.inclusion)
    pairs = tuple(zip(proj1.table, proj2.table))
    return FinPullback(f, g, eq.obj, proj1, proj2, pairs)


@dataclass(frozen=True)
class FinExponential:
    exponent: FinSetObj
    base: FinSetObj
    obj: FinSetObj
    tables: Tuple[Tuple[int, ...], ...]
    eval: FinFn

    def table_index(self, table: Sequence[int]) -> int:
        return _mixed_radix(table, [len(self.base)] * len(self.exponent))

    def transpose(self, f: FinFn, X: FinSetObj) -> FinFn:
        """f: X x A -> B becomes X -> B^A."""
        if f.dom != fs_product(X, self.exponent).obj or f.cod != self.base:
            raise DomainMismatch("Map is not of the form X x A -> B")
        n = len(self.exponent)
        return FinFn(X, self.obj, [
            self.table_index(f.table[x * n:(x + 1) * n]) for x in range(len(X))
        ])


def fs_exponential(A: FinSetObj, B: FinSetObj) -> FinExponential:
    """B^A with evaluation B^A x A -> B."""
    tables = tuple(itertools.product(range(len(B)), repeat=len(A)))
    obj = FinSetObj(["[" + join_labels([B.elements[t] for t in table]) + "]" for table in tables])
    product = fs_product(obj, A)
    n = len(A)
    eval_table = [tables[e][a] for e in range(len(tables)) for a in range(n)]
    logger.debug(f"Exponential with {len(tables)} elements")
    return FinExponential(A, B, obj, tables, FinFn(product.obj, B, eval_table))


def fs_exponential_map(
    source: FinExponential,
    target: FinExponential,
    post: Optional[FinFn] = None,
    pre: Optional[FinFn] = None,
) -> FinFn:
    """phi |-> post . phi . pre, from B^A to B'^A' (post: B -> B', pre: A' -> A)."""
    post = post or identity_fn(source.base)
    pre = pre or identity_fn(source.exponent)
    if post.dom != source.base or post.cod != target.base:
        raise DomainMismatch("post does not connect the bases")
    if pre.cod != source.exponent or pre.dom != target.exponent:
        raise DomainMismatch("pre does not connect the exponents")
    table = [
        target.table_index([post.table[phi[a]] for a in pre.table])
        for phi in source.tables
    ]
    return FinFn(source.obj, target.obj, table)


@dataclass(frozen=True)
class SubobjectClassifier:
    omega: FinSetObj
    true: FinFn

    def classify(self, m: FinFn) -> FinFn:
        """Characteristic map of a mono m: S -> A."""
        if not is_injective(m):
            raise NotMono("Only monos have characteristic maps")
        image = set(m.table)
        return FinFn(m.cod, self.omega, [1 if a in image else 0 for a in range(len(m.cod))])

    def is_pullback(self, m: FinFn, chi: FinFn) -> bool:
        """Whether S -> 1 -> Omega and S -> A -> Omega form a pullback square."""
        bang = terminal_map(m.dom)
        if compose_fns(chi, m) != compose_fns(self.true, bang):
            return False
        pb = fs_pullback(chi, self.true)
        return is_bijective(pb.pair(m, bang))


def fs_subobject_classifier() -> SubobjectClassifier:
    omega = FinSetObj(("⊥", "⊤"))
    return SubobjectClassifier(omega, FinFn(terminal_set(), omega, (1,)))


def enumerate_monos(A: FinSetObj) -> List[FinFn]:
    monos = []
    for k in range(len(A) + 1):
        S = canonical_set(k)
        for table in itertools.permutations(range(len(A)), k):
            monos.append(FinFn(S, A, table))
    return monos


def monos_isomorphic(m1: FinFn, m2: FinFn) -> bool:
    """Whether some iso phi: S1 -> S2 has m2 . phi = m1."""
    if len(m1.dom) != len(m2.dom) or m1.cod != m2.cod:
        return False
    for phi in all_functions(m1.dom, m2.dom):
        if is_bijective(phi) and compose_fns(m2, phi) == m1:
            return True
    return False


def subobjects(A: FinSetObj) -> List[FinFn]:
    """One representative mono per isomorphism class."""
    representatives: List[FinFn] = []
    for m in enumerate_monos(A):
        if not any(monos_isomorphic(m, r) for r in representatives):
            representatives.append(m)
    return representatives


@dataclass(frozen=True)
class SliceExponential:
    f: FinFn
    g: FinFn
    obj: FinSetObj
    projection: FinFn
    entries: Tuple[Tuple[int, Tuple[int, ...]], ...]
    fibers_f: Tuple[Tuple[int, ...], ...]
    fibers_g: Tuple[Tuple[int, ...], ...]
    eval_pullback: FinPullback
    eval: FinFn

    @cached_property
    def lookup(self) -> Dict[Tuple[int, Tuple[int, ...]], int]:
        return {entry: e for e, entry in enumerate(self.entries)}

    def transpose(self, h: FinFn, z: FinFn) -> FinFn:
        """h: Z x_A Y -> X over A becomes Z -> E over A."""
        pb = fs_pullback(z, self.g)
        if h.dom != pb.obj or h.cod != self.f.dom:
            raise DomainMismatch("Map is not of the form Z x_A Y -> X")
        table = []
        for zi in range(len(z.dom)):
            a = z.table[zi]
            images = tuple(h.table[pb.index[(zi, y)]] for y in self.fibers_g[a])
            key = (a, images)
            if key not in self.lookup:
                raise ValueError("Map does not lie over the base")
            table.append(self.lookup[key])
        return FinFn(z.dom, self.obj, table)


def fs_slice_exponential(f: FinFn, g: FinFn) -> SliceExponential:
    """Fiberwise exponential: over each a, all maps g^-1(a) -> f^-1(a)."""
    if f.cod != g.cod:
        raise CodomainMismatch("Slice objects must lie over the same base")
    A = f.cod
    fibers_f = tuple(tuple(x for x in range(len(f.dom)) if f.table[x] == a) for a in range(len(A)))
    fibers_g = tuple(tuple(y for y in range(len(g.dom)) if g.table[y] == a) for a in range(len(A)))

    entries, labels = [], []
    for a in range(len(A)):
        for local in itertools.product(range(len(fibers_f[a])), repeat=len(fibers_g[a])):
            images = tuple(fibers_f[a][i] for i in local)
            entries.append((a, images))
            labels.append(f"{A.elements[a]}:[" + join_labels([f.dom.elements[x] for x in images]) + "]")
    obj = FinSetObj(labels)
    projection = FinFn(obj, A, [a for a, _ in entries])

    pb = fs_pullback(projection, g)
    eval_table = []
    for e, y in pb.pairs:
        a, images = entries[e]
        eval_table.append(images[fibers_g[a].index(y)])
    return SliceExponential(
        f, g, obj, projection, tuple(entries), fibers_f, fibers_g, pb, FinFn(pb.obj, f.dom, eval_table)
    )
