"""
Named finite categories and an exhaustive generator of small categories.

Every builder puts identities first (identity of object x has index x).
"""
import itertools
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.category.core import UNDEFINED, FinCat, Functor


def category_from_composites(
    obj_names: Sequence[str],
    arrows: Sequence[Tuple[str, int, int]],
    composites: Dict[Tuple[str, str], str],
) -> FinCat:
    """Build a category from named non-identity arrows and their composition rows.

    composites maps (g, f) to the name of g after f; rows involving identities
    are implied. Missing rows stay undefined for validate to report.
    """
    n = len(obj_names)
    names = [f"id_{x}" for x in obj_names] + [name for name, _, _ in arrows]
    src = list(range(n)) + [a for _, a, _ in arrows]
    dst = list(range(n)) + [b for _, _, b in arrows]
    index = {name: i for i, name in enumerate(names)}
    m = len(names)

    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for f in range(m):
        comp[dst[f], f] = f
        comp[f, src[f]] = f
    for (g, f), h in composites.items():
        comp[index[g], index[f]] = index[h]
    return FinCat(n, src, dst, range(n), comp, obj_names=obj_names, mor_names=names)


def discrete(n: int) -> FinCat:
    comp = np.full((n, n), UNDEFINED, dtype=np.int64)
    for x in range(n):
        comp[x, x] = x
    return FinCat(n, range(n), range(n), range(n), comp)


def poset(n: int, relation: Iterable[Tuple[int, int]], obj_names: Optional[Sequence[str]] = None) -> FinCat:
    """Thin category of the reflexive-transitive closure of relation on n points."""
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a, b in relation:
        leq[a][b] = True
    for k in range(n):
        for a in range(n):
            for b in range(n):
                if leq[a][k] and leq[k][b]:
                    leq[a][b] = True
    if any(leq[a][b] and leq[b][a] and a != b for a in range(n) for b in range(n)):
        raise ValueError("Relation is not antisymmetric")

    pairs = [(a, a) for a in range(n)] + [(a, b) for a in range(n) for b in range(n) if a != b and leq[a][b]]
    index = {p: i for i, p in enumerate(pairs)}
    m = len(pairs)
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    for g, (b, c) in enumerate(pairs):
        for f, (a, b2) in enumerate(pairs):
            if b == b2:
                comp[g, f] = index[(a, c)]
    if obj_names is None:
        obj_names = [str(x) for x in range(n)]
    names = [f"id_{obj_names[a]}" if a == b else f"{obj_names[a]}<={obj_names[b]}" for a, b in pairs]
    return FinCat(n, [a for a, _ in pairs], [b for _, b in pairs], range(n), comp,
                  obj_names=obj_names, mor_names=names)


def chain(n: int) -> FinCat:
    """The poset 0 <= 1 <= ... <= n-1."""
    return poset(n, [(a, a + 1) for a in range(n - 1)])


def walking_arrow() -> FinCat:
    return category_from_composites(["0", "1"], [("f", 0, 1)], {})


def parallel_pair() -> FinCat:
    return category_from_composites(["x", "y"], [("f", 0, 1), ("g", 0, 1)], {})


def monoid(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FinCat:
    """One-object category; element 0 must be the unit, table[g][f] is g after f."""
    k = len(table)
    if names is None:
        names = ["id_*"] + [f"a{i}" for i in range(1, k)]
    return FinCat(1, [0] * k, [0] * k, [0], table, obj_names=["*"], mor_names=names)


def cyclic_monoid(n: int) -> FinCat:
    names = ["id_*"] + [f"a^{i}" for i in range(1, n)]
    return monoid([[(g + f) % n for f in range(n)] for g in range(n)], names)


def _associative_so_far(table: List[List[int]], src: List[int], dst: List[int]) -> bool:
    m = len(src)
    for h in range(m):
        for g in range(m):
            if dst[g] != src[h]:
                continue
            hg = table[h][g]
            if hg == UNDEFINED:
                continue
            for f in range(m):
                if dst[f] != src[g]:
                    continue
                gf = table[g][f]
                if gf == UNDEFINED:
                    continue
                left, right = table[h][gf], table[hg][f]
                if left != UNDEFINED and right != UNDEFINED and left != right:
                    return False
    return True


def _fill_compositions(n: int, src: List[int], dst: List[int]) -> Iterator[FinCat]:
    m = len(src)
    table = [[UNDEFINED] * m for _ in range(m)]
    for f in range(m):
        table[dst[f]][f] = f
        table[f][src[f]] = f

    cells = [(g, f) for g in range(n, m) for f in range(n, m) if dst[f] == src[g]]
    candidates = [
        [h for h in range(m) if src[h] == src[f] and dst[h] == dst[g]]
        for g, f in cells
    ]

    def extend(k: int) -> Iterator[FinCat]:
        if k == len(cells):
            yield FinCat(n, src, dst, range(n), np.array(table, dtype=np.int64).reshape(m, m))
            return
        g, f = cells[k]
        for h in candidates[k]:
            table[g][f] = h
            if _associative_so_far(table, src, dst):
                yield from extend(k + 1)
        table[g][f] = UNDEFINED

    yield from extend(0)


def enumerate_categories(max_objects: int, max_morphisms: int) -> Iterator[FinCat]:
    """Every category (as a labelled composition table) within the bounds.

    Non-identity arrows are assigned to hom-sets in non-decreasing order, so
    relabelings inside one distribution are not repeated; isomorphic copies
    across composition tables still are.
    """
    for n in range(0, max_objects + 1):
        if n > max_morphisms:
            break
        pairs = [(a, b) for a in range(n) for b in range(n)]
        for k in range(0, max_morphisms - n + 1):
            for assignment in itertools.combinations_with_replacement(range(len(pairs)), k):
                src = list(range(n)) + [pairs[p][0] for p in assignment]
                dst = list(range(n)) + [pairs[p][1] for p in assignment]
                yield from _fill_compositions(n, src, dst)


def monotone_map(P: FinCat, Q: FinCat, omap: Sequence[int]) -> Functor:
    """Functor between thin categories determined by its object map."""
    mmap = []
    for f in P.morphisms:
        candidates = Q.hom(omap[P.src[f]], omap[P.dst[f]])
        if not candidates:
            raise ValueError(f"Object map is not monotone at {P.mor_names[f]}")
        mmap.append(candidates[0])
    return Functor(P, Q, omap, mmap)
