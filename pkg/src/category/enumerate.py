"""
Deterministic enumeration of functors and natural transformations.

Functors come out in lexicographic order of (omap, mmap); natural
transformations in lexicographic order of their component tables.
"""
import itertools
from typing import Iterator, List, Tuple

from src.category.core import FinCat, Functor, NatTrans


def _composition_constraints(C: FinCat) -> List[List[Tuple[int, int, int]]]:
    """Composable triples (g, f, g.f) bucketed by their largest index."""
    buckets: List[List[Tuple[int, int, int]]] = [[] for _ in C.morphisms]
    for g in C.morphisms:
        for f in C.morphisms:
            if C.composable(g, f):
                h = C.compose(g, f)
                buckets[max(g, f, h)].append((g, f, h))
    return buckets


def enumerate_functors(C: FinCat, D: FinCat) -> Iterator[Functor]:
    buckets = _composition_constraints(C)
    m = C.n_morphisms

    for omap in itertools.product(range(D.n_objects), repeat=C.n_objects):
        choices = []
        for f in C.morphisms:
            a, b = omap[C.src[f]], omap[C.dst[f]]
            if C.is_identity(f):
                choices.append((D.identity[a],))
            else:
                choices.append(D.hom(a, b))
        if any(not options for options in choices):
            continue

        mmap = [0] * m

        def extend(k: int) -> Iterator[Tuple[int, ...]]:
            if k == m:
                yield tuple(mmap)
                return
            for choice in choices[k]:
                mmap[k] = choice
                if all(D.compose(mmap[g], mmap[f]) == mmap[h] for g, f, h in buckets[k]):
                    yield from extend(k + 1)

        for table in extend(0):
            yield Functor(C, D, omap, table)


def enumerate_nattrans(F: Functor, G: Functor) -> Iterator[NatTrans]:
    C, D = F.dom, F.cod
    n = C.n_objects
    choices = [D.hom(F.omap[x], G.omap[x]) for x in C.objects]
    if any(not options for options in choices):
        return

    # naturality squares become checkable once both ends are assigned
    buckets: List[List[int]] = [[] for _ in range(n)]
    for f in C.morphisms:
        buckets[max(C.src[f], C.dst[f])].append(f)

    components = [0] * n

    def extend(k: int) -> Iterator[Tuple[int, ...]]:
        if k == n:
            yield tuple(components)
            return
        for choice in choices[k]:
            components[k] = choice
            if all(
                D.compose(G.mmap[f], components[C.src[f]]) == D.compose(components[C.dst[f]], F.mmap[f])
                for f in buckets[k]
            ):
                yield from extend(k + 1)

    for table in extend(0):
        yield NatTrans(F, G, table)


def count_functors(C: FinCat, D: FinCat) -> int:
    return sum(1 for _ in enumerate_functors(C, D))
