"""
Finite categories, functors and natural transformations.

Composition convention: comp(g, f) means "f then g" and is defined exactly
when dst(f) == src(g). Opposites keep every index, swap src/dst and transpose
the composition table, so taking the opposite twice gives back identical
tables.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.errors import DomainMismatch

logger = logging.getLogger(__name__)

UNDEFINED = -1


class FinCat:
    """A finite category given by explicit object/morphism index tables."""

    __slots__ = (
        "n_objects", "src", "dst", "identity", "comp",
        "obj_names", "mor_names", "factors", "_rows", "_homs",
    )

    def __init__(
        self,
        n_objects: int,
        src: Sequence[int],
        dst: Sequence[int],
        identity: Sequence[int],
        comp,
        obj_names: Optional[Sequence[str]] = None,
        mor_names: Optional[Sequence[str]] = None,
        factors: Optional[Tuple["FinCat", "FinCat"]] = None,
    ):
        src = tuple(int(x) for x in src)
        dst = tuple(int(x) for x in dst)
        identity = tuple(int(x) for x in identity)
        m = len(src)

        if n_objects < 0:
            raise ValueError(f"Invalid object count: {n_objects}")
        if len(dst) != m:
            raise ValueError(f"src has {m} entries but dst has {len(dst)}")
        if len(identity) != n_objects:
            raise ValueError(f"identity must have {n_objects} entries, got {len(identity)}")
        for x in src + dst:
            if not 0 <= x < n_objects:
                raise ValueError(f"Object index {x} out of range for {n_objects} objects")
        for i in identity:
            if not 0 <= i < m:
                raise ValueError(f"Identity morphism {i} out of range for {m} morphisms")

        table = np.array(comp, dtype=np.int64)
        if table.size == 0:
            table = np.full((m, m), UNDEFINED, dtype=np.int64)
        if table.shape != (m, m):
            raise ValueError(f"Composition table must have shape {(m, m)}, got {table.shape}")
        if table.size and (table.min() < UNDEFINED or table.max() >= m):
            raise ValueError("Composition table entry out of range")
        table.setflags(write=False)

        if obj_names is None:
            obj_names = tuple(str(x) for x in range(n_objects))
        if mor_names is None:
            mor_names = _default_mor_names(m, identity, obj_names)
        obj_names = tuple(obj_names)
        mor_names = tuple(mor_names)
        if len(obj_names) != n_objects or len(mor_names) != m:
            raise ValueError("Name tables do not match the index tables")

        homs = [[[] for _ in range(n_objects)] for _ in range(n_objects)]
        for f in range(m):
            homs[src[f]][dst[f]].append(f)

        object.__setattr__(self, "n_objects", n_objects)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "comp", table)
        object.__setattr__(self, "obj_names", obj_names)
        object.__setattr__(self, "mor_names", mor_names)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "_rows", table.tolist())
        object.__setattr__(self, "_homs", tuple(tuple(tuple(h) for h in row) for row in homs))

    def __setattr__(self, name, value):
        raise AttributeError("FinCat is immutable")

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(len(self.src))

    def raw_comp(self, g: int, f: int) -> int:
        """Table entry for g after f, UNDEFINED when absent."""
        return self._rows[g][f]

    def composable(self, g: int, f: int) -> bool:
        return self.dst[f] == self.src[g]

    def compose(self, g: int, f: int) -> int:
        """g after f."""
        h = self._rows[g][f]
        if h == UNDEFINED:
            raise DomainMismatch(
                f"Cannot compose {self.mor_names[g]} after {self.mor_names[f]}"
            )
        return h

    def hom(self, a: int, b: int) -> Tuple[int, ...]:
        """Morphisms a -> b in morphism-index order."""
        return self._homs[a][b]

    def is_identity(self, f: int) -> bool:
        return self.identity[self.src[f]] == f

    def tables(self) -> tuple:
        return (self.n_objects, self.src, self.dst, self.identity, self.comp.tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.tables() == other.tables()
            and self.obj_names == other.obj_names
            and self.mor_names == other.mor_names
        )

    def __hash__(self) -> int:
        return hash(self.tables())

    def __repr__(self) -> str:
        return f"FinCat(objects={self.n_objects}, morphisms={self.n_morphisms})"


def _default_mor_names(m: int, identity: Sequence[int], obj_names: Sequence[str]) -> Tuple[str, ...]:
    names = [f"m{f}" for f in range(m)]
    for x, i in enumerate(identity):
        names[i] = f"id_{obj_names[x]}"
    return tuple(names)


@dataclass(frozen=True)
class Functor:
    dom: FinCat
    cod: FinCat
    omap: Tuple[int, ...]
    mmap: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "omap", tuple(int(x) for x in self.omap))
        object.__setattr__(self, "mmap", tuple(int(f) for f in self.mmap))
        if len(self.omap) != self.dom.n_objects:
            raise ValueError(f"omap has {len(self.omap)} entries, expected {self.dom.n_objects}")
        if len(self.mmap) != self.dom.n_morphisms:
            raise ValueError(f"mmap has {len(self.mmap)} entries, expected {self.dom.n_morphisms}")
        if any(not 0 <= x < self.cod.n_objects for x in self.omap):
            raise ValueError("omap entry out of range")
        if any(not 0 <= f < self.cod.n_morphisms for f in self.mmap):
            raise ValueError("mmap entry out of range")

    def __repr__(self) -> str:
        return f"Functor(omap={self.omap}, mmap={self.mmap})"


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(int(f) for f in self.components))
        if self.source.dom != self.target.dom or self.source.cod != self.target.cod:
            raise DomainMismatch("Natural transformation between non-parallel functors")
        if len(self.components) != self.source.dom.n_objects:
            raise ValueError(
                f"Expected {self.source.dom.n_objects} components, got {len(self.components)}"
            )
        if any(not 0 <= f < self.source.cod.n_morphisms for f in self.components):
            raise ValueError("Component out of range")

    def __repr__(self) -> str:
        return f"NatTrans(components={self.components})"


def opposite_category(C: FinCat) -> FinCat:
    """Same indices, src/dst swapped, composition table transposed.

    The opposite of C x D is C^op x D^op with the same pair indexing, so product
    factors carry over.
    """
    factors = None if C.factors is None else tuple(opposite_category(K) for K in C.factors)
    return FinCat(
        C.n_objects, C.dst, C.src, C.identity, C.comp.T.copy(),
        obj_names=C.obj_names, mor_names=C.mor_names, factors=factors,
    )


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite_category(F.dom), opposite_category(F.cod), F.omap, F.mmap)


def opposite_nattrans(N: NatTrans) -> NatTrans:
    """N: F => G becomes N^op: G^op => F^op with the same components."""
    return NatTrans(opposite_functor(N.target), opposite_functor(N.source), N.components)


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(C.morphisms))


def compose_functors(F2: Functor, F1: Functor) -> Functor:
    """F2 after F1."""
    if F1.cod != F2.dom:
        raise DomainMismatch("Codomain of the first functor is not the domain of the second")
    return Functor(
        F1.dom, F2.cod,
        tuple(F2.omap[x] for x in F1.omap),
        tuple(F2.mmap[f] for f in F1.mmap),
    )


def constant_functor(J: FinCat, C: FinCat, c: int) -> Functor:
    return Functor(J, C, (c,) * J.n_objects, (C.identity[c],) * J.n_morphisms)


def unit_category() -> FinCat:
    return FinCat(1, (0,), (0,), (0,), [[0]], obj_names=("*",), mor_names=("id_*",))


def empty_category() -> FinCat:
    return FinCat(0, (), (), (), np.zeros((0, 0), dtype=np.int64))


def point_functor(C: FinCat, c: int) -> Functor:
    """The functor 1 -> C picking the object c."""
    return constant_functor(unit_category(), C, c)


def identity_nattrans(F: Functor) -> NatTrans:
    return NatTrans(F, F, tuple(F.cod.identity[F.omap[x]] for x in F.dom.objects))


def vertical_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """beta after alpha, componentwise."""
    if alpha.target != beta.source:
        raise DomainMismatch("Natural transformations are not composable")
    E = alpha.source.cod
    return NatTrans(
        alpha.source, beta.target,
        tuple(E.compose(b, a) for b, a in zip(beta.components, alpha.components)),
    )


def whisker_left(G: Functor, N: NatTrans) -> NatTrans:
    """G N : G F => G F'."""
    return NatTrans(
        compose_functors(G, N.source), compose_functors(G, N.target),
        tuple(G.mmap[f] for f in N.components),
    )


def whisker_right(N: NatTrans, p: Functor) -> NatTrans:
    """N p : F p => F' p."""
    return NatTrans(
        compose_functors(N.source, p), compose_functors(N.target, p),
        tuple(N.components[p.omap[c]] for c in p.dom.objects),
    )


def inverse(C: FinCat, f: int) -> Optional[int]:
    """Two-sided inverse of f found by search, or None."""
    for g in C.hom(C.dst[f], C.src[f]):
        if C.compose(g, f) == C.identity[C.src[f]] and C.compose(f, g) == C.identity[C.dst[f]]:
            return g
    return None


def is_isomorphism(C: FinCat, f: int) -> bool:
    return inverse(C, f) is not None


def is_natural_isomorphism(N: NatTrans) -> bool:
    return all(is_isomorphism(N.source.cod, f) for f in N.components)
