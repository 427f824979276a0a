"""
Set-valued diagrams (functors from a finite category into finite sets) and
the natural transformations between them.
"""
import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from src.category.core import FinCat, Functor
from src.category.laws import LawViolation, ValidationReport
from src.errors import DomainMismatch
from src.finset.sets import FinFn, FinSetObj, all_functions, canonical_set, compose_fns, identity_fn


@dataclass(frozen=True)
class Diagram:
    shape: FinCat
    on_objects: Tuple[FinSetObj, ...]
    on_morphisms: Tuple[FinFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "on_objects", tuple(self.on_objects))
        object.__setattr__(self, "on_morphisms", tuple(self.on_morphisms))
        if len(self.on_objects) != self.shape.n_objects:
            raise ValueError("Diagram needs one set per object of its shape")
        if len(self.on_morphisms) != self.shape.n_morphisms:
            raise ValueError("Diagram needs one function per morphism of its shape")

    def __repr__(self) -> str:
        return f"Diagram(sizes={[len(A) for A in self.on_objects]})"


def _check_diagram(D: Diagram) -> Optional[LawViolation]:
    J = D.shape
    for f in J.morphisms:
        fn = D.on_morphisms[f]
        if fn.dom != D.on_objects[J.src[f]] or fn.cod != D.on_objects[J.dst[f]]:
            return LawViolation("Typing", (f,), f"function for {J.mor_names[f]} has the wrong type")
    for x in J.objects:
        if D.on_morphisms[J.identity[x]] != identity_fn(D.on_objects[x]):
            return LawViolation("IdentityLaw", (x,), f"identity of {J.obj_names[x]} is not sent to an identity")
    for g in J.morphisms:
        for f in J.morphisms:
            if J.composable(g, f):
                lhs = D.on_morphisms[J.compose(g, f)]
                if lhs != compose_fns(D.on_morphisms[g], D.on_morphisms[f]):
                    return LawViolation("Composition", (g, f), "composition is not preserved")
    return None


def validate_diagram(D: Diagram) -> ValidationReport:
    return ValidationReport("Diagram", _check_diagram(D))


def precompose_diagram(D: Diagram, Q: Functor) -> Diagram:
    """D . Q for a functor Q into the shape of D."""
    if Q.cod != D.shape:
        raise DomainMismatch("Functor does not land in the diagram's shape")
    return Diagram(
        Q.dom,
        [D.on_objects[Q.omap[x]] for x in Q.dom.objects],
        [D.on_morphisms[Q.mmap[f]] for f in Q.dom.morphisms],
    )


def constant_diagram(shape: FinCat, A: FinSetObj) -> Diagram:
    return Diagram(shape, [A] * shape.n_objects, [identity_fn(A)] * shape.n_morphisms)


@dataclass(frozen=True)
class SetTransformation:
    source: Diagram
    target: Diagram
    components: Tuple[FinFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.source.shape != self.target.shape:
            raise DomainMismatch("Transformation between diagrams of different shapes")


def is_natural(alpha: SetTransformation) -> bool:
    J = alpha.source.shape
    for f in J.morphisms:
        lhs = compose_fns(alpha.target.on_morphisms[f], alpha.components[J.src[f]])
        rhs = compose_fns(alpha.components[J.dst[f]], alpha.source.on_morphisms[f])
        if lhs != rhs:
            return False
    return True


def enumerate_set_transformations(D1: Diagram, D2: Diagram) -> Iterator[SetTransformation]:
    """All natural transformations D1 => D2, component tables in lexicographic order."""
    J = D1.shape
    n = J.n_objects
    choices = [list(all_functions(D1.on_objects[x], D2.on_objects[x])) for x in J.objects]
    if any(not options for options in choices):
        return
    buckets: List[List[int]] = [[] for _ in range(n)]
    for f in J.morphisms:
        buckets[max(J.src[f], J.dst[f])].append(f)

    components: List[Optional[FinFn]] = [None] * n

    def square_commutes(f: int) -> bool:
        lhs = compose_fns(D2.on_morphisms[f], components[J.src[f]])
        rhs = compose_fns(components[J.dst[f]], D1.on_morphisms[f])
        return lhs == rhs

    def extend(k: int) -> Iterator[Tuple[FinFn, ...]]:
        if k == n:
            yield tuple(components)
            return
        for choice in choices[k]:
            components[k] = choice
            if all(square_commutes(f) for f in buckets[k]):
                yield from extend(k + 1)

    for table in extend(0):
        yield SetTransformation(D1, D2, table)


def enumerate_diagrams(shape: FinCat, bound: int) -> Iterator[Diagram]:
    """Every diagram of the given shape whose sets are canonical of size <= bound."""
    m = shape.n_morphisms
    triples: List[List[Tuple[int, int, int]]] = [[] for _ in range(m)]
    for g in shape.morphisms:
        for f in shape.morphisms:
            if shape.composable(g, f):
                h = shape.compose(g, f)
                triples[max(g, f, h)].append((g, f, h))

    for sizes in itertools.product(range(bound + 1), repeat=shape.n_objects):
        sets = [canonical_set(s) for s in sizes]
        choices = []
        for f in shape.morphisms:
            if shape.is_identity(f):
                choices.append([identity_fn(sets[shape.src[f]])])
            else:
                choices.append(list(all_functions(sets[shape.src[f]], sets[shape.dst[f]])))
        if any(not options for options in choices):
            continue
        assigned: List[Optional[FinFn]] = [None] * m

        def extend(k: int) -> Iterator[Tuple[FinFn, ...]]:
            if k == m:
                yield tuple(assigned)
                return
            for choice in choices[k]:
                assigned[k] = choice
                if all(compose_fns(assigned[g], assigned[f]) == assigned[h] for g, f, h in triples[k]):
                    yield from extend(k + 1)

        for fns in extend(0):
            yield Diagram(shape, sets, fns)


def diagram_from_tables(shape: FinCat, sets: Sequence[FinSetObj], tables: Sequence[Sequence[int]]) -> Diagram:
    return Diagram(
        shape, sets,
        [FinFn(sets[shape.src[f]], sets[shape.dst[f]], tables[f]) for f in shape.morphisms],
    )
