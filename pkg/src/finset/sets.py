"""
Finite sets with canonical element labels and functions as index tables.
"""
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Sequence, Tuple

from src.errors import DomainMismatch

_RESERVED = set(",:()[]")


@dataclass(frozen=True)
class FinSetObj:
    elements: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"Duplicate element labels in {self.elements}")

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def positions(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label: str) -> int:
        return self.positions[label]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.elements) + "}"


@dataclass(frozen=True)
class FinFn:
    dom: FinSetObj
    cod: FinSetObj
    table: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        if len(self.table) != len(self.dom):
            raise ValueError(f"Table has {len(self.table)} entries for a domain of size {len(self.dom)}")
        if any(not 0 <= t < len(self.cod) for t in self.table):
            raise ValueError(f"Table {self.table} leaves a codomain of size {len(self.cod)}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.dom.elements[i]}->{self.cod.elements[t]}" for i, t in enumerate(self.table))
        return f"FinFn({pairs})"


def wrap_label(label: str) -> str:
    """Parenthesize labels that would make joined labels ambiguous."""
    return f"({label})" if _RESERVED & set(label) else label


def join_labels(labels: Sequence[str]) -> str:
    return ",".join(wrap_label(label) for label in labels) if labels else "()"


def canonical_set(n: int) -> FinSetObj:
    return FinSetObj(tuple(str(i) for i in range(n)))


def terminal_set() -> FinSetObj:
    return FinSetObj(("*",))


def initial_set() -> FinSetObj:
    return FinSetObj(())


def identity_fn(A: FinSetObj) -> FinFn:
    return FinFn(A, A, tuple(range(len(A))))


def compose_fns(g: FinFn, f: FinFn) -> FinFn:
    """g after f."""
    if f.cod != g.dom:
        raise DomainMismatch(f"Cannot compose: {f.cod} is not {g.dom}")
    return FinFn(f.dom, g.cod, tuple(g.table[t] for t in f.table))


def terminal_map(A: FinSetObj) -> FinFn:
    return FinFn(A, terminal_set(), (0,) * len(A))


def initial_map(A: FinSetObj) -> FinFn:
    return FinFn(initial_set(), A, ())


def all_functions(A: FinSetObj, B: FinSetObj) -> Iterator[FinFn]:
    """Every function A -> B, tables in lexicographic order."""
    for table in itertools.product(range(len(B)), repeat=len(A)):
        yield FinFn(A, B, table)


def is_injective(f: FinFn) -> bool:
    return len(set(f.table)) == len(f.table)


def is_surjective(f: FinFn) -> bool:
    return len(set(f.table)) == len(f.cod)


def is_bijective(f: FinFn) -> bool:
    return is_injective(f) and is_surjective(f)


def inverse_fn(f: FinFn) -> FinFn:
    if not is_bijective(f):
        raise ValueError("Function is not a bijection")
    table = [0] * len(f.cod)
    for i, t in enumerate(f.table):
        table[t] = i
    return FinFn(f.cod, f.dom, table)


def is_mono_by_cancellation(f: FinFn, bound: int) -> bool:
    """Left cancellation against every pair g, h: X -> dom with |X| <= bound."""
    for n in range(bound + 1):
        X = canonical_set(n)
        seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for g in all_functions(X, f.dom):
            key = compose_fns(f, g).table
            if key in seen and seen[key] != g.table:
                return False
            seen[key] = g.table
    return True


def is_epi_by_cancellation(f: FinFn, bound: int) -> bool:
    """Right cancellation against every pair g, h: cod -> X with |X| <= bound."""
    for n in range(bound + 1):
        X = canonical_set(n)
        seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        for g in all_functions(f.cod, X):
            key = compose_fns(g, f).table
            if key in seen and seen[key] != g.table:
                return False
            seen[key] = g.table
    return True
