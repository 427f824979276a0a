"""
Universe-level expressions, constraints and the consistency check.

A constraint a+n <= b+m becomes the edge a -> b with weight n - m (plus one
when strict): b must sit at least that far above a. A set of constraints is
unsatisfiable over the natural numbers exactly when the graph has a cycle of
positive total weight. The distinguished level SET is the bottom universe 0.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

import networkx as nx

from src.errors import MalformedConstraint

logger = logging.getLogger(__name__)

SET = "Set"
_SOURCE = ("source",)


@dataclass(frozen=True, order=True)
class Level:
    var: str
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise MalformedConstraint(f"Negative offset on {self.var}")

    def __str__(self) -> str:
        return f"{self.var}+{self.offset}" if self.offset else self.var

    def shift(self, n: int) -> "Level":
        return Level(self.var, self.offset + n)


@dataclass(frozen=True)
class LevelMax:
    parts: Tuple[Level, ...]

    def __post_init__(self):
        parts = tuple(sorted(set(self.parts)))
        if not parts:
            raise MalformedConstraint("max of nothing")
        object.__setattr__(self, "parts", parts)

    def __str__(self) -> str:
        return "max(" + ", ".join(str(p) for p in self.parts) + ")"


LevelExpr = Union[Level, LevelMax]
KINDS = ("<=", "<", "=")


def level_max(*parts: LevelExpr) -> LevelExpr:
    flat: List[Level] = []
    for part in parts:
        flat.extend(part.parts if isinstance(part, LevelMax) else (part,))
    collapsed = LevelMax(tuple(flat))
    return collapsed.parts[0] if len(collapsed.parts) == 1 else collapsed


@dataclass(frozen=True)
class Constraint:
    kind: str
    lhs: LevelExpr
    rhs: LevelExpr
    origin: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedConstraint(f"Unknown relation {self.kind}")

    def __str__(self) -> str:
        return f"{self.lhs} {self.kind} {self.rhs}"


@dataclass(frozen=True)
class Atom:
    """lhs <= rhs, or lhs < rhs when strict; both sides max-free."""
    lhs: Level
    rhs: Level
    strict: bool
    source: Constraint

    @property
    def weight(self) -> int:
        return self.lhs.offset - self.rhs.offset + (1 if self.strict else 0)

    def __str__(self) -> str:
        return f"{self.lhs} {'<' if self.strict else '<='} {self.rhs}"


def normalize(constraint: Constraint) -> List[Atom]:
    """= splits both ways; max(a, b) <= c splits into a <= c and b <= c."""
    lhs, rhs = constraint.lhs, constraint.rhs
    if isinstance(rhs, LevelMax):
        raise MalformedConstraint(f"max on the larger side is not supported: {constraint}")
    if constraint.kind == "=":
        if isinstance(lhs, LevelMax):
            raise MalformedConstraint(f"max inside an equation: {constraint}")
        return [Atom(lhs, rhs, False, constraint), Atom(rhs, lhs, False, constraint)]
    if constraint.kind == "<":
        if isinstance(lhs, LevelMax):
            raise MalformedConstraint(f"max on the smaller side of <: {constraint}")
        return [Atom(lhs, rhs, True, constraint)]
    parts = lhs.parts if isinstance(lhs, LevelMax) else (lhs,)
    return [Atom(part, rhs, False, constraint) for part in parts]


def constraint_graph(constraints: Iterable[Constraint]) -> nx.DiGraph:
    """Strongest atom per ordered pair of variables, weights as described above."""
    G = nx.DiGraph()
    atoms: List[Atom] = []
    for constraint in constraints:
        atoms.extend(normalize(constraint))
    variables = sorted({a.lhs.var for a in atoms} | {a.rhs.var for a in atoms} | {SET})
    G.add_nodes_from(variables)
    for atom in atoms:
        u, v = atom.lhs.var, atom.rhs.var
        if not G.has_edge(u, v) or G[u][v]["weight"] < atom.weight:
            G.add_edge(u, v, weight=atom.weight, atom=atom)
    # every level is at least Set
    for v in variables:
        if v != SET and not G.has_edge(SET, v):
            G.add_edge(SET, v, weight=0, atom=Atom(Level(SET), Level(v), False, Constraint("<=", Level(SET), Level(v), "levels start at Set")))
    return G


@dataclass(frozen=True)
class Verdict:
    consistent: bool
    cycle: Tuple[Atom, ...] = ()

    @property
    def trace(self) -> Tuple[str, ...]:
        return tuple(f"{atom}  [{atom.source.origin or atom.source}]" for atom in self.cycle)


def _rotate(nodes: List[str]) -> List[str]:
    start = nodes.index(min(nodes))
    return nodes[start:] + nodes[:start]


def check_consistency(constraints: Iterable[Constraint]) -> Verdict:
    constraints = list(constraints)
    G = constraint_graph(constraints)
    for v in sorted(G.nodes):
        if G.has_edge(v, v) and G[v][v]["weight"] > 0:
            atom = G[v][v]["atom"]
            logger.info(f"Universe inconsistency: {atom}")
            return Verdict(False, (atom,))
    # positive cycles are negative cycles of the negated graph
    H = nx.DiGraph()
    H.add_nodes_from(G.nodes)
    H.add_node(_SOURCE)
    for u, v, data in G.edges(data=True):
        H.add_edge(u, v, weight=-data["weight"])
    for v in sorted(G.nodes):
        H.add_edge(_SOURCE, v, weight=0)
    try:
        walk = nx.find_negative_cycle(H, _SOURCE)
    except nx.NetworkXError:
        return Verdict(True)

    nodes = _rotate(walk[:-1])
    cycle = tuple(G[u][v]["atom"] for u, v in zip(nodes, nodes[1:] + nodes[:1]))
    logger.info("Universe inconsistency: " + "; ".join(str(atom) for atom in cycle))
    return Verdict(False, cycle)


def verify_witness(cycle: Iterable[Atom]) -> bool:
    """Re-derive v < v from the cycle: it must close up and have positive total weight."""
    cycle = list(cycle)
    if not cycle:
        return False
    for atom, following in zip(cycle, cycle[1:] + cycle[:1]):
        if atom.rhs.var != following.lhs.var:
            return False
    return sum(atom.weight for atom in cycle) > 0


def minimal_model(constraints: Iterable[Constraint]) -> Optional[Dict[str, int]]:
    """Least assignment of naturals satisfying the constraints, with Set = 0."""
    constraints = list(constraints)
    if not check_consistency(constraints).consistent:
        return None
    G = constraint_graph(constraints)
    H = nx.DiGraph()
    H.add_nodes_from(G.nodes)
    for u, v, data in G.edges(data=True):
        H.add_edge(u, v, weight=-data["weight"])
    distances = nx.single_source_bellman_ford_path_length(H, SET)
    return {v: max(0, -distances.get(v, 0)) for v in sorted(G.nodes)}


def entails(constraints: Iterable[Constraint], goal: Constraint) -> bool:
    """Whether every model of the constraints satisfies goal."""
    constraints = list(constraints)
    for atom in normalize(goal):
        # refute: rhs + (0 if strict else 1) <= lhs
        negation = Constraint("<=", atom.rhs.shift(0 if atom.strict else 1), atom.lhs, "negated goal")
        if check_consistency(constraints + [negation]).consistent:
            return False
    return True
