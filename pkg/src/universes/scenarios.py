"""
Builtin universe scenarios. Each one builds a context, applies theorems and
reports the verdict together with the expected one.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from src.errors import UnknownName
from src.universes.context import UniverseContext, apply_theorem
from src.universes.solver import SET, Constraint, Level, Verdict, entails, minimal_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    expected_consistent: bool
    verdict: Verdict
    constraints: Tuple[Constraint, ...]
    entailed: Tuple[Tuple[str, bool], ...] = ()
    model: Optional[Dict[str, int]] = None

    @property
    def ok(self) -> bool:
        return self.verdict.consistent == self.expected_consistent and all(holds for _, holds in self.entailed)


def _finish(name: str, expected: bool, context: UniverseContext, goals: Tuple[Constraint, ...] = ()) -> ScenarioResult:
    constraints = tuple(context.constraints)
    verdict = context.verdict()
    entailed = tuple((str(goal), entails(constraints, goal)) for goal in goals)
    model = minimal_model(constraints) if verdict.consistent else None
    return ScenarioResult(name, expected, verdict, constraints, entailed, model)


def set_complete_preorder() -> ScenarioResult:
    context = UniverseContext()
    sig = context.signature("set", "Set")
    apply_theorem("complete_preorder", sig, context=context)
    return _finish("set-complete-preorder", False, context)


def small_complete_preorder() -> ScenarioResult:
    context = UniverseContext()
    sig = context.signature("category", "C")
    context.add(Constraint("=", sig.obj_type_level, sig.hom_type_level, "C is small"))
    apply_theorem("complete_preorder", sig, context=context)
    return _finish("small-complete-preorder", True, context)


def cat_exponentials() -> ScenarioResult:
    context = UniverseContext()
    sig = context.signature("cat", "Cat")
    apply_theorem("cat_exponentials", sig, context=context)
    _, j, k, l = sig.params
    goals = (
        Constraint("=", Level(j), Level(k)),
        Constraint("=", Level(k), Level(l)),
    )
    return _finish("cat-exponentials", True, context, goals)


def set_in_cat() -> ScenarioResult:
    context = UniverseContext()
    cat = context.signature("cat", "Cat")
    sets = context.signature("set", "Set")
    apply_theorem("set_in_cat", cat, sets, context=context)
    return _finish("set-in-cat", False, context)


def yoneda_via_exponentials() -> ScenarioResult:
    """Presheaf categories as exponentials Set^(C^op) inside one Cat."""
    context = UniverseContext()
    cat = context.signature("cat", "Cat")
    sets = context.signature("set", "Set")
    small = context.signature("category", "C")
    _, _, k, l = cat.params
    context.add(
        Constraint("<=", small.obj_type_level, Level(k), "C is an object of Cat"),
        Constraint("<=", small.hom_type_level, Level(l), "C is an object of Cat"),
    )
    apply_theorem("set_in_cat", cat, sets, context=context)
    return _finish("yoneda-via-exponentials", False, context)


def unit_terminal() -> ScenarioResult:
    """unit as the terminal object of Set pins the level of Set's arrows, not of its objects."""
    context = UniverseContext()
    sig = context.signature("set", "Set")
    context.add(Constraint("<=", sig.hom_type_level, Level(SET), "unit is terminal in Set"))
    goals = (Constraint("=", sig.hom_type_level, Level(SET)),)
    return _finish("unit-terminal", True, context, goals)


SCENARIOS: Dict[str, Callable[[], ScenarioResult]] = {
    "set-complete-preorder": set_complete_preorder,
    "small-complete-preorder": small_complete_preorder,
    "cat-exponentials": cat_exponentials,
    "set-in-cat": set_in_cat,
    "yoneda-via-exponentials": yoneda_via_exponentials,
    "unit-terminal": unit_terminal,
}


def run_scenario(name: str) -> ScenarioResult:
    if name not in SCENARIOS:
        raise UnknownName(name)
    result = SCENARIOS[name]()
    logger.info(f"Scenario {name}: {'consistent' if result.verdict.consistent else 'inconsistent'}")
    return result


@dataclass(frozen=True)
class LevelRef:
    """`Name.obj`, `Name.hom` or the bottom level `Set`, plus an offset."""
    target: str
    offset: int = 0

    def __str__(self) -> str:
        return f"{self.target}+{self.offset}" if self.offset else self.target


@dataclass(frozen=True)
class ScenarioDecl:
    name: str
    signatures: Tuple[Tuple[str, str, bool], ...]
    relations: Tuple[Tuple[LevelRef, str, LevelRef], ...] = ()
    steps: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    expect: Optional[bool] = None


def _resolve(context: UniverseContext, ref: LevelRef) -> Level:
    if ref.target == SET:
        return Level(SET, ref.offset)
    name, _, part = ref.target.rpartition(".")
    sig = context.lookup(name)
    level = {"obj": sig.obj_type_level, "hom": sig.hom_type_level}.get(part)
    if not isinstance(level, Level):
        raise UnknownName(ref.target)
    return level.shift(ref.offset)


def run_declared(decl: ScenarioDecl) -> ScenarioResult:
    """Registers the declared signatures in order, then relations, then theorem steps."""
    context = UniverseContext()
    for instance, kind, rigid in decl.signatures:
        context.signature(kind, instance, rigid)
    for lhs, kind, rhs in decl.relations:
        context.add(Constraint(kind, _resolve(context, lhs), _resolve(context, rhs), f"{lhs} {kind} {rhs}"))
    for theorem, args in decl.steps:
        sigs = [context.lookup(arg) for arg in args]
        if not sigs:
            raise UnknownName(f"{theorem} needs a signature")
        apply_theorem(theorem, sigs[0], sigs[1] if len(sigs) > 1 else None, context=context)
    verdict = context.verdict()
    expected = verdict.consistent if decl.expect is None else decl.expect
    return _finish(decl.name, expected, context)
