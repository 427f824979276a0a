"""
Size signatures of the builtin structures and the theorems that constrain them.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.errors import SignatureKindMismatch, UnknownName, UnknownTheorem
from src.universes.solver import Constraint, Level, LevelExpr, Verdict, check_consistency, level_max

logger = logging.getLogger(__name__)

SIGNATURES = ("category", "set", "cat")
THEOREMS = ("complete_preorder", "cat_exponentials", "set_in_cat")


@dataclass(frozen=True)
class SizeSig:
    name: str
    kind: str
    obj_type_level: LevelExpr
    hom_type_level: LevelExpr
    type_level: LevelExpr
    params: Tuple[str, ...]
    constraints: Tuple[Constraint, ...] = ()


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    verdict: Verdict
    added: Tuple[Constraint, ...]
    constraints: Tuple[Constraint, ...]

    @property
    def consistent(self) -> bool:
        return self.verdict.consistent


@dataclass
class UniverseContext:
    """Fresh level variables, registered signatures and the constraints gathered so far."""
    counters: Dict[str, int] = field(default_factory=dict)
    registry: Dict[str, SizeSig] = field(default_factory=dict)
    rigid: Dict[str, bool] = field(default_factory=dict)
    constraints: List[Constraint] = field(default_factory=list)

    def fresh(self, stem: str) -> str:
        n = self.counters.get(stem, 0)
        self.counters[stem] = n + 1
        return stem if n == 0 else f"{stem}{n}"

    def add(self, *constraints: Constraint) -> None:
        self.constraints.extend(constraints)

    def signature(self, kind: str, instance: Optional[str] = None, rigid: bool = False) -> SizeSig:
        """A fresh signature; re-registering a rigid instance equates its parameters with the first copy."""
        sig = builtin_signature(kind, self, instance)
        self.add(*sig.constraints)
        name = sig.name
        if name in self.registry:
            first = self.registry[name]
            if first.kind != kind:
                raise SignatureKindMismatch(f"{name} is registered as {first.kind}")
            if self.rigid[name] or rigid:
                self.add(*[
                    Constraint("=", Level(old), Level(new), f"{name} is monomorphic")
                    for old, new in zip(first.params, sig.params)
                ])
        else:
            self.registry[name] = sig
            self.rigid[name] = rigid
        return sig

    def lookup(self, name: str) -> SizeSig:
        if name not in self.registry:
            raise UnknownName(name)
        return self.registry[name]

    def verdict(self) -> Verdict:
        return check_consistency(self.constraints)


def builtin_signature(kind: str, context: Optional[UniverseContext] = None, instance: Optional[str] = None) -> SizeSig:
    context = context if context is not None else UniverseContext()
    name = instance or kind

    if kind == "category":
        i, j = context.fresh("i"), context.fresh("j")
        obj, hom = Level(i), Level(j)
        return SizeSig(name, kind, obj, hom, level_max(obj.shift(1), hom.shift(1)), (i, j))

    if kind == "set":
        i = context.fresh("s")
        obj, hom = Level(i, 1), Level(i)
        strict = Constraint("<=", hom.shift(1), obj, f"{name}: arrows live strictly below objects")
        return SizeSig(name, kind, obj, hom, level_max(obj.shift(1), hom.shift(1)), (i,), (strict,))

    if kind == "cat":
        i, j = context.fresh("i"), context.fresh("j")
        k, l = context.fresh("k"), context.fresh("l")
        obj, hom = Level(i), Level(j)
        members = (
            Constraint("<=", level_max(Level(k, 1), Level(l, 1)), obj, f"{name}: member categories are objects"),
            Constraint("<=", Level(k), hom, f"{name}: functors act on objects"),
            Constraint("<=", Level(l), hom, f"{name}: functors act on arrows"),
        )
        return SizeSig(name, kind, obj, hom, level_max(obj.shift(1), hom.shift(1)), (i, j, k, l), members)

    raise UnknownName(kind)


def _cat_exponentials(sig: SizeSig) -> List[Constraint]:
    if sig.kind != "cat":
        raise SignatureKindMismatch(f"cat_exponentials needs a cat signature, got {sig.kind}")
    _, j, k, l = sig.params
    return [
        Constraint("=", Level(j), Level(k), f"{sig.name}: exponentials of member categories"),
        Constraint("=", Level(k), Level(l), f"{sig.name}: exponentials of member categories"),
    ]


def apply_theorem(
    theorem: str, sig: SizeSig, set_sig: Optional[SizeSig] = None, context: Optional[UniverseContext] = None,
) -> TheoremVerdict:
    if theorem not in THEOREMS:
        raise UnknownTheorem(theorem)
    context = context if context is not None else UniverseContext(constraints=list(sig.constraints))

    if theorem == "complete_preorder":
        if sig.kind == "cat":
            raise SignatureKindMismatch("complete_preorder applies to a category or set signature")
        added = [Constraint("<=", sig.obj_type_level, sig.hom_type_level, f"complete_preorder({sig.name})")]
    elif theorem == "cat_exponentials":
        added = _cat_exponentials(sig)
    else:
        if set_sig is None or set_sig.kind != "set":
            raise SignatureKindMismatch("set_in_cat needs a set signature")
        _, _, k, l = sig.params
        added = _cat_exponentials(sig) + [
            Constraint("=", Level(k), set_sig.obj_type_level, f"{set_sig.name} is an object of {sig.name}"),
            Constraint("=", Level(l), set_sig.hom_type_level, f"{set_sig.name} is an object of {sig.name}"),
        ]
        for constraint in set_sig.constraints:
            if constraint not in context.constraints:
                context.add(constraint)

    context.add(*added)
    verdict = context.verdict()
    logger.debug(f"{theorem}({sig.name}): {'consistent' if verdict.consistent else 'inconsistent'}")
    return TheoremVerdict(theorem, verdict, tuple(added), tuple(context.constraints))
