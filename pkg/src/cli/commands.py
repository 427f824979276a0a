"""
Subcommand dispatch: every handler turns a parsed spec file into a Report.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from src import config
from src.adjunctions.finset_chain import WITNESS_KINDS, fs_adjunction_witness
from src.adjunctions.forms import (
    FORMS, AdjUnitCounit, adj_convert, adj_dual, adj_unique_iso, find_adjunction, right_adjoints,
    validate_adjunction,
)
from src.algebra.endofunctor import (
    algebra_category, coalgebra_category, initial_algebra, is_faithful, terminal_coalgebra,
)
from src.category.constructions import (
    cat_terminal_initial_witness, comma_category, curry_functor, functor_category,
    product_category, uncurry_functor,
)
from src.category.core import (
    Functor, compose_functors, is_natural_isomorphism, opposite_category, opposite_functor,
)
from src.category.laws import validate
from src.cli.parser import SpecFile
from src.cli.report import Report
from src.errors import InvalidInput, PointwiseKanMissing, UnresolvedName
from src.finset.constructions import (
    enumerate_monos, fs_coequalizer, fs_equalizer, fs_exponential, fs_product, fs_pullback,
    fs_slice_exponential, fs_subobject_classifier, fs_sum, subobjects,
)
from src.finset.diagrams import Diagram, validate_diagram
from src.finset.sets import all_functions, canonical_set, initial_set, terminal_set
from src.finset.universal import KINDS, fs_verify_slice_exponential, fs_verify_universal
from src.kan.checks import (
    kan_global_check, kan_local_check, kan_local_check_left, kan_local_check_sets,
    representable_preservation,
)
from src.kan.pointwise import left_kan, left_kan_sets, right_kan_pointwise, right_kan_sets
from src.limits.cones import colimit_by_search, enumerate_cones, limit_by_search
from src.limits.finset_limits import finset_colimit, finset_limit
from src.limits.preorder import complete_preorder_check
from src.universes.scenarios import SCENARIOS, run_declared, run_scenario
from src.universes.solver import verify_witness
from src.yoneda.exponentials import ccc_exponential_iso, ccc_naturality_check
from src.yoneda.presheaves import (
    check_embedding, yoneda_bijection, yoneda_embedding, yoneda_naturality_check,
)

logger = logging.getLogger(__name__)

# Adjunction witnesses and exponential naturality grow fastest; their default bound is lower
WITNESS_BOUND = 2


@dataclass(frozen=True)
class Command:
    verb: str
    target: str = ""
    name: Optional[str] = None
    along: Optional[str] = None
    with_: Optional[str] = None
    kind: Optional[str] = None
    unit: Optional[str] = None
    counit: Optional[str] = None
    bound: Optional[int] = None
    shape_bound: Optional[int] = None
    tables: bool = False

    @property
    def title(self) -> str:
        parts = [self.verb, self.target] + [x for x in (self.name, self.along, self.with_, self.kind) if x]
        return " ".join(p for p in parts if p)

    def set_bound(self) -> int:
        return self.bound if self.bound is not None else config.SET_BOUND

    def witness_bound(self) -> int:
        return self.bound if self.bound is not None else WITNESS_BOUND

    def within_shapes(self, *categories) -> bool:
        limit = self.shape_bound if self.shape_bound is not None else config.SHAPE_BOUND
        return config.LARGE_SHAPES or all(C.n_objects <= limit for C in categories)


def _require(value: Optional[str], flag: str) -> str:
    if not value:
        raise InvalidInput(f"This command needs {flag}")
    return value


def cmd_validate(cmd: Command, spec: SpecFile, report: Report) -> None:
    for name in spec.names("category"):
        C = spec.get(name)
        result = validate(C)
        twice = opposite_category(opposite_category(C))
        report.add(f"category {name}", result.ok, str(result.violation),
                   objects=C.n_objects, morphisms=C.n_morphisms)
        report.add(f"opposite {name}", twice.tables() == C.tables(), "opposite is not involutive")
    functors = {name: spec.get(name) for name in spec.names("functor")}
    for name, F in functors.items():
        result = validate(F)
        report.add(f"functor {name}", result.ok, str(result.violation), omap=list(F.omap))
    for (n1, F1), (n2, F2) in itertools.product(functors.items(), repeat=2):
        if F1.cod == F2.dom and validate(F1).ok and validate(F2).ok:
            lhs = opposite_functor(compose_functors(F2, F1))
            rhs = compose_functors(opposite_functor(F2), opposite_functor(F1))
            report.add(f"opposite {n2}.{n1}", lhs == rhs, (n2, n1))
    for name in spec.names("nattrans"):
        result = validate(spec.get(name))
        report.add(f"nattrans {name}", result.ok, str(result.violation))
    for name in spec.names("diagram"):
        D = spec.get(name)
        result = validate_diagram(D)
        report.add(f"diagram {name}", result.ok, str(result.violation),
                   sizes=[len(A) for A in D.on_objects])


def matching_family_count(D: Diagram) -> int:
    """Brute-force count of compatible families, one element per object of the shape."""
    J = D.shape
    count = 0
    for family in itertools.product(*(range(len(A)) for A in D.on_objects)):
        if all(D.on_morphisms[f].table[family[J.src[f]]] == family[J.dst[f]] for f in J.morphisms):
            count += 1
    return count


def _limit(cmd: Command, spec: SpecFile, report: Report, co: bool) -> None:
    name = _require(cmd.name, "--name")
    label = "colimit" if co else "limit"
    entity = spec.get(name)
    if isinstance(entity, Diagram):
        result = finset_colimit(entity) if co else finset_limit(entity)
        details = {"cardinality": len(result.obj)}
        if not co:
            details["matching_families"] = matching_family_count(entity)
        if cmd.tables:
            details["elements"] = list(result.obj.elements)
            details["legs"] = [list(leg.table) for leg in result.legs]
        ok = None if co else details["cardinality"] == details["matching_families"]
        report.add(f"{label} {name}", ok, details.get("matching_families"), **details)
        return
    if not isinstance(entity, Functor):
        raise InvalidInput(f"{name} is not a diagram or functor")
    D = opposite_functor(entity) if co else entity
    cones = sum(1 for _ in enumerate_cones(D))
    cone = colimit_by_search(entity) if co else limit_by_search(entity)
    if cone is None:
        report.add(f"{label} {name}", None, exists=False, cones=cones)
        return
    report.add(f"{label} {name}", None, exists=True, cones=cones,
               apex=entity.cod.obj_names[cone.apex],
               legs=[entity.cod.mor_names[leg] for leg in cone.legs])


def cmd_limit(cmd: Command, spec: SpecFile, report: Report) -> None:
    _limit(cmd, spec, report, co=False)


def cmd_colimit(cmd: Command, spec: SpecFile, report: Report) -> None:
    _limit(cmd, spec, report, co=True)


def _kan(cmd: Command, spec: SpecFile, report: Report, left: bool) -> None:
    name, along = _require(cmd.name, "--name"), _require(cmd.along, "--along")
    side = "left" if left else "right"
    F, p = spec.get(name), spec.get(along, "functor")
    if isinstance(F, Diagram):
        result = left_kan_sets(F, p) if left else right_kan_sets(F, p)
        sizes = [len(A) for A in result.extension.on_objects]
        report.add(f"kan-{side} {name} along {along}", None, sizes=sizes)
        if not left:
            check = kan_local_check_sets(result, cmd.set_bound())
            report.add("universal property", check.ok, (check.form,) + tuple(check.witness or ()),
                       checked=check.checked, detail=check.detail)
        return

    result = left_kan(F, p) if left else right_kan_pointwise(F, p)
    if result is None:
        report.add(f"kan-{side} {name} along {along}", None, exists=False)
        return
    E = F.cod
    report.add(f"kan-{side} {name} along {along}", None, exists=True,
               objects=[E.obj_names[x] for x in result.extension.omap])
    if not cmd.within_shapes(p.dom, p.cod):
        report.add("universal property", None, skipped="shape bound")
        return
    check = kan_local_check_left(result) if left else kan_local_check(result, F, p)
    report.add("universal property", check.ok, (check.form,) + tuple(check.witness or ()),
               checked=check.checked, detail=check.detail)
    if not left:
        for e in E.objects:
            kept = representable_preservation(result, e)
            report.add(f"hom({E.obj_names[e]}, -) preserves", kept.ok, kept.witness, sizes=list(kept.sizes))
        if not cmd.within_shapes(E):
            return
        try:
            global_check = kan_global_check(p, E)
            report.add("right adjoint to precomposition", global_check.ok,
                       str(global_check.adjunction.violation), counts_match=global_check.counts_match)
        except PointwiseKanMissing as e:
            report.add("right adjoint to precomposition", None, skipped=str(e))


def cmd_kan_right(cmd: Command, spec: SpecFile, report: Report) -> None:
    _kan(cmd, spec, report, left=False)


def cmd_kan_left(cmd: Command, spec: SpecFile, report: Report) -> None:
    _kan(cmd, spec, report, left=True)


def cmd_comma(cmd: Command, spec: SpecFile, report: Report) -> None:
    F = spec.get(_require(cmd.name, "--name"), "functor")
    G = spec.get(_require(cmd.with_, "--with"), "functor")
    comma = comma_category(F, G)
    result = validate(comma.category)
    report.add(f"comma {cmd.name} {cmd.with_}", result.ok, str(result.violation),
               objects=comma.category.n_objects, morphisms=comma.category.n_morphisms)


def cmd_functor_cat(cmd: Command, spec: SpecFile, report: Report) -> None:
    C = spec.get(_require(cmd.name, "--name"), "category")
    D = spec.get(_require(cmd.with_, "--with"), "category")
    if not cmd.within_shapes(C, D):
        raise InvalidInput("Functor category exceeds the shape bound; raise --shape-bound or set FINCAT_LARGE_SHAPES")
    fc = functor_category(C, D)
    report.add(f"functor-cat {cmd.name} {cmd.with_}", None,
               functors=len(fc.functors), transformations=len(fc.transformations))
    # projection C x D -> D, curried and uncurried again
    product = product_category(C, D)
    curried = curry_functor(product.second, functor_category(D, D))
    back = uncurry_functor(curried, functor_category(D, D))
    report.add("curry/uncurry", back == product.second, "uncurry . curry differs from the projection")


def cmd_algebra_cat(cmd: Command, spec: SpecFile, report: Report) -> None:
    T = spec.get(_require(cmd.name, "--name"), "functor")
    algebras = algebra_category(T)
    coalgebras = coalgebra_category(T)
    report.add(f"algebra-cat {cmd.name}", is_faithful(algebras.forgetful), "forgetful functor is not faithful",
               objects=algebras.category.n_objects, morphisms=algebras.category.n_morphisms)
    report.add(f"coalgebra-cat {cmd.name}", is_faithful(coalgebras.forgetful), "forgetful functor is not faithful",
               objects=coalgebras.category.n_objects, morphisms=coalgebras.category.n_morphisms)
    for label, lambek in (("initial algebra", initial_algebra(T)), ("terminal coalgebra", terminal_coalgebra(T))):
        report.add(label, lambek.ok, lambek.algebra, present=lambek.present,
                   structure_invertible=lambek.structure_invertible)


def _explicit_adjunction(cmd: Command, spec: SpecFile, F: Functor, G: Functor) -> AdjUnitCounit:
    unit = spec.get(_require(cmd.unit, "--unit"), "nattrans")
    counit = spec.get(_require(cmd.counit, "--counit"), "nattrans")
    return AdjUnitCounit(F, G, unit, counit)


def cmd_adjunction(cmd: Command, spec: SpecFile, report: Report) -> None:
    if not cmd.name:
        for kind in WITNESS_KINDS:
            witness = fs_adjunction_witness(kind, cmd.witness_bound())
            report.add(f"finset {kind}", witness.ok, witness.witness,
                       bound=witness.bound, instances=witness.instances, squares=witness.squares)
        return
    F = spec.get(cmd.name, "functor")
    G = spec.get(_require(cmd.with_, "--with"), "functor")
    title = f"adjunction {cmd.name} -| {cmd.with_}"
    if cmd.unit or cmd.counit:
        given = _explicit_adjunction(cmd, spec, F, G)
        result = validate_adjunction(given)
        report.add(title, result.ok, str(result.violation), unit=cmd.unit, counit=cmd.counit)
        if not result.ok:
            return
        found = given
    else:
        found = find_adjunction(F, G)
        if found is None:
            report.add(title, False, "no unit and counit satisfy the triangle identities")
            return
    forms = {form: adj_convert(found, form) for form in FORMS}
    for form, adj in forms.items():
        result = validate_adjunction(adj)
        report.add(f"{form} form", result.ok, str(result.violation))
    paths_ok = all(
        adj_convert(adj_convert(forms[a], b), c) == forms[c]
        for a, b, c in itertools.product(FORMS, repeat=3)
    )
    report.add("conversions commute", paths_ok)
    report.add("dual is involutive", all(adj_dual(adj_dual(adj)) == adj for adj in forms.values()))
    others = right_adjoints(F)
    isos = [adj_unique_iso(forms["hom"], adj_convert(other, "hom")) for other in others]
    broken = next((i for i, iso in enumerate(isos) if not is_natural_isomorphism(iso)), None)
    report.add("right adjoint unique", broken is None,
               None if broken is None else (broken, isos[broken].components),
               adjunctions=len(others), right_adjoints=len({other.G for other in others}))


def cmd_yoneda(cmd: Command, spec: SpecFile, report: Report) -> None:
    C = spec.get(_require(cmd.name, "--name"), "category")
    embedding = check_embedding(yoneda_embedding(C))
    report.add(f"yoneda embedding {cmd.name}", embedding.ok, embedding.witness,
               functorial=embedding.functorial, faithful=embedding.faithful, full=embedding.full)
    if not cmd.with_:
        return
    F = spec.get(cmd.with_, "diagram")
    if F.shape != opposite_category(C):
        raise InvalidInput(f"{cmd.with_} is not a presheaf on {cmd.name}")
    for c in C.objects:
        bijection = yoneda_bijection(F, c, C)
        nats, elements = bijection.cardinalities
        report.add(f"Nat(y {C.obj_names[c]}, {cmd.with_})", bijection.round_trips and nats == elements,
                   (c, nats, elements), transformations=nats, elements=elements)
    natural, witness = yoneda_naturality_check(F, C)
    report.add("natural in c", natural, witness)


def cmd_topos(cmd: Command, spec: SpecFile, report: Report) -> None:
    bound = cmd.set_bound()
    omega = fs_subobject_classifier()
    for n in range(bound + 1):
        A = canonical_set(n)
        unique = True
        for m in enumerate_monos(A):
            matches = [chi for chi in all_functions(A, omega.omega) if omega.is_pullback(m, chi)]
            unique = unique and matches == [omega.classify(m)]
        count = len(subobjects(A))
        report.add(f"subobjects of {n}", unique and count == 2 ** n, (n, count), subobjects=count)
    for a, b in itertools.product(range(bound + 1), repeat=2):
        exponential = fs_exponential(canonical_set(a), canonical_set(b))
        check = fs_verify_universal(exponential, "exponential", bound)
        report.add(f"exponential {b}^{a}", check.ok, check.witness, checked=check.checked)
    small = min(bound, WITNESS_BOUND)
    A = canonical_set(small)
    slices = [f for n in range(small + 1) for f in all_functions(canonical_set(n), A)]
    slice_ok, witness, checked = True, None, 0
    for f, g in itertools.product(slices, repeat=2):
        check = fs_verify_slice_exponential(fs_slice_exponential(f, g), small)
        checked += check.checked
        if not check.ok and slice_ok:
            slice_ok, witness = False, (f.table, g.table, check.witness)
    report.add(f"slice exponentials over {small}", slice_ok, witness, checked=checked)
    round_trips = all(
        ccc_exponential_iso(canonical_set(a), canonical_set(b), canonical_set(c)).round_trips
        for a, b, c in itertools.product(range(small + 1), repeat=3)
    )
    report.add("exponential law round trips", round_trips)
    naturality = ccc_naturality_check(small)
    report.add("exponential law natural", naturality.ok, naturality.witness, squares=naturality.squares)


def cmd_complete_preorder(cmd: Command, spec: SpecFile, report: Report) -> None:
    names = [cmd.name] if cmd.name else spec.names("category")
    for name in names:
        result = complete_preorder_check(spec.get(name, "category"))
        report.add(f"complete-preorder {name}", result.ok, result.violation,
                   complete=result.complete, missing=result.missing, preorder=result.preorder,
                   hom_powers=[(c.x, c.y, c.lhs, c.rhs) for c in result.hom_powers])


def _universal_candidate(cmd: Command, spec: SpecFile):
    kind = cmd.kind
    if kind == "terminal":
        return terminal_set()
    if kind == "initial":
        return initial_set()
    first = spec.get(_require(cmd.name, "--name"))
    second = spec.get(_require(cmd.with_, "--with"))
    builders = {
        "product": fs_product, "sum": fs_sum, "exponential": fs_exponential,
        "equalizer": fs_equalizer, "coequalizer": fs_coequalizer, "pullback-square": fs_pullback,
    }
    return builders[kind](first, second)


def cmd_universal(cmd: Command, spec: SpecFile, report: Report) -> None:
    bound = cmd.set_bound()
    if cmd.kind:
        if cmd.kind not in KINDS:
            raise InvalidInput(f"Unknown universal property {cmd.kind}; expected one of {', '.join(KINDS)}")
        check = fs_verify_universal(_universal_candidate(cmd, spec), cmd.kind, bound)
        report.add(f"universal {cmd.kind}", check.ok, check.witness, checked=check.checked, detail=check.detail)
        return
    two, three = canonical_set(2), canonical_set(3)
    swap = next(f for f in all_functions(two, two) if f.table == (1, 0))
    constant = next(f for f in all_functions(two, two) if f.table == (0, 0))
    candidates = [
        (terminal_set(), "terminal"), (initial_set(), "initial"),
        (fs_product(two, three), "product"), (fs_sum(two, three), "sum"),
        (fs_equalizer(swap, constant), "equalizer"), (fs_coequalizer(swap, constant), "coequalizer"),
        (fs_exponential(two, two), "exponential"), (fs_pullback(swap, constant), "pullback-square"),
    ]
    for candidate, kind in candidates:
        check = fs_verify_universal(candidate, kind, bound)
        report.add(f"universal {kind}", check.ok, check.witness, checked=check.checked)
    for name in spec.names("category"):
        extremes = cat_terminal_initial_witness(spec.get(name))
        report.add(f"Cat extremes for {name}", extremes.ok, (extremes.from_empty, extremes.to_unit))


def cmd_scenario(cmd: Command, spec: SpecFile, report: Report) -> None:
    name = _require(cmd.name, "a scenario name")
    if name in spec.names("scenario"):
        result = run_declared(spec.get(name))
    elif name in SCENARIOS:
        result = run_scenario(name)
    else:
        raise UnresolvedName(name)
    verdict = result.verdict
    details = {
        "consistent": verdict.consistent,
        "expected": "consistent" if result.expected_consistent else "inconsistent",
        "constraints": [str(c) for c in result.constraints],
    }
    if not verdict.consistent:
        details["trace"] = list(verdict.trace)
        details["witness_valid"] = verify_witness(verdict.cycle)
    if result.entailed:
        details["entailed"] = [[goal, holds] for goal, holds in result.entailed]
    if result.model is not None:
        details["model"] = result.model
    report.add(f"scenario {name}", result.ok, list(verdict.trace), **details)


Handler = Callable[[Command, SpecFile, Report], None]

DISPATCH: Dict[Tuple[str, str], Handler] = {
    ("validate", ""): cmd_validate,
    ("construct", "limit"): cmd_limit,
    ("construct", "colimit"): cmd_colimit,
    ("construct", "kan-right"): cmd_kan_right,
    ("construct", "kan-left"): cmd_kan_left,
    ("construct", "comma"): cmd_comma,
    ("construct", "functor-cat"): cmd_functor_cat,
    ("construct", "algebra-cat"): cmd_algebra_cat,
    ("check", "adjunction"): cmd_adjunction,
    ("check", "yoneda"): cmd_yoneda,
    ("check", "topos"): cmd_topos,
    ("check", "complete-preorder"): cmd_complete_preorder,
    ("check", "universal"): cmd_universal,
    ("universe", "scenario"): cmd_scenario,
}


def run_command(cmd: Command, spec: SpecFile) -> Report:
    handler = DISPATCH.get((cmd.verb, cmd.target))
    if handler is None:
        raise InvalidInput(f"Unknown command: {cmd.verb} {cmd.target}".rstrip())
    report = Report(cmd.title)
    handler(cmd, spec, report)
    logger.info(f"{cmd.title}: {len(report.checks)} checks, exit code {report.exit_code}")
    return report
