import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import MalformedConstraint, SignatureKindMismatch, UnknownName, UnknownTheorem
from src.universes.context import UniverseContext, apply_theorem, builtin_signature
from src.universes.scenarios import SCENARIOS, LevelRef, ScenarioDecl, run_declared, run_scenario
from src.universes.solver import (
    SET, Constraint, Level, LevelMax, check_consistency, constraint_graph, entails, level_max, minimal_model,
    normalize, verify_witness,
)

VARIABLES = ("a", "b", "c")


def lt(x, y, dx=0, dy=0):
    return Constraint("<", Level(x, dx), Level(y, dy))


def le(x, y, dx=0, dy=0):
    return Constraint("<=", Level(x, dx), Level(y, dy))


def value(model, expr):
    if isinstance(expr, LevelMax):
        return max(value(model, part) for part in expr.parts)
    return model.get(expr.var, 0) + expr.offset


def satisfied(model, constraint):
    lhs, rhs = value(model, constraint.lhs), value(model, constraint.rhs)
    return {"<": lhs < rhs, "<=": lhs <= rhs, "=": lhs == rhs}[constraint.kind]


levels = st.builds(Level, st.sampled_from(VARIABLES), st.integers(0, 1))
constraints = st.builds(Constraint, st.sampled_from(["<", "<=", "="]), levels, levels)


def test_two_cycle_is_inconsistent():
    verdict = check_consistency([lt("i", "j"), lt("j", "i")])
    assert not verdict.consistent
    assert len(verdict.cycle) == 2
    assert verdict.cycle[0].lhs.var == "i"
    assert verify_witness(verdict.cycle)
    assert len(verdict.trace) == 2


def test_chain_is_consistent():
    cs = [le("i", "j"), le("j", "k")]
    assert check_consistency(cs).consistent
    assert minimal_model(cs) == {SET: 0, "i": 0, "j": 0, "k": 0}
    assert minimal_model([lt("i", "j"), lt("j", "k")])["k"] == 2


def test_self_loops():
    assert not check_consistency([lt("i", "i")]).consistent
    verdict = check_consistency([le("i", "i", dx=1)])
    assert not verdict.consistent
    assert verify_witness(verdict.cycle)
    assert check_consistency([le("i", "i")]).consistent


def test_offsets_shift_the_graph_weights():
    G = constraint_graph([le("i", "j", dx=2, dy=1)])
    assert G["i"]["j"]["weight"] == 1
    assert G[SET]["i"]["weight"] == 0
    assert not check_consistency([le("i", "j", dx=1), le("j", "i")]).consistent
    assert check_consistency([le("i", "j", dy=1), le("j", "i")]).consistent


def test_max_on_the_smaller_side():
    m = level_max(Level("i", 1), Level("j", 1))
    assert isinstance(m, LevelMax)
    atoms = normalize(Constraint("<=", m, Level("k")))
    assert [(atom.lhs.var, atom.rhs.var) for atom in atoms] == [("i", "k"), ("j", "k")]
    assert minimal_model([Constraint("<=", m, Level("k"))])["k"] == 1
    assert level_max(Level("i"), Level("i")) == Level("i")


@pytest.mark.parametrize("build", [
    lambda: Constraint("<=", Level("k"), LevelMax((Level("i"), Level("j")))),
    lambda: Constraint("=", LevelMax((Level("i"), Level("j"))), Level("k")),
    lambda: Constraint("<", LevelMax((Level("i"), Level("j"))), Level("k")),
])
def test_malformed_max_placements(build):
    with pytest.raises(MalformedConstraint):
        normalize(build())


def test_malformed_levels():
    with pytest.raises(MalformedConstraint):
        Level("i", -1)
    with pytest.raises(MalformedConstraint):
        LevelMax(())
    with pytest.raises(MalformedConstraint):
        Constraint(">=", Level("i"), Level("j"))


def test_entailment():
    assert entails([lt("i", "j")], le("i", "j"))
    assert not entails([le("i", "j")], lt("i", "j"))
    assert entails([le("i", "j"), le("j", "i")], Constraint("=", Level("i"), Level("j")))


@given(st.lists(constraints, max_size=5))
def test_verdict_matches_brute_force(cs):
    """Test consistency against a search over small assignments."""
    verdict = check_consistency(cs)
    # a least model never needs more than two steps per variable
    found = any(
        all(satisfied(dict(zip(VARIABLES, values)), c) for c in cs)
        for values in itertools.product(range(7), repeat=len(VARIABLES))
    )
    assert verdict.consistent == found
    if verdict.consistent:
        model = minimal_model(cs)
        assert all(satisfied(model, c) for c in cs)
    else:
        assert verify_witness(verdict.cycle)


@given(st.lists(constraints, max_size=4), st.lists(constraints, max_size=3))
def test_inconsistency_is_monotone(cs, extra):
    if not check_consistency(cs).consistent:
        assert not check_consistency(cs + extra).consistent


@given(st.lists(constraints, max_size=5))
def test_verdicts_are_deterministic(cs):
    assert check_consistency(cs) == check_consistency(list(cs))


def test_fresh_names():
    context = UniverseContext()
    assert [context.fresh("i") for _ in range(3)] == ["i", "i1", "i2"]


def test_builtin_signatures():
    category = builtin_signature("category")
    assert category.params == ("i", "j")
    assert category.type_level == LevelMax((Level("i", 1), Level("j", 1)))
    sets = builtin_signature("set")
    assert sets.obj_type_level == Level("s", 1)
    assert sets.hom_type_level == Level("s")
    cat = builtin_signature("cat")
    assert cat.params == ("i", "j", "k", "l")
    assert len(cat.constraints) == 3
    assert check_consistency(cat.constraints).consistent
    with pytest.raises(UnknownName):
        builtin_signature("groupoid")


def test_theorem_argument_checks():
    cat = builtin_signature("cat")
    with pytest.raises(SignatureKindMismatch):
        apply_theorem("complete_preorder", cat)
    with pytest.raises(SignatureKindMismatch):
        apply_theorem("set_in_cat", cat)
    with pytest.raises(SignatureKindMismatch):
        apply_theorem("cat_exponentials", builtin_signature("set"))
    with pytest.raises(UnknownTheorem):
        apply_theorem("yoneda", cat)


def test_complete_preorder_verdicts():
    assert not apply_theorem("complete_preorder", builtin_signature("set")).consistent
    assert apply_theorem("complete_preorder", builtin_signature("category")).consistent
    assert apply_theorem("cat_exponentials", builtin_signature("cat")).consistent


def test_rigid_instances_share_levels():
    """Test a rigid signature registered twice cannot sit strictly above itself."""
    def attempt(rigid):
        context = UniverseContext()
        first = context.signature("set", "S", rigid=rigid)
        second = context.signature("set", "S")
        context.add(Constraint("<", Level(second.params[0]), Level(first.params[0])))
        return context.verdict().consistent

    assert attempt(rigid=False)
    assert not attempt(rigid=True)


def test_registration_checks():
    context = UniverseContext()
    context.signature("set", "S")
    with pytest.raises(SignatureKindMismatch):
        context.signature("category", "S")
    with pytest.raises(UnknownName):
        context.lookup("T")


@pytest.mark.parametrize("name, consistent", [
    ("set-complete-preorder", False),
    ("small-complete-preorder", True),
    ("cat-exponentials", True),
    ("set-in-cat", False),
    ("yoneda-via-exponentials", False),
    ("unit-terminal", True),
])
def test_builtin_scenarios(name, consistent):
    result = run_scenario(name)
    assert result.ok
    assert result.verdict.consistent == consistent
    if consistent:
        assert result.model is not None
    else:
        assert verify_witness(result.verdict.cycle)
        assert result.verdict.trace


def test_every_scenario_is_listed():
    assert len(SCENARIOS) == 6
    with pytest.raises(UnknownName):
        run_scenario("set-is-small")


def test_entailed_equalities_hold():
    assert all(holds for _, holds in run_scenario("cat-exponentials").entailed)
    assert all(holds for _, holds in run_scenario("unit-terminal").entailed)


def test_declared_scenario():
    decl = ScenarioDecl(
        "declared",
        signatures=(("S", "set", False), ("C", "category", False)),
        relations=((LevelRef("C.obj"), "=", LevelRef("C.hom")),),
        steps=(("complete_preorder", ("C",)),),
        expect=True,
    )
    result = run_declared(decl)
    assert result.ok
    assert result.verdict.consistent


def test_declared_scenario_expectation_can_fail():
    decl = ScenarioDecl(
        "wrong",
        signatures=(("S", "set", False),),
        steps=(("complete_preorder", ("S",)),),
        expect=True,
    )
    result = run_declared(decl)
    assert not result.verdict.consistent
    assert not result.ok


def test_declared_scenario_resolves_names():
    decl = ScenarioDecl("bad", signatures=(("S", "set", False),), relations=((LevelRef("T.obj"), "<", LevelRef(SET)),))
    with pytest.raises(UnknownName):
        run_declared(decl)
    decl = ScenarioDecl("bad", signatures=(("S", "set", False),), relations=((LevelRef("S.top"), "<", LevelRef(SET)),))
    with pytest.raises(UnknownName):
        run_declared(decl)
