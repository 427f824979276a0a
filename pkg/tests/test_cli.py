import json
import os

import pytest

from src.cli.commands import DISPATCH, Command, run_command
from src.cli.parser import format_spec, parse_spec
from src.cli.report import CheckResult, Report, emit_report, failures, to_structured
from src.errors import IllTypedDeclaration, ParseError, UnresolvedName
from src.main import build_parser, command_from_args, main

CORPUS = ("walking_arrow.cat", "chain3.cat", "cospan.cat", "parallel_pair.cat", "galois.cat", "scenarios.cat")


def names(report):
    return [check.name for check in report.checks]


def verdict(report, name):
    return next(check.verdict for check in report.checks if check.name == name)


def test_parse_walking_arrow(read_corpus):
    spec = parse_spec(read_corpus("walking_arrow.cat"))
    arrow = spec.get("Arrow", "category")
    assert arrow.n_objects == 2
    assert arrow.n_morphisms == 3
    assert spec.names("category") == ["Arrow", "ArrowOp"]
    assert spec.kind_of("pf") == "fn"


def test_counted_objects_are_numbered(read_corpus):
    spec = parse_spec(read_corpus("chain3.cat"))
    C = spec.get("Chain3")
    assert list(C.obj_names) == ["0", "1", "2"]
    assert "id_0" in C.mor_names


@pytest.mark.parametrize("name", CORPUS)
def test_format_is_canonical(read_corpus, name):
    spec = parse_spec(read_corpus(name))
    text = format_spec(spec)
    assert parse_spec(text) == spec
    assert format_spec(parse_spec(text)) == text


def test_bad_character_position():
    with pytest.raises(ParseError) as info:
        parse_spec("category A {\n    objects: a @ b;\n}\n")
    assert info.value.line == 2
    assert info.value.col > 1


def test_unknown_declaration_keyword():
    with pytest.raises(ParseError):
        parse_spec("monad M {\n}\n")


def test_composition_endpoints_are_checked():
    text = """
    category Bad {
        objects: a, b, c;
        mor f: a -> b;
        mor g: b -> c;
        mor h: a -> c;
        comp f g = h;
    }
    """
    with pytest.raises(IllTypedDeclaration):
        parse_spec(text)


def test_missing_composition_row():
    text = """
    category Bad {
        objects: a, b, c;
        mor f: a -> b;
        mor g: b -> c;
        mor h: a -> c;
    }
    """
    with pytest.raises(IllTypedDeclaration, match="missing composition row"):
        parse_spec(text)


def test_undefined_set():
    text = """
    set A {
        elements: x;
    }
    fn f: A -> B {
        x -> y;
    }
    """
    with pytest.raises(UnresolvedName) as info:
        parse_spec(text)
    assert info.value.name == "B"


def test_duplicate_declaration():
    text = "set A {\n    elements: x;\n}\nset A {\n    elements: y;\n}\n"
    with pytest.raises(IllTypedDeclaration, match="declared twice"):
        parse_spec(text)


def test_kind_mismatch_on_lookup(read_corpus):
    spec = parse_spec(read_corpus("cospan.cat"))
    with pytest.raises(IllTypedDeclaration):
        spec.get("A", "category")
    with pytest.raises(UnresolvedName):
        spec.get("Nope")


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_validates(read_corpus, name):
    report = run_command(Command("validate"), parse_spec(read_corpus(name)))
    assert report.exit_code == 0, failures(report)


def test_validate_reports_every_entity(read_corpus):
    report = run_command(Command("validate"), parse_spec(read_corpus("galois.cat")))
    for expected in ("category Two", "opposite Three", "functor Clamp", "nattrans Up", "opposite Clamp.Incl"):
        assert expected in names(report)


def test_cospan_limit(read_corpus):
    spec = parse_spec(read_corpus("cospan.cat"))
    report = run_command(Command("construct", "limit", name="X", tables=True), spec)
    check = report.checks[0]
    assert check.name == "limit X"
    assert check.verdict == "pass"
    assert check.details["cardinality"] == 4
    assert check.details["matching_families"] == 4
    assert len(check.details["legs"]) == 3


def test_parallel_pair_limit_is_the_equalizer(read_corpus):
    spec = parse_spec(read_corpus("parallel_pair.cat"))
    report = run_command(Command("construct", "limit", name="E"), spec)
    assert report.checks[0].details["cardinality"] == 1
    colimit = run_command(Command("construct", "colimit", name="E"), spec)
    assert colimit.checks[0].verdict == "info"
    assert colimit.exit_code == 0


def test_complete_preorder(read_corpus):
    spec = parse_spec(read_corpus("chain3.cat"))
    report = run_command(Command("check", "complete-preorder"), spec)
    assert verdict(report, "complete-preorder Chain3") == "pass"


def test_builtin_scenario_through_the_command_line_surface():
    report = run_command(Command("universe", "scenario", name="set-complete-preorder"), parse_spec(""))
    check = report.checks[0]
    assert check.verdict == "pass"
    assert check.details["consistent"] is False
    assert check.details["expected"] == "inconsistent"
    assert check.details["witness_valid"]
    assert check.details["trace"]


@pytest.mark.parametrize("name", ["set_complete_preorder", "small_complete_preorder", "set_in_cat", "rigid_copies"])
def test_declared_scenarios(read_corpus, name):
    spec = parse_spec(read_corpus("scenarios.cat"))
    report = run_command(Command("universe", "scenario", name=name), spec)
    assert report.exit_code == 0, report.checks


def test_unknown_scenario():
    with pytest.raises(UnresolvedName):
        run_command(Command("universe", "scenario", name="missing"), parse_spec(""))


def test_galois_adjunction(read_corpus):
    spec = parse_spec(read_corpus("galois.cat"))
    report = run_command(Command("check", "adjunction", name="Incl", with_="Clamp"), spec)
    assert report.exit_code == 0, failures(report)
    assert "conversions commute" in names(report)
    assert "right adjoint unique" in names(report)
    backwards = run_command(Command("check", "adjunction", name="Clamp", with_="Incl"), spec)
    assert backwards.exit_code == 1


def test_right_kan_extension_along_inclusion(read_corpus):
    spec = parse_spec(read_corpus("galois.cat"))
    report = run_command(Command("construct", "kan-right", name="IdTwo", along="Incl", shape_bound=3), spec)
    assert report.checks[0].name == "kan-right IdTwo along Incl"
    assert report.checks[0].details["objects"] == ["p0", "p1", "p1"]
    assert verdict(report, "universal property") == "pass"
    assert report.exit_code == 0, failures(report)


def test_kan_check_is_skipped_beyond_the_shape_bound(read_corpus):
    spec = parse_spec(read_corpus("galois.cat"))
    report = run_command(Command("construct", "kan-right", name="IdTwo", along="Incl", shape_bound=2), spec)
    assert verdict(report, "universal property") == "info"


def test_structured_output_is_stable(read_corpus):
    spec = parse_spec(read_corpus("cospan.cat"))
    first = emit_report(run_command(Command("construct", "limit", name="X"), spec), "structured")
    second = emit_report(run_command(Command("construct", "limit", name="X"), spec), "structured")
    assert first == second
    payload = json.loads(first)
    assert payload["command"] == "construct limit X"
    assert "witness" not in payload["checks"][0]
    assert "timing_ms" not in payload["checks"][0]


def test_timings_are_opt_in(read_corpus):
    report = run_command(Command("validate"), parse_spec(read_corpus("chain3.cat")))
    assert all("timing_ms" in check for check in to_structured(report, timings=True)["checks"])
    assert "ms" in emit_report(report, "text", timings=True)
    assert emit_report(report).startswith("== validate ==")


HANDLER_CASES = {
    ("validate", ""): ("galois.cat", Command("validate")),
    ("construct", "limit"): ("cospan.cat", Command("construct", "limit", name="X")),
    ("construct", "colimit"): ("cospan.cat", Command("construct", "colimit", name="X")),
    ("construct", "kan-right"): ("galois.cat", Command("construct", "kan-right", name="IdTwo", along="Incl")),
    ("construct", "kan-left"): ("galois.cat", Command("construct", "kan-left", name="IdTwo", along="Incl")),
    ("construct", "comma"): ("galois.cat", Command("construct", "comma", name="IdTwo", with_="Top")),
    ("construct", "functor-cat"): ("galois.cat", Command("construct", "functor-cat", name="Two", with_="Two")),
    ("construct", "algebra-cat"): ("galois.cat", Command("construct", "algebra-cat", name="Top")),
    ("check", "adjunction"): ("galois.cat", Command("check", "adjunction", name="Incl", with_="Clamp")),
    ("check", "yoneda"): ("walking_arrow.cat", Command("check", "yoneda", name="Arrow")),
    ("check", "topos"): ("chain3.cat", Command("check", "topos", bound=1)),
    ("check", "complete-preorder"): ("chain3.cat", Command("check", "complete-preorder")),
    ("check", "universal"): ("chain3.cat", Command("check", "universal", bound=1)),
    ("universe", "scenario"): ("scenarios.cat", Command("universe", "scenario", name="unit-terminal")),
}


def test_every_handler_has_a_case():
    assert set(HANDLER_CASES) == set(DISPATCH)


@pytest.mark.parametrize("key", sorted(DISPATCH))
def test_every_handler_is_reachable(key):
    verb, target = key
    argv = {"validate": ["validate"], "universe": ["universe", "scenario", "unit-terminal"]}.get(verb, [verb, target])
    cmd = command_from_args(build_parser().parse_args(argv))
    assert (cmd.verb, cmd.target) == key


@pytest.mark.parametrize("key", sorted(DISPATCH))
def test_every_handler_produces_checks(read_corpus, key):
    corpus_file, cmd = HANDLER_CASES[key]
    report = run_command(cmd, parse_spec(read_corpus(corpus_file)))
    assert isinstance(report, Report)
    assert len(report.checks) >= 1
    assert all(isinstance(check, CheckResult) for check in report.checks)


def test_main_exit_codes(corpus_dir, tmp_path, capsys):
    corpus = [os.path.join(corpus_dir, name) for name in CORPUS]
    assert main(["validate", *corpus]) == 0
    assert "== validate ==" in capsys.readouterr().out

    wrong = tmp_path / "wrong.cat"
    wrong.write_text("scenario wrong {\n    sig S: set;\n    apply complete_preorder S;\n    expect consistent;\n}\n")
    assert main(["--format", "structured", "universe", "scenario", "wrong", str(wrong)]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["checks"][0]["verdict"] == "fail"
    assert payload["checks"][0]["witness"]

    assert main(["validate", str(tmp_path / "missing.cat")]) == 2
    broken = tmp_path / "broken.cat"
    broken.write_text("category A {\n    objects: a;\n    mor f: a -> b;\n}\n")
    assert main(["validate", str(broken)]) == 2


@pytest.mark.parametrize("name", CORPUS)
def test_structured_validate_matches_golden(read_corpus, name):
    golden = read_corpus(name.replace(".cat", ".json"))
    report = run_command(Command("validate"), parse_spec(read_corpus(name)))
    assert emit_report(report, "structured") + "\n" == golden


def test_global_flags_after_the_subcommand(corpus_dir, capsys):
    path = os.path.join(corpus_dir, "walking_arrow.cat")
    assert main(["validate", "--format", "structured", path]) == 0
    with open(os.path.join(corpus_dir, "walking_arrow.json"), encoding="utf-8") as f:
        assert capsys.readouterr().out == f.read()

    chain3 = os.path.join(corpus_dir, "chain3.cat")
    assert main(["check", "complete-preorder", "--bound", "2", chain3]) == 0
    assert "complete-preorder Chain3" in capsys.readouterr().out
    assert main(["--format", "structured", "check", "complete-preorder", "--timings", chain3]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "timing_ms" in payload["checks"][0]

    args = build_parser().parse_args(["--bound", "2", "construct", "limit", "--shape-bound", "3", "--name", "X"])
    assert (args.bound, args.shape_bound, args.format) == (2, 3, "text")


TWISTED = """
category Z2 {
    objects: o;
    mor a: o -> o;
    comp a a = id_o;
}

functor Id: Z2 -> Z2 {
    obj o -> o;
    mor a -> a;
}

nattrans Flip: Id => Id {
    at o: a;
}

nattrans Stay: Id => Id {
    at o: id_o;
}
"""


def test_explicit_unit_and_counit():
    spec = parse_spec(TWISTED)
    report = run_command(Command("check", "adjunction", name="Id", with_="Id", unit="Flip", counit="Flip"), spec)
    assert report.exit_code == 0, failures(report)
    unique = next(check for check in report.checks if check.name == "right adjoint unique")
    assert unique.details == {"adjunctions": 2, "right_adjoints": 1}


def test_triangle_failure_is_reported(tmp_path, capsys):
    spec = parse_spec(TWISTED)
    report = run_command(Command("check", "adjunction", name="Id", with_="Id", unit="Flip", counit="Stay"), spec)
    assert [check.name for check in failures(report)] == ["adjunction Id -| Id"]
    assert "Triangle" in report.checks[0].witness
    assert len(report.checks) == 1

    path = tmp_path / "twisted.cat"
    path.write_text(TWISTED)
    argv = ["check", "adjunction", "--name", "Id", "--with", "Id", "--unit", "Flip", "--counit", "Stay", str(path)]
    assert main(argv) == 1
    assert "witness for adjunction Id -| Id" in capsys.readouterr().out
