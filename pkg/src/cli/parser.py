"""
Reader and printer for the line-oriented spec file format.

    category C { objects: a, b; mor f: a -> b; }
    functor F: C -> D { obj a -> x; mor f -> g; }
    nattrans N: F => G { at a: h; }
    set A { elements: p, q; }
    fn u: A -> B { p -> r; q -> r; }
    diagram X: C { obj a = A; mor f = u; }
    scenario s { sig S: set rigid; require S.hom+1 <= S.obj; apply complete_preorder S; expect inconsistent; }

Identities are implicit (named id_<object>) and every composite of two
non-identity arrows must be given by a `comp g f = h;` row (g after f).
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from src.category.catalog import category_from_composites
from src.category.core import FinCat, Functor, NatTrans
from src.errors import IllTypedDeclaration, ParseError, UnresolvedName
from src.finset.diagrams import Diagram
from src.finset.sets import FinFn, FinSetObj, identity_fn
from src.universes.context import SIGNATURES, THEOREMS
from src.universes.scenarios import LevelRef, ScenarioDecl
from src.universes.solver import SET

logger = logging.getLogger(__name__)

_TOKENS = re.compile(r"""
    (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<op>->|=>|<=|[<=+{}:;,])
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_'.]*)
  | (?P<bad>.)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in _TOKENS.finditer(text):
        group = match.lastgroup
        col = match.start() - line_start + 1
        if group == "newline":
            line, line_start = line + 1, match.end()
        elif group == "bad":
            raise ParseError(line, col, "a name, number or punctuation", match.group())
        elif group == "op":
            tokens.append(Token(match.group(), match.group(), line, col))
        elif group in ("int", "name"):
            tokens.append(Token(group, match.group(), line, col))
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


@dataclass(frozen=True)
class CategoryDecl:
    name: str
    objects: Tuple[str, ...]
    counted: bool
    arrows: Tuple[Tuple[str, str, str], ...]
    composites: Tuple[Tuple[str, str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    dom: str
    cod: str
    on_objects: Tuple[Tuple[str, str], ...]
    on_arrows: Tuple[Tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class NatTransDecl:
    name: str
    source: str
    target: str
    components: Tuple[Tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SetDecl:
    name: str
    elements: Tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FnDecl:
    name: str
    dom: str
    cod: str
    table: Tuple[Tuple[str, str], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DiagramDecl:
    name: str
    shape: str
    on_objects: Tuple[Tuple[str, str], ...]
    on_arrows: Tuple[Tuple[str, str], ...]
    line: int = field(default=0, compare=False)


Declaration = Union[CategoryDecl, FunctorDecl, NatTransDecl, SetDecl, FnDecl, DiagramDecl, ScenarioDecl]

_KIND_OF = {
    CategoryDecl: "category",
    FunctorDecl: "functor",
    NatTransDecl: "nattrans",
    SetDecl: "set",
    FnDecl: "fn",
    DiagramDecl: "diagram",
    ScenarioDecl: "scenario",
}


@dataclass(frozen=True)
class SpecFile:
    declarations: Tuple[Declaration, ...]
    built: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def kind_of(self, name: str) -> str:
        for decl in self.declarations:
            if decl.name == name:
                return _KIND_OF[type(decl)]
        raise UnresolvedName(name)

    def get(self, name: str, kind: Optional[str] = None) -> Any:
        found = self.kind_of(name)
        if kind is not None and found != kind:
            raise IllTypedDeclaration(f"{name} is a {found}, not a {kind}")
        return self.built[name]

    def names(self, kind: str) -> List[str]:
        return [decl.name for decl in self.declarations if _KIND_OF[type(decl)] == kind]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, expected: str):
        token = self.current
        raise ParseError(token.line, token.col, expected, token.text or "end of file")

    def accept(self, text: str) -> bool:
        if self.current.text == text and self.current.kind != "eof":
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text or token.kind == "eof":
            self._fail(repr(text))
        self.pos += 1
        return token

    def word(self, what: str = "a name") -> str:
        token = self.current
        if token.kind not in ("name", "int"):
            self._fail(what)
        self.pos += 1
        return token.text

    def integer(self) -> int:
        token = self.current
        if token.kind != "int":
            self._fail("a number")
        self.pos += 1
        return int(token.text)

    def words(self) -> Tuple[str, ...]:
        """Comma separated names up to ';' (possibly none)."""
        items = []
        if self.current.text != ";":
            items.append(self.word())
            while self.accept(","):
                items.append(self.word())
        return tuple(items)

    def parse(self) -> Tuple[Declaration, ...]:
        declarations = []
        while self.current.kind != "eof":
            keyword = self.current.text
            handler = getattr(self, f"_parse_{keyword}", None) if keyword in _KEYWORDS else None
            if handler is None:
                self._fail("a declaration (" + ", ".join(_KEYWORDS) + ")")
            line = self.current.line
            self.pos += 1
            declarations.append(handler(line))
        return tuple(declarations)

    def _block(self) -> Iterator[str]:
        self.expect("{")
        while not self.accept("}"):
            if self.current.kind == "eof":
                self._fail("'}'")
            yield self.word("a statement")

    def _parse_category(self, line: int) -> CategoryDecl:
        name = self.word()
        objects, counted = (), False
        arrows, composites = [], []
        for stmt in self._block():
            if stmt == "objects":
                self.expect(":")
                if self.current.kind == "int" and self.tokens[self.pos + 1].text == ";":
                    objects, counted = tuple(str(x) for x in range(self.integer())), True
                else:
                    objects, counted = self.words(), False
            elif stmt == "mor":
                arrow = self.word()
                self.expect(":")
                a = self.word()
                self.expect("->")
                arrows.append((arrow, a, self.word()))
            elif stmt == "comp":
                g, f = self.word(), self.word()
                self.expect("=")
                composites.append((g, f, self.word()))
            else:
                self.pos -= 1
                self._fail("objects, mor or comp")
            self.expect(";")
        return CategoryDecl(name, objects, counted, tuple(arrows), tuple(composites), line)

    def _parse_functor(self, line: int) -> FunctorDecl:
        name = self.word()
        self.expect(":")
        dom = self.word()
        self.expect("->")
        cod = self.word()
        on_objects, on_arrows = [], []
        for stmt in self._block():
            if stmt not in ("obj", "mor"):
                self.pos -= 1
                self._fail("obj or mor")
            x = self.word()
            self.expect("->")
            (on_objects if stmt == "obj" else on_arrows).append((x, self.word()))
            self.expect(";")
        return FunctorDecl(name, dom, cod, tuple(on_objects), tuple(on_arrows), line)

    def _parse_nattrans(self, line: int) -> NatTransDecl:
        name = self.word()
        self.expect(":")
        source = self.word()
        self.expect("=>")
        target = self.word()
        components = []
        for stmt in self._block():
            if stmt != "at":
                self.pos -= 1
                self._fail("at")
            x = self.word()
            self.expect(":")
            components.append((x, self.word()))
            self.expect(";")
        return NatTransDecl(name, source, target, tuple(components), line)

    def _parse_set(self, line: int) -> SetDecl:
        name = self.word()
        elements: Tuple[str, ...] = ()
        for stmt in self._block():
            if stmt != "elements":
                self.pos -= 1
                self._fail("elements")
            self.expect(":")
            elements = self.words()
            self.expect(";")
        return SetDecl(name, elements, line)

    def _parse_fn(self, line: int) -> FnDecl:
        name = self.word()
        self.expect(":")
        dom = self.word()
        self.expect("->")
        cod = self.word()
        table = []
        for x in self._block():
            self.expect("->")
            table.append((x, self.word()))
            self.expect(";")
        return FnDecl(name, dom, cod, tuple(table), line)

    def _parse_diagram(self, line: int) -> DiagramDecl:
        name = self.word()
        self.expect(":")
        shape = self.word()
        on_objects, on_arrows = [], []
        for stmt in self._block():
            if stmt not in ("obj", "mor"):
                self.pos -= 1
                self._fail("obj or mor")
            x = self.word()
            self.expect("=")
            (on_objects if stmt == "obj" else on_arrows).append((x, self.word()))
            self.expect(";")
        return DiagramDecl(name, shape, tuple(on_objects), tuple(on_arrows), line)

    def _level_ref(self) -> LevelRef:
        target = self.word("a level such as Set or X.obj")
        offset = self.integer() if self.accept("+") else 0
        return LevelRef(target, offset)

    def _parse_scenario(self, line: int) -> ScenarioDecl:
        name = self.word()
        signatures, relations, steps = [], [], []
        expect: Optional[bool] = None
        for stmt in self._block():
            if stmt == "sig":
                instance = self.word()
                self.expect(":")
                kind = self.word("a signature kind")
                signatures.append((instance, kind, self.accept("rigid")))
            elif stmt == "require":
                lhs = self._level_ref()
                relation = self.current.text
                if relation not in ("<=", "<", "="):
                    self._fail("<=, < or =")
                self.pos += 1
                relations.append((lhs, relation, self._level_ref()))
            elif stmt == "apply":
                theorem = self.word("a theorem")
                args = [self.word()]
                while self.current.text != ";":
                    args.append(self.word())
                steps.append((theorem, tuple(args)))
            elif stmt == "expect":
                verdict = self.word("consistent or inconsistent")
                if verdict not in ("consistent", "inconsistent"):
                    self.pos -= 1
                    self._fail("consistent or inconsistent")
                expect = verdict == "consistent"
            else:
                self.pos -= 1
                self._fail("sig, require, apply or expect")
            self.expect(";")
        return ScenarioDecl(name, tuple(signatures), tuple(relations), tuple(steps), expect)


_KEYWORDS = ("category", "functor", "nattrans", "set", "fn", "diagram", "scenario")


def _index(names, name: str, line: int) -> int:
    try:
        return names.index(name)
    except ValueError:
        raise UnresolvedName(name, line) from None


def _build_category(decl: CategoryDecl) -> FinCat:
    objects = list(decl.objects)
    if len(set(objects)) != len(objects):
        raise IllTypedDeclaration(f"{decl.name}: duplicate object names")
    arrows = [(name, _index(objects, a, decl.line), _index(objects, b, decl.line)) for name, a, b in decl.arrows]
    names = [f"id_{x}" for x in objects] + [name for name, _, _ in arrows]
    if len(set(names)) != len(names):
        raise IllTypedDeclaration(f"{decl.name}: duplicate arrow names")
    src = list(range(len(objects))) + [a for _, a, _ in arrows]
    dst = list(range(len(objects))) + [b for _, _, b in arrows]
    n = len(objects)

    composites: Dict[Tuple[str, str], str] = {}
    for g, f, h in decl.composites:
        gi, fi, hi = (_index(names, x, decl.line) for x in (g, f, h))
        if dst[fi] != src[gi]:
            raise IllTypedDeclaration(f"{decl.name}: comp {g} {f}: {f} ends at {objects[dst[fi]]} but {g} starts at {objects[src[gi]]}")
        if src[hi] != src[fi] or dst[hi] != dst[gi]:
            raise IllTypedDeclaration(f"{decl.name}: comp {g} {f} = {h}: {h} has the wrong endpoints")
        if gi < n or fi < n:
            if hi != (fi if gi < n else gi):
                raise IllTypedDeclaration(f"{decl.name}: comp {g} {f} contradicts the identity law")
            continue
        if composites.get((g, f), h) != h:
            raise IllTypedDeclaration(f"{decl.name}: comp {g} {f} is given twice")
        composites[(g, f)] = h

    for g, a, _ in arrows:
        for f, _, b in arrows:
            if b == a and (g, f) not in composites:
                raise IllTypedDeclaration(f"{decl.name}: missing composition row comp {g} {f}")
    return category_from_composites(objects, arrows, composites)


def _build_functor(decl: FunctorDecl, C: FinCat, D: FinCat) -> Functor:
    given = dict(decl.on_objects)
    if len(given) != len(decl.on_objects):
        raise IllTypedDeclaration(f"{decl.name}: an object is mapped twice")
    omap = []
    for x in C.obj_names:
        if x not in given:
            raise IllTypedDeclaration(f"{decl.name}: object {x} is not mapped")
        omap.append(_index(list(D.obj_names), given[x], decl.line))
    for x in given:
        _index(list(C.obj_names), x, decl.line)

    arrows = dict(decl.on_arrows)
    if len(arrows) != len(decl.on_arrows):
        raise IllTypedDeclaration(f"{decl.name}: an arrow is mapped twice")
    for f in arrows:
        _index(list(C.mor_names), f, decl.line)
    mmap = []
    for f in C.morphisms:
        name = C.mor_names[f]
        if name in arrows:
            mmap.append(_index(list(D.mor_names), arrows[name], decl.line))
        elif C.is_identity(f):
            mmap.append(D.identity[omap[C.src[f]]])
        else:
            raise IllTypedDeclaration(f"{decl.name}: arrow {name} is not mapped")
    return Functor(C, D, omap, mmap)


def _build_nattrans(decl: NatTransDecl, F: Functor, G: Functor) -> NatTrans:
    if F.dom != G.dom or F.cod != G.cod:
        raise IllTypedDeclaration(f"{decl.name}: {decl.source} and {decl.target} are not parallel")
    given = dict(decl.components)
    components = []
    for x in F.dom.obj_names:
        if x not in given:
            raise IllTypedDeclaration(f"{decl.name}: no component at {x}")
        components.append(_index(list(F.cod.mor_names), given[x], decl.line))
    for x in given:
        _index(list(F.dom.obj_names), x, decl.line)
    return NatTrans(F, G, components)


def _build_fn(decl: FnDecl, A: FinSetObj, B: FinSetObj) -> FinFn:
    given = dict(decl.table)
    if len(given) != len(decl.table):
        raise IllTypedDeclaration(f"{decl.name}: an element is mapped twice")
    table = []
    for x in A.elements:
        if x not in given:
            raise IllTypedDeclaration(f"{decl.name}: element {x} is not mapped")
        table.append(_index(list(B.elements), given[x], decl.line))
    for x in given:
        _index(list(A.elements), x, decl.line)
    return FinFn(A, B, table)


def _build_diagram(decl: DiagramDecl, C: FinCat, lookup) -> Diagram:
    given = dict(decl.on_objects)
    sets = []
    for x in C.obj_names:
        if x not in given:
            raise IllTypedDeclaration(f"{decl.name}: object {x} has no set")
        sets.append(lookup(given[x], "set", decl.line))
    arrows = dict(decl.on_arrows)
    for f in arrows:
        _index(list(C.mor_names), f, decl.line)
    fns = []
    for f in C.morphisms:
        name = C.mor_names[f]
        if name in arrows:
            fns.append(lookup(arrows[name], "fn", decl.line))
        elif C.is_identity(f):
            fns.append(identity_fn(sets[C.src[f]]))
        else:
            raise IllTypedDeclaration(f"{decl.name}: arrow {name} has no function")
    return Diagram(C, sets, fns)


def _check_scenario(decl: ScenarioDecl) -> ScenarioDecl:
    declared = set()
    for instance, kind, _ in decl.signatures:
        if kind not in SIGNATURES:
            raise IllTypedDeclaration(f"{decl.name}: unknown signature kind {kind}")
        declared.add(instance)
    for lhs, _, rhs in decl.relations:
        for ref in (lhs, rhs):
            owner, _, part = ref.target.rpartition(".")
            if ref.target != SET and (owner not in declared or part not in ("obj", "hom")):
                raise UnresolvedName(ref.target)
    for theorem, args in decl.steps:
        if theorem not in THEOREMS:
            raise IllTypedDeclaration(f"{decl.name}: unknown theorem {theorem}")
        for arg in args:
            if arg not in declared:
                raise UnresolvedName(arg)
    return decl


def _build(declarations: Tuple[Declaration, ...]) -> Dict[str, Any]:
    built: Dict[str, Any] = {}
    kinds: Dict[str, str] = {}

    def lookup(name: str, kind: str, line: int):
        if name not in built:
            raise UnresolvedName(name, line)
        if kinds[name] != kind:
            raise IllTypedDeclaration(f"{name} is a {kinds[name]}, expected a {kind}")
        return built[name]

    for decl in declarations:
        if decl.name in built:
            raise IllTypedDeclaration(f"{decl.name} is declared twice")
        line = getattr(decl, "line", 0)
        if isinstance(decl, CategoryDecl):
            value = _build_category(decl)
        elif isinstance(decl, FunctorDecl):
            value = _build_functor(decl, lookup(decl.dom, "category", line), lookup(decl.cod, "category", line))
        elif isinstance(decl, NatTransDecl):
            value = _build_nattrans(decl, lookup(decl.source, "functor", line), lookup(decl.target, "functor", line))
        elif isinstance(decl, SetDecl):
            if len(set(decl.elements)) != len(decl.elements):
                raise IllTypedDeclaration(f"{decl.name}: duplicate elements")
            value = FinSetObj(decl.elements)
        elif isinstance(decl, FnDecl):
            value = _build_fn(decl, lookup(decl.dom, "set", line), lookup(decl.cod, "set", line))
        elif isinstance(decl, DiagramDecl):
            value = _build_diagram(decl, lookup(decl.shape, "category", line), lookup)
        else:
            value = _check_scenario(decl)
        built[decl.name] = value
        kinds[decl.name] = _KIND_OF[type(decl)]
    return built


def parse_spec(text: str) -> SpecFile:
    declarations = _Parser(text).parse()
    spec = SpecFile(declarations, _build(declarations))
    logger.debug(f"Parsed {len(declarations)} declarations")
    return spec


def _format(decl: Declaration) -> List[str]:
    if isinstance(decl, CategoryDecl):
        objects = str(len(decl.objects)) if decl.counted else ", ".join(decl.objects)
        body = [f"objects: {objects};"]
        body += [f"mor {f}: {a} -> {b};" for f, a, b in decl.arrows]
        body += [f"comp {g} {f} = {h};" for g, f, h in decl.composites]
        head = f"category {decl.name}"
    elif isinstance(decl, FunctorDecl):
        body = [f"obj {x} -> {y};" for x, y in decl.on_objects]
        body += [f"mor {f} -> {g};" for f, g in decl.on_arrows]
        head = f"functor {decl.name}: {decl.dom} -> {decl.cod}"
    elif isinstance(decl, NatTransDecl):
        body = [f"at {x}: {f};" for x, f in decl.components]
        head = f"nattrans {decl.name}: {decl.source} => {decl.target}"
    elif isinstance(decl, SetDecl):
        body = [f"elements: {', '.join(decl.elements)};"]
        head = f"set {decl.name}"
    elif isinstance(decl, FnDecl):
        body = [f"{x} -> {y};" for x, y in decl.table]
        head = f"fn {decl.name}: {decl.dom} -> {decl.cod}"
    elif isinstance(decl, DiagramDecl):
        body = [f"obj {x} = {A};" for x, A in decl.on_objects]
        body += [f"mor {f} = {u};" for f, u in decl.on_arrows]
        head = f"diagram {decl.name}: {decl.shape}"
    else:
        body = [f"sig {s}: {kind}{' rigid' if rigid else ''};" for s, kind, rigid in decl.signatures]
        body += [f"require {lhs} {rel} {rhs};" for lhs, rel, rhs in decl.relations]
        body += [f"apply {theorem} {' '.join(args)};" for theorem, args in decl.steps]
        if decl.expect is not None:
            body.append(f"expect {'consistent' if decl.expect else 'inconsistent'};")
        head = f"scenario {decl.name}"
    return [head + " {"] + ["    " + line for line in body] + ["}"]


def format_spec(spec: SpecFile) -> str:
    """Canonical text of a spec file; parse_spec(format_spec(s)) == s."""
    blocks = ["\n".join(_format(decl)) for decl in spec.declarations]
    return "\n\n".join(blocks) + "\n"
