"""Recursive-descent parser for the supported PDDL subset.

Supported requirements: ``:strips``, ``:typing``, ``:action-costs``. The only
numeric fluent is ``(total-cost)``, which may be increased by a non-negative
integer in action effects and minimized in the problem metric; everything
else numeric is rejected. Keywords are case-insensitive; identifiers are
lowercased. The full grammar ships in ``docs/pddl-grammar.ebnf``.

Anything outside the subset raises :class:`UnsupportedRequirementError`
(negative preconditions, conditional effects, quantifiers, derived
predicates, ...); malformed input raises :class:`PddlSyntaxError` with a
1-based line/column position and the expected token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    PddlSyntaxError,
    PddlTypeError,
    UnknownDomainError,
    UnsupportedRequirementError,
)
from .model import (
    OBJECT_TYPE,
    ActionSchema,
    DomainModel,
    Literal,
    ProblemInstance,
    fact_label,
)

SUPPORTED_REQUIREMENTS = {":strips", ":typing", ":action-costs"}

# Requirements we recognise but refuse, for precise error messages.
_KNOWN_UNSUPPORTED = {
    ":adl", ":negative-preconditions", ":disjunctive-preconditions",
    ":existential-preconditions", ":universal-preconditions",
    ":quantified-preconditions", ":conditional-effects", ":equality",
    ":numeric-fluents", ":object-fluents", ":durative-actions",
    ":derived-predicates", ":timed-initial-literals", ":preferences",
    ":constraints", ":fluents",
}

LPAREN = "("
RPAREN = ")"
NAME = "name"
EOF = "eof"

_NAME_RE = re.compile(r"[?:]?[a-zA-Z0-9_=<>+*/.-]+")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    """Split PDDL text into parens and names; ``;`` comments run to end of line."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == LPAREN or ch == RPAREN:
            tokens.append(Token(ch, ch, line, col))
            col += 1
            i += 1
        else:
            m = _NAME_RE.match(text, i)
            if not m:
                raise PddlSyntaxError(
                    f"unexpected character {ch!r}", line, col, expected="name or paren")
            value = m.group(0).lower()
            tokens.append(Token(NAME, value, line, col))
            col += len(value)
            i = m.end()
    tokens.append(Token(EOF, "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # token plumbing ---------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> Token:
        tok = self.advance()
        if tok.kind != kind or (value is not None and tok.value != value):
            raise PddlSyntaxError(
                f"got {tok.value or tok.kind!r}", tok.line, tok.column,
                expected=value or kind)
        return tok

    def expect_name(self, what: str = "identifier") -> Token:
        tok = self.advance()
        if tok.kind != NAME:
            raise PddlSyntaxError(
                f"got {tok.value or tok.kind!r}", tok.line, tok.column, expected=what)
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def skip_balanced(self):
        """Consume tokens until the already-open form closes."""
        depth = 1
        while depth:
            tok = self.advance()
            if tok.kind == LPAREN:
                depth += 1
            elif tok.kind == RPAREN:
                depth -= 1
            elif tok.kind == EOF:
                raise PddlSyntaxError("unexpected end of input",
                                      tok.line, tok.column, expected=RPAREN)

    # shared constructs --------------------------------------------------------

    def parse_typed_names(self, variables: bool) -> list[tuple[str, str]]:
        """Parse ``n1 n2 - type n3 ...`` until the closing paren; untyped
        names default to `object`. Variables must start with ``?``."""
        out: list[tuple[str, str]] = []
        batch: list[str] = []
        while not self.at(RPAREN):
            tok = self.expect_name()
            if tok.value == "-":
                if not batch:
                    raise PddlSyntaxError("dangling type separator",
                                          tok.line, tok.column, expected="name")
                typ = self.expect_name("type name")
                out.extend((n, typ.value) for n in batch)
                batch = []
                continue
            if variables and not tok.value.startswith("?"):
                raise PddlSyntaxError(f"got {tok.value!r}", tok.line, tok.column,
                                      expected="?variable")
            if not variables and tok.value.startswith("?"):
                raise PddlSyntaxError(f"got {tok.value!r}", tok.line, tok.column,
                                      expected="object name")
            batch.append(tok.value)
        out.extend((n, OBJECT_TYPE) for n in batch)
        return out

    def parse_atom(self) -> tuple[Literal, Token]:
        open_tok = self.expect(LPAREN)
        head = self.expect_name("predicate name")
        args = []
        while not self.at(RPAREN):
            args.append(self.expect_name("argument").value)
        self.expect(RPAREN)
        return Literal(head.value, tuple(args)), open_tok


def _check_literal(dm_predicates: dict[str, tuple[str, ...]], lit: Literal, where: str):
    if lit.predicate not in dm_predicates:
        raise PddlTypeError(f"{where}: undeclared predicate {lit.predicate!r}")
    arity = len(dm_predicates[lit.predicate])
    if len(lit.args) != arity:
        raise PddlTypeError(
            f"{where}: predicate {lit.predicate!r} takes {arity} arguments, "
            f"got {len(lit.args)}")


def check_ground_fact(dm: DomainModel, typed_objects: dict[str, str],
                      lit: Literal, where: str) -> str:
    """Type-check a ground atom against a domain and return its label."""
    _check_literal(dict(dm.predicates), lit, where)
    for arg, param_type in zip(lit.args, dm.predicates[lit.predicate]):
        if arg.startswith("?"):
            raise PddlTypeError(f"{where}: variable {arg} in ground fact")
        if arg not in typed_objects:
            raise PddlTypeError(f"{where}: undeclared object {arg!r}")
        if not dm.is_subtype(typed_objects[arg], param_type):
            raise PddlTypeError(
                f"{where}: object {arg!r} of type {typed_objects[arg]!r} does not fit "
                f"parameter type {param_type!r} of {lit.predicate!r}")
    return fact_label(lit.predicate, lit.args)


class _DomainParser(_Parser):
    def __init__(self, text: str):
        super().__init__(text)
        self.types: dict[str, str] = {OBJECT_TYPE: OBJECT_TYPE}
        self.predicates: dict[str, tuple[str, ...]] = {}
        self.schemas: list[ActionSchema] = []
        self.name = ""

    def parse(self) -> DomainModel:
        self.expect(LPAREN)
        self.expect(NAME, "define")
        self.expect(LPAREN)
        self.expect(NAME, "domain")
        self.name = self.expect_name("domain name").value
        self.expect(RPAREN)
        while self.at(LPAREN):
            self.parse_section()
        self.expect(RPAREN)
        self.expect(EOF)
        schema_names = [s.name for s in self.schemas]
        if len(schema_names) != len(set(schema_names)):
            raise PddlTypeError(f"duplicate action name in domain {self.name!r}")
        return DomainModel(
            name=self.name,
            types=dict(self.types),
            predicates=dict(self.predicates),
            schemas=tuple(self.schemas),
        )

    def parse_section(self):
        self.expect(LPAREN)
        tok = self.expect_name("domain section")
        section = tok.value
        if section == ":requirements":
            self.parse_requirements()
        elif section == ":types":
            self.parse_types()
        elif section == ":predicates":
            self.parse_predicates()
        elif section == ":functions":
            self.parse_functions()
        elif section == ":action":
            self.parse_action()
        else:
            raise UnsupportedRequirementError(f"domain section {section}")
        self.expect(RPAREN)

    def parse_requirements(self):
        while not self.at(RPAREN):
            req = self.expect_name("requirement").value
            if req in SUPPORTED_REQUIREMENTS:
                continue
            if req in _KNOWN_UNSUPPORTED or req.startswith(":"):
                raise UnsupportedRequirementError(f"requirement {req}")
            tok = self.peek()
            raise PddlSyntaxError(f"got {req!r}", tok.line, tok.column,
                                  expected=":requirement")

    def parse_types(self):
        for typ, parent in self.parse_typed_names(variables=False):
            if parent not in self.types and parent != typ:
                # forward-declare the parent; it may be refined later
                self.types.setdefault(parent, OBJECT_TYPE)
            prev = self.types.get(typ)
            if prev is not None and prev not in (OBJECT_TYPE, parent):
                raise PddlTypeError(
                    f"type {typ!r} declared with two parents ({prev!r}, {parent!r})")
            self.types[typ] = parent

    def parse_predicates(self):
        while self.at(LPAREN):
            self.expect(LPAREN)
            name = self.expect_name("predicate name").value
            params = self.parse_typed_names(variables=True)
            for _, typ in params:
                if typ not in self.types:
                    raise PddlTypeError(
                        f"predicate {name!r}: undeclared type {typ!r}")
            if name in self.predicates:
                raise PddlTypeError(f"duplicate predicate {name!r}")
            self.predicates[name] = tuple(t for _, t in params)
            self.expect(RPAREN)

    def parse_functions(self):
        while self.at(LPAREN):
            self.expect(LPAREN)
            tok = self.expect_name("function name")
            if tok.value != "total-cost":
                raise UnsupportedRequirementError(
                    f"numeric fluent ({tok.value}) -- only (total-cost) is supported")
            self.expect(RPAREN)
            # optional "- number" type tail
            if self.at(NAME, "-"):
                self.advance()
                self.expect(NAME, "number")

    def parse_action(self):
        name = self.expect_name("action name").value
        self.expect(NAME, ":parameters")
        self.expect(LPAREN)
        params = self.parse_typed_names(variables=True)
        self.expect(RPAREN)
        seen_vars = set()
        for var, typ in params:
            if var in seen_vars:
                raise PddlTypeError(f"action {name!r}: duplicate parameter {var}")
            seen_vars.add(var)
            if typ not in self.types:
                raise PddlTypeError(f"action {name!r}: undeclared type {typ!r}")

        precondition: list[Literal] = []
        adds: list[Literal] = []
        deletes: list[Literal] = []
        cost = None
        while not self.at(RPAREN):
            key = self.expect_name("action keyword").value
            if key == ":precondition":
                precondition = self.parse_condition(name)
            elif key == ":effect":
                adds, deletes, cost = self.parse_effect(name)
            else:
                raise UnsupportedRequirementError(f"action keyword {key}")

        scope = {v for v, _ in params}
        for lit in (*precondition, *adds, *deletes):
            _check_literal(self.predicates, lit, f"action {name!r}")
            for a in lit.args:
                if a.startswith("?") and a not in scope:
                    raise PddlTypeError(f"action {name!r}: unbound variable {a}")
        self.schemas.append(ActionSchema(
            name=name,
            parameters=tuple(params),
            precondition=frozenset(precondition),
            add=frozenset(adds),
            delete=frozenset(deletes),
            cost=1 if cost is None else cost,
        ))

    def parse_condition(self, action: str) -> list[Literal]:
        """Conjunction of positive atoms: a single atom or an (and ...) form."""
        out: list[Literal] = []
        self.expect(LPAREN)
        tok = self.peek()
        if tok.kind == NAME and tok.value == "and":
            self.advance()
            while self.at(LPAREN):
                out.append(self.parse_inner_atom(action, context="precondition"))
            self.expect(RPAREN)
        elif tok.kind == RPAREN:  # "()" empty precondition
            self.advance()
        else:
            out.append(self.finish_atom(action, context="precondition"))
        return out

    def parse_inner_atom(self, action: str, context: str) -> Literal:
        self.expect(LPAREN)
        return self.finish_atom(action, context)

    def finish_atom(self, action: str, context: str) -> Literal:
        """Parse an atom whose opening paren is already consumed."""
        head = self.expect_name("predicate name")
        if head.value in ("not", "or", "imply", "forall", "exists", "when"):
            raise UnsupportedRequirementError(
                f"{head.value!r} in {context} of action {action!r}")
        if head.value in ("increase", "decrease", "assign", "=", "<", ">"):
            raise UnsupportedRequirementError(
                f"numeric expression in {context} of action {action!r}")
        args = []
        while not self.at(RPAREN):
            args.append(self.expect_name("argument").value)
        self.expect(RPAREN)
        return Literal(head.value, tuple(args))

    def parse_effect(self, action: str) -> tuple[list[Literal], list[Literal], int | None]:
        adds: list[Literal] = []
        deletes: list[Literal] = []
        cost: int | None = None
        self.expect(LPAREN)
        tok = self.peek()
        if tok.kind == NAME and tok.value == "and":
            self.advance()
            while self.at(LPAREN):
                cost = self.parse_effect_item(action, adds, deletes, cost)
            self.expect(RPAREN)
        elif tok.kind == RPAREN:
            self.advance()
        else:
            cost = self.finish_effect_item(action, adds, deletes, cost)
        return adds, deletes, cost

    def parse_effect_item(self, action, adds, deletes, cost) -> int | None:
        self.expect(LPAREN)
        return self.finish_effect_item(action, adds, deletes, cost)

    def finish_effect_item(self, action, adds, deletes, cost) -> int | None:
        head = self.expect_name("effect")
        if head.value == "not":
            self.expect(LPAREN)
            deletes.append(self.finish_atom(action, context="delete effect"))
            self.expect(RPAREN)
            return cost
        if head.value == "increase":
            if cost is not None:
                raise PddlTypeError(f"action {action!r}: multiple cost effects")
            self.expect(LPAREN)
            self.expect(NAME, "total-cost")
            self.expect(RPAREN)
            num = self.expect_name("non-negative integer")
            if not num.value.isdigit():
                raise PddlSyntaxError(f"got {num.value!r}", num.line, num.column,
                                      expected="non-negative integer")
            self.expect(RPAREN)
            return int(num.value)
        if head.value in ("when", "forall"):
            raise UnsupportedRequirementError(
                f"conditional/quantified effect in action {action!r}")
        args = []
        while not self.at(RPAREN):
            args.append(self.expect_name("argument").value)
        self.expect(RPAREN)
        adds.append(Literal(head.value, tuple(args)))
        return cost


class _ProblemParser(_Parser):
    def __init__(self, text: str, dm: DomainModel):
        super().__init__(text)
        self.dm = dm

    def parse(self) -> ProblemInstance:
        self.expect(LPAREN)
        self.expect(NAME, "define")
        self.expect(LPAREN)
        self.expect(NAME, "problem")
        name = self.expect_name("problem name").value
        self.expect(RPAREN)

        domain_name = None
        objects: list[tuple[str, str]] = []
        init: set[str] = set()
        goal: set[str] = set()
        while self.at(LPAREN):
            self.expect(LPAREN)
            section = self.expect_name("problem section").value
            if section == ":domain":
                domain_name = self.expect_name("domain name").value
                self.expect(RPAREN)
            elif section == ":requirements":
                while not self.at(RPAREN):
                    req = self.expect_name("requirement").value
                    if req not in SUPPORTED_REQUIREMENTS:
                        raise UnsupportedRequirementError(f"requirement {req}")
                self.expect(RPAREN)
            elif section == ":objects":
                objects = self.parse_typed_names(variables=False)
                self.expect(RPAREN)
            elif section == ":init":
                init = self.parse_init()
            elif section == ":goal":
                goal = self.parse_goal()
            elif section == ":metric":
                self.expect(NAME, "minimize")
                self.expect(LPAREN)
                self.expect(NAME, "total-cost")
                self.expect(RPAREN)
                self.expect(RPAREN)
            else:
                raise UnsupportedRequirementError(f"problem section {section}")
        self.expect(RPAREN)
        self.expect(EOF)

        if domain_name is None:
            raise PddlSyntaxError("problem declares no (:domain ...)", 1, 1,
                                  expected=":domain")
        if domain_name != self.dm.name:
            raise UnknownDomainError(
                f"problem {name!r} references domain {domain_name!r}, "
                f"but was parsed against {self.dm.name!r}")

        for obj, typ in objects:
            if typ not in self.dm.types:
                raise PddlTypeError(f"object {obj!r} has undeclared type {typ!r}")
        names = [o for o, _ in objects]
        if len(names) != len(set(names)):
            raise PddlTypeError(f"duplicate object declaration in problem {name!r}")

        typed = dict(objects)
        init_labels = {self.check_ground(lit, typed, "init") for lit in init}
        goal_labels = {self.check_ground(lit, typed, "goal") for lit in goal}
        return ProblemInstance(
            name=name,
            domain_name=domain_name,
            objects=tuple(objects),
            init=frozenset(init_labels),
            goal=frozenset(goal_labels),
        )

    def parse_init(self) -> set[Literal]:
        out: set[Literal] = set()
        while self.at(LPAREN):
            self.expect(LPAREN)
            head = self.expect_name("fact")
            if head.value == "=":
                # (= (total-cost) 0) initialisation -- accepted and ignored
                self.expect(LPAREN)
                self.expect(NAME, "total-cost")
                self.expect(RPAREN)
                self.expect(NAME, "0")
                self.expect(RPAREN)
                continue
            if head.value == "not":
                raise UnsupportedRequirementError("negative init literal")
            args = []
            while not self.at(RPAREN):
                args.append(self.expect_name("argument").value)
            self.expect(RPAREN)
            out.add(Literal(head.value, tuple(args)))
        self.expect(RPAREN)
        return out

    def parse_goal(self) -> set[Literal]:
        out: set[Literal] = set()
        self.expect(LPAREN)
        tok = self.peek()
        if tok.kind == NAME and tok.value == "and":
            self.advance()
            while self.at(LPAREN):
                self.expect(LPAREN)
                out.add(self.finish_goal_atom())
            self.expect(RPAREN)
        elif tok.kind == RPAREN:
            self.advance()
        else:
            out.add(self.finish_goal_atom())
        self.expect(RPAREN)
        return out

    def finish_goal_atom(self) -> Literal:
        head = self.expect_name("predicate name")
        if head.value in ("not", "or", "imply", "forall", "exists"):
            raise UnsupportedRequirementError(f"{head.value!r} in goal")
        args = []
        while not self.at(RPAREN):
            args.append(self.expect_name("argument").value)
        self.expect(RPAREN)
        return Literal(head.value, tuple(args))

    def check_ground(self, lit: Literal, typed: dict[str, str], where: str) -> str:
        return check_ground_fact(self.dm, typed, lit, where)


def parse_domain(text: str) -> DomainModel:
    """Parse UTF-8 PDDL domain text into a DomainModel."""
    return _DomainParser(text).parse()


def parse_problem(text: str, dm: DomainModel) -> ProblemInstance:
    """Parse UTF-8 PDDL problem text and type-check it against `dm`."""
    return _ProblemParser(text, dm).parse()
