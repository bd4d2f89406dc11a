"""XML environment configurations.

An environment bundles a domain, a shared object/init base, goal hypotheses
with priors, and a recognition temperature, so non-experts can stand up a
new recognizable space without touching code:

    <environment name="meeting-room">
      <domain file="collective-decision.pddl"/>   <!-- or inline PDDL text -->
      <objects>chair - person opt-a opt-b - option</objects>
      <init>(present chair)</init>
      <beta>1.0</beta>
      <hypothesis id="decide-a" prior="0.5"><goal>(decided opt-a)</goal></hypothesis>
      ...
    </environment>

Loading validates the XML shape, parses the embedded or referenced domain,
and grounds one task per hypothesis in memory.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    ConfigDomainError,
    ConfigSchemaError,
    PddlSyntaxError,
    PddlTypeError,
    UnsupportedRequirementError,
    XmlSyntaxError,
)
from .model import OBJECT_TYPE, Literal, ProblemInstance
from .pddl import LPAREN, RPAREN, _Parser, check_ground_fact, parse_domain
from .recognition import GoalHypothesis, GoalHypothesisSet, RecognitionConfig

PRIOR_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EnvironmentConfig:
    name: str
    domain_text: str
    hypothesis_set: GoalHypothesisSet
    recognition: RecognitionConfig

    @property
    def hypotheses(self):
        return self.hypothesis_set.hypotheses


class _FragmentParser(_Parser):
    """Parses the PDDL-style fragments that appear inside config elements."""

    def typed_names(self) -> list[tuple[str, str]]:
        out: list[tuple[str, str]] = []
        batch: list[str] = []
        while not self.at("eof"):
            tok = self.expect_name()
            if tok.value == "-":
                typ = self.expect_name("type name")
                out.extend((n, typ.value) for n in batch)
                batch = []
            else:
                batch.append(tok.value)
        out.extend((n, OBJECT_TYPE) for n in batch)
        return out

    def fact_list(self) -> list[Literal]:
        out = []
        while self.at(LPAREN):
            self.expect(LPAREN)
            head = self.expect_name("predicate name")
            args = []
            while not self.at(RPAREN):
                args.append(self.expect_name("argument").value)
            self.expect(RPAREN)
            out.append(Literal(head.value, tuple(args)))
        tok = self.peek()
        if tok.kind != "eof":
            raise PddlSyntaxError(f"got {tok.value!r}", tok.line, tok.column,
                                  expected="( or end of fragment")
        return out


def _parse_objects(text: str) -> tuple[tuple[str, str], ...]:
    return tuple(_FragmentParser(text).typed_names())


def _parse_facts(text: str, domain, typed: dict[str, str], where: str) -> frozenset[str]:
    atoms = _FragmentParser(text).fact_list()
    return frozenset(check_ground_fact(domain, typed, lit, where) for lit in atoms)


def load_environment_config(xml_text: str, base_dir: Path | str | None = None) -> EnvironmentConfig:
    """Parse and validate an environment configuration.

    `base_dir` resolves relative ``<domain file=.../>`` references; it
    defaults to the current directory. Raises XmlSyntaxError for malformed
    XML, ConfigSchemaError for structural problems (missing elements, bad
    priors), and ConfigDomainError when the PDDL content is unusable.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise XmlSyntaxError(f"malformed XML: {exc}") from exc
    if root.tag != "environment":
        raise ConfigSchemaError(f"root element must be <environment>, got <{root.tag}>")
    name = root.get("name")
    if not name:
        raise ConfigSchemaError("<environment> requires a name attribute")

    domain_el = root.find("domain")
    if domain_el is None:
        raise ConfigSchemaError("missing <domain> element")
    file_ref = domain_el.get("file")
    if file_ref:
        path = Path(base_dir or ".") / file_ref
        try:
            domain_text = path.read_text()
        except OSError as exc:
            raise ConfigDomainError(f"cannot read domain file {path}: {exc}") from exc
    else:
        domain_text = domain_el.text or ""
        if not domain_text.strip():
            raise ConfigSchemaError("<domain> must carry a file reference or inline PDDL")

    try:
        domain = parse_domain(domain_text)
    except (PddlSyntaxError, PddlTypeError, UnsupportedRequirementError) as exc:
        raise ConfigDomainError(f"domain does not parse: {exc}") from exc

    objects_el = root.find("objects")
    init_el = root.find("init")
    try:
        objects = _parse_objects(objects_el.text or "") if objects_el is not None else ()
        typed = dict(objects)
        for obj, typ in objects:
            if typ not in domain.types:
                raise ConfigSchemaError(f"object {obj!r} has undeclared type {typ!r}")
        init = (_parse_facts(init_el.text or "", domain, typed, "init")
                if init_el is not None else frozenset())
    except (PddlSyntaxError, PddlTypeError) as exc:
        raise ConfigSchemaError(f"bad objects/init fragment: {exc}") from exc

    beta_el = root.find("beta")
    beta = 1.0
    if beta_el is not None:
        try:
            beta = float(beta_el.text or "")
        except ValueError as exc:
            raise ConfigSchemaError(f"bad <beta> value: {beta_el.text!r}") from exc
        if beta <= 0:
            raise ConfigSchemaError("<beta> must be positive")

    hypotheses = []
    for el in root.findall("hypothesis"):
        hid = el.get("id")
        if not hid:
            raise ConfigSchemaError("<hypothesis> requires an id attribute")
        prior_text = el.get("prior")
        if prior_text is None:
            raise ConfigSchemaError(f"hypothesis {hid!r} misses a prior attribute")
        try:
            prior = float(prior_text)
        except ValueError as exc:
            raise ConfigSchemaError(f"hypothesis {hid!r}: bad prior {prior_text!r}") from exc
        if prior < 0:
            raise ConfigSchemaError(f"hypothesis {hid!r}: negative prior")
        goal_el = el.find("goal")
        if goal_el is None:
            raise ConfigSchemaError(f"hypothesis {hid!r} misses a <goal> element")
        try:
            goal = _parse_facts(goal_el.text or "", domain, typed, f"hypothesis {hid!r}")
        except (PddlSyntaxError, PddlTypeError) as exc:
            raise ConfigSchemaError(f"hypothesis {hid!r}: bad goal fragment: {exc}") from exc
        hypotheses.append(GoalHypothesis(hid, goal, prior))

    if not hypotheses:
        raise ConfigSchemaError("environment declares no hypotheses")
    ids = [h.id for h in hypotheses]
    if len(ids) != len(set(ids)):
        raise ConfigSchemaError("hypothesis ids must be unique")
    total = sum(h.prior for h in hypotheses)
    if abs(total - 1.0) > PRIOR_TOLERANCE:
        raise ConfigSchemaError(f"priors sum to {total}, expected 1")

    base = ProblemInstance(
        name=f"{name}-base",
        domain_name=domain.name,
        objects=objects,
        init=init,
        goal=frozenset(),
    )
    try:
        hypothesis_set = GoalHypothesisSet(
            domain=domain, base=base, hypotheses=tuple(hypotheses))
    except (PddlTypeError, ValueError) as exc:
        raise ConfigSchemaError(f"environment does not ground: {exc}") from exc

    return EnvironmentConfig(
        name=name,
        domain_text=domain_text,
        hypothesis_set=hypothesis_set,
        recognition=RecognitionConfig(beta=beta),
    )
