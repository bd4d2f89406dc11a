"""Exception hierarchy for the planning engine.

Parser errors carry 1-based line/column positions. Names avoid shadowing
Python builtins (PddlSyntaxError rather than SyntaxError, etc.).
"""

from __future__ import annotations


class XaiplanError(Exception):
    """Base class for all engine errors."""


# -- parsing ----------------------------------------------------------------

class PddlSyntaxError(XaiplanError):
    """Malformed PDDL input. Carries position and the expected token."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        suffix = f" at line {line}, column {column}" if line else ""
        if expected:
            suffix += f" (expected {expected})"
        super().__init__(message + suffix)


class UnsupportedRequirementError(XaiplanError):
    """PDDL feature outside the supported :strips/:typing/:action-costs subset."""

    def __init__(self, feature: str):
        self.feature = feature
        super().__init__(f"unsupported PDDL feature: {feature}")


class PddlTypeError(XaiplanError):
    """Ill-typed object, undeclared predicate/type, or arity mismatch."""


class UnknownDomainError(XaiplanError):
    """Problem file names a different domain than the one it is bound to."""


# -- grounding / validation -------------------------------------------------

class ConflictingEffectsError(XaiplanError):
    """A ground action adds and deletes the same fact."""


class UnknownActionError(XaiplanError):
    """An action label does not name any action of the task."""


class InvalidPlanError(XaiplanError):
    """Operation requires a valid plan but the given one fails validation."""


# -- recognition ------------------------------------------------------------

class NoHypothesesError(XaiplanError):
    """Posterior requested over an empty hypothesis set."""


class NoComplyingPlanError(XaiplanError):
    """No plan achieves the hypothesis goal while explaining the observations."""


# -- reconciliation ---------------------------------------------------------

class IncompatibleModelsError(XaiplanError):
    """Model diff requires identical action label sets and identical goals."""


class PlanNotOptimalError(XaiplanError):
    """Explanation requested for a plan that is not optimal in the source model."""


class BudgetExceededError(XaiplanError):
    """Explanation search hit the planner-call cap."""

    def __init__(self, calls: int, budget: int):
        self.calls = calls
        self.budget = budget
        super().__init__(f"planner-call budget exceeded ({calls} > {budget})")


# -- documents --------------------------------------------------------------

class MismatchedLinksError(XaiplanError):
    """Causal links passed to a document builder were not extracted from the plan."""


class ArityMismatchError(XaiplanError):
    """Plan graphs do not correspond one-to-one with the plans of a result."""


class EmptySessionError(XaiplanError):
    """Timeline sampling over a session with no snapshots."""


# -- environment config / service -------------------------------------------

class XmlSyntaxError(XaiplanError):
    """Environment configuration is not well-formed XML."""


class ConfigSchemaError(XaiplanError):
    """Environment configuration misses required elements or fails validation."""


class ConfigDomainError(XaiplanError):
    """PDDL embedded in or referenced by an environment configuration is invalid."""


class UnknownSessionError(XaiplanError):
    """Session id does not name a live session."""
