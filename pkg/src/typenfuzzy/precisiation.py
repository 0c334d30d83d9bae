"""Uncertainty before and after an event is realized, and precisiation.

A measurable realization (a temperature reading) has an exact position in
the world set.  A non-measurable one (comfort) does not; a membership
function over the measurable outcomes turns the concept into a subset of the
world, crisp when the function is a step and fuzzy when it is graded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, SpecError
from .fuzzcore import Element, MembershipFn, Type1FuzzySet
from .numfmt import render
from .worlds import WorldModel

BEFORE = "before"
AFTER = "after"

PROBABILISTIC = "probabilistic"
FUZZY = "fuzzy"
EITHER = "either"

WHICH_REALIZATION = "which realization of the world set will occur"
WHERE_IN_WORLD = "where the realization is positioned in the world set"

# (measurable, timing) -> (folds, strata, recommended logic)
DECISION_TABLE = {
    (True, BEFORE): (1, (WHICH_REALIZATION,), PROBABILISTIC),
    (False, BEFORE): (2, (WHICH_REALIZATION, WHERE_IN_WORLD), FUZZY),
    (True, AFTER): (0, (), EITHER),
    (False, AFTER): (1, (WHERE_IN_WORLD,), FUZZY),
}


@dataclass(frozen=True)
class EventSpec:
    name: str
    measurable: bool
    timing: str
    world: WorldModel
    realization: str | None = None

    def __post_init__(self):
        if self.timing not in (BEFORE, AFTER):
            raise SpecError(f"event {self.name!r}: timing must be {BEFORE!r} or {AFTER!r}")
        if not isinstance(self.measurable, bool):
            raise SpecError(f"event {self.name!r}: measurable must be a boolean")
        if self.measurable and self.timing == AFTER and self.realization is None:
            raise SpecError(f"event {self.name!r}: a measured realization must be given after the event")
        if self.realization is not None and self.realization not in self.world.landing:
            raise SpecError(f"event {self.name!r}: realization {self.realization!r} "
                            f"is not an outcome of world {self.world.name!r}")


@dataclass(frozen=True)
class UncertaintyReport:
    event: str
    measurable: bool
    timing: str
    folds: int
    strata: tuple[str, ...]
    recommended_logic: str

    def to_text(self) -> str:
        lines = [f"event: {self.event}",
                 f"measurable: {'true' if self.measurable else 'false'}",
                 f"timing: {self.timing}",
                 f"folds: {self.folds}"]
        lines += [f"stratum.{i}: {s}" for i, s in enumerate(self.strata, start=1)]
        lines.append(f"recommended_logic: {self.recommended_logic}")
        return "\n".join(lines) + "\n"


def classify_event(e: EventSpec) -> UncertaintyReport:
    folds, strata, logic = DECISION_TABLE[(e.measurable, e.timing)]
    return UncertaintyReport(e.name, e.measurable, e.timing, folds, strata, logic)


@dataclass(frozen=True)
class PrecisiatedConcept:
    concept: str
    subset: Type1FuzzySet
    source_mf: MembershipFn

    @property
    def crisp(self) -> bool:
        return all(d == 1.0 for _, d in self.subset.entries)

    @property
    def recommended_logic(self) -> str:
        # a crisp subset is handled identically by probability functions
        return EITHER if self.crisp else FUZZY

    def rows(self):
        return [(e.label, e.value, d) for e, d in self.subset.entries]

    def to_text(self) -> str:
        lines = ["element,value,degree"]
        for label, value, d in self.rows():
            lines.append(f"{label},{'' if value is None else render(value)},{render(d)}")
        return "\n".join(lines) + "\n"


def precisiate(concept: str, mf: MembershipFn, world: WorldModel,
               include_zero: bool = False) -> PrecisiatedConcept:
    """Map ``concept`` to the subset of ``world``'s outcomes where ``mf`` is positive."""
    if mf.level != 1:
        raise SpecError(f"precisiation needs a level-1 membership function, got level {mf.level}")
    entries = []
    for outcome in world.outcome_space:
        try:
            d = mf(outcome)
        except DomainError as exc:
            raise DomainError(f"cannot precisiate {concept!r} at outcome {outcome.label!r}: {exc}") from exc
        if d > 0.0 or include_zero:
            entries.append((outcome, d))
    return PrecisiatedConcept(concept, Type1FuzzySet(concept, tuple(entries)), mf)


def locate_realization(e: EventSpec, mf: MembershipFn | None = None) -> Element | PrecisiatedConcept:
    """Where a realized event sits in its world.

    Measurable: the exact outcome.  Non-measurable: the precisiated subset of
    possible positions together with their degrees.
    """
    if e.timing != AFTER:
        raise SpecError(f"event {e.name!r} has not been realized yet")
    if e.measurable:
        return e.world.outcome_space.get(e.realization)
    if mf is None:
        raise SpecError(f"event {e.name!r} is not measurable; a membership function is required")
    return precisiate(e.name, mf, e.world)
