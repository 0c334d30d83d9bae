"""Possible worlds covered by true/false-style member sets, and experiment tallies.

In a crisp world the member sets partition the outcome space, so every
experiment is counted once and the normalized counts are probabilities that
sum to 1.  In a fuzzy world member sets may overlap; an experiment landing in
an overlap is counted in every set it lands in, so the normalized counts
(empirical membership degrees) may sum to more than 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArgumentError, CoverageError, EmptyLog, PartitionError
from .fuzzcore import CrispSet
from .numfmt import render

CRISP = "crisp"
FUZZY = "fuzzy"


@dataclass(frozen=True)
class WorldModel:
    name: str
    kind: str
    member_sets: tuple[str, ...]
    outcome_space: CrispSet
    # outcome label -> names of the member sets it lands in
    landing: Mapping[str, frozenset]

    def lands_in(self, outcome: str) -> frozenset:
        return self.landing[outcome]

    def overlapping(self, outcome: str) -> bool:
        return len(self.landing[outcome]) > 1


def build_world(name: str, kind: str, member_sets: Sequence[str], outcome_space: CrispSet,
                membership: Mapping[str, Iterable[str]]) -> WorldModel:
    """Validate and build a world.

    ``membership`` maps each member-set name to the outcome labels it
    contains.  A crisp world must place every outcome in exactly one set; a
    fuzzy world must place every outcome in at least one.
    """
    if kind not in (CRISP, FUZZY):
        raise ArgumentError(f"world kind must be {CRISP!r} or {FUZZY!r}, got {kind!r}")
    member_sets = tuple(member_sets)
    if len(set(member_sets)) != len(member_sets):
        raise ArgumentError(f"world {name!r} repeats a member set name")
    labels = [e.label for e in outcome_space]
    known = set(labels)
    for s in membership:
        if s not in member_sets:
            raise ArgumentError(f"world {name!r}: undeclared member set {s!r}")
    landing = {lab: set() for lab in labels}
    for s in member_sets:
        for lab in membership.get(s, ()):
            if lab not in known:
                raise ArgumentError(f"world {name!r}: set {s!r} lists unknown outcome {lab!r}")
            landing[lab].add(s)
    for lab in labels:
        n = len(landing[lab])
        if kind == CRISP and n != 1:
            what = "no member set" if n == 0 else f"{n} member sets"
            raise PartitionError(f"crisp world {name!r}: outcome {lab!r} is in {what}")
        if kind == FUZZY and n == 0:
            raise CoverageError(f"fuzzy world {name!r}: outcome {lab!r} lands in no member set")
    return WorldModel(name, kind, member_sets, outcome_space,
                      {lab: frozenset(v) for lab, v in landing.items()})


@dataclass(frozen=True)
class OutcomeLog:
    world: WorldModel
    draws: tuple[str, ...]

    def __post_init__(self):
        draws = tuple(self.draws)
        object.__setattr__(self, "draws", draws)
        for i, d in enumerate(draws, start=1):
            if d not in self.world.landing:
                raise ArgumentError(f"draw {i}: {d!r} is not an outcome of world {self.world.name!r}")

    @property
    def N(self) -> int:
        return len(self.draws)


def read_log(text: str, world: WorldModel) -> OutcomeLog:
    """One outcome label per line; blank lines are skipped."""
    return OutcomeLog(world, tuple(line.strip() for line in text.splitlines() if line.strip()))


@dataclass(frozen=True)
class TallyResult:
    kind: str
    raw_counts: Mapping[str, int]
    N: int
    normalized: Mapping[str, float]
    exact: Mapping[str, Fraction]

    @property
    def exact_sum(self) -> Fraction:
        return sum(self.exact.values(), Fraction(0))

    @property
    def normalized_sum(self) -> float:
        return float(self.exact_sum)


def tally(world: WorldModel, log: OutcomeLog) -> TallyResult:
    if log.world is not world and log.world != world:
        raise ArgumentError("log belongs to a different world")
    if log.N == 0:
        raise EmptyLog(f"no draws recorded for world {world.name!r}")
    counts = dict.fromkeys(world.member_sets, 0)
    for d in log.draws:
        for s in world.landing[d]:
            counts[s] += 1
    exact = {s: Fraction(c, log.N) for s, c in counts.items()}
    return TallyResult(world.kind, counts, log.N, {s: float(q) for s, q in exact.items()}, exact)


@dataclass(frozen=True)
class SumLawVerdict:
    kind: str
    total: float
    relation: str  # "<", "=" or ">" relative to 1
    passed: bool

    def describe(self) -> str:
        text = f"sum {render(self.total)} {self.relation} 1"
        if self.kind == CRISP:
            text += " (pass)" if self.passed else " (FAIL)"
        return text


CRISP_SUM_TOLERANCE = 1e-12


def sum_law_check(t: TallyResult, kind: str | None = None) -> SumLawVerdict:
    """Crisp tallies must sum to 1; fuzzy tallies are only classified."""
    kind = kind or t.kind
    total = t.exact_sum
    relation = "<" if total < 1 else ">" if total > 1 else "="
    if kind == CRISP:
        passed = abs(t.normalized_sum - 1.0) <= CRISP_SUM_TOLERANCE
    else:
        passed = True
    return SumLawVerdict(kind, float(total), relation, passed)
