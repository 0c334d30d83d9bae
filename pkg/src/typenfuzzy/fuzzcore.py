"""Finite-support crisp, type-1 and type-n fuzzy sets.

A type-n set is stored flat: each :class:`Entry` is one support point, an
element together with its path of ``n - 1`` lower-level degrees, carrying the
top (level-n) degree.  The nested tuple ``((x, mu1), mu2), ..., mun)`` thus
becomes ``Entry(x, (mu1, ..., mu_{n-1}), mun)``.

Membership functions are evaluated level by level through a
:class:`MembershipStack`: at every level ``l < n`` a family of level-l
functions proposes the degrees a support point may branch into, and a single
level-n function assigns the top degree.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Sequence, Union

from .errors import (ArgumentError, DomainError, InconsistentStack, LevelError,
                     NotInSupport, ShapeError)


def is_degree(d) -> bool:
    return (not isinstance(d, bool) and isinstance(d, (int, float))
            and math.isfinite(d) and 0.0 <= d <= 1.0)


@dataclass(frozen=True)
class Element:
    label: str
    value: float | None = None
    unit: str = ""


@dataclass(frozen=True)
class CrispSet:
    name: str
    elements: tuple[Element, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        seen = set()
        for e in self.elements:
            if e.label in seen:
                raise ArgumentError(f"duplicate element label {e.label!r} in crisp set {self.name!r}")
            seen.add(e.label)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def get(self, label: str) -> Element | None:
        for e in self.elements:
            if e.label == label:
                return e
        return None


@dataclass(frozen=True)
class Entry:
    element: Element
    path: tuple[float, ...]
    top: float

    @property
    def point(self) -> tuple[str, tuple[float, ...]]:
        return self.element.label, self.path


@dataclass(frozen=True)
class Type1FuzzySet:
    name: str
    entries: tuple[tuple[Element, float], ...] = ()

    def __post_init__(self):
        entries = tuple((e, d) for e, d in self.entries)
        labels = [e.label for e, _ in entries]
        if len(set(labels)) != len(labels):
            raise ArgumentError(f"type-1 set {self.name!r} has an element with two degrees")
        for e, d in entries:
            if not is_degree(d):
                raise ArgumentError(f"degree {d!r} of {e.label!r} outside [0, 1]")
        object.__setattr__(self, "entries", entries)

    def degree(self, label: str) -> float:
        for e, d in self.entries:
            if e.label == label:
                return d
        raise NotInSupport(label)

    def to_typen(self) -> TypeNFuzzySet:
        return TypeNFuzzySet(self.name, 1, tuple(e for e, _ in self.entries),
                             tuple(Entry(e, (), d) for e, d in self.entries))


@dataclass(frozen=True)
class TypeNFuzzySet:
    """A type-n fuzzy set with finite support.

    ``elements`` is the underlying crisp set and fixes element order; entries
    are kept sorted by (element position, degree path).  Construction does
    not enforce the invariants, so malformed sets can be inspected with
    :func:`validate`.
    """

    name: str
    level: int
    elements: tuple[Element, ...]
    entries: tuple[Entry, ...]

    def __post_init__(self):
        if isinstance(self.level, bool) or not isinstance(self.level, int) or self.level < 1:
            raise ArgumentError(f"level must be an integer >= 1, got {self.level!r}")
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        pos = {}
        for i, e in enumerate(elements):
            pos.setdefault(e.label, i)
        unknown = len(elements)
        entries = tuple(sorted(
            (Entry(en.element, tuple(en.path), en.top) for en in self.entries),
            key=lambda en: (pos.get(en.element.label, unknown), en.element.label, en.path)))
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_entries(cls, name: str, level: int, entries: Iterable[Entry]) -> TypeNFuzzySet:
        """Build a set whose element order is the order of first appearance."""
        entries = list(entries)
        elements, seen = [], set()
        for en in entries:
            if en.element.label not in seen:
                seen.add(en.element.label)
                elements.append(en.element)
        return cls(name, level, tuple(elements), tuple(entries))

    def index(self, x: Element | str) -> int:
        """1-based position of ``x`` in the element order."""
        label = x.label if isinstance(x, Element) else x
        for i, e in enumerate(self.elements, start=1):
            if e.label == label:
                return i
        raise NotInSupport(f"{label!r} is not an element of {self.name!r}")

    def entries_for(self, x: Element | str) -> tuple[Entry, ...]:
        label = x.label if isinstance(x, Element) else x
        return tuple(en for en in self.entries if en.element.label == label)

    def support(self) -> list[tuple[str, tuple[float, ...]]]:
        """Support points with the top degree stripped: ``(label, path)``."""
        return [en.point for en in self.entries]

    def degrees(self) -> Iterable[float]:
        for en in self.entries:
            yield from en.path
            yield en.top

    def to_type1(self) -> Type1FuzzySet:
        if self.level != 1:
            raise LevelError(f"{self.name!r} is type-{self.level}, not type-1")
        return Type1FuzzySet(self.name, tuple((en.element, en.top) for en in self.entries))


# --- membership functions -------------------------------------------------

class _Unit:
    """The unit function: every support point has degree 1."""

    needs_value = False

    def __call__(self, *args):
        return 1.0

    def __repr__(self):
        return "UNIT"


UNIT = _Unit()

Domain = Union[tuple, frozenset, None]


@dataclass(frozen=True)
class MembershipFn:
    """Level-n membership function.

    Backed either by ``shape``, a callable taking the element's numeric value
    followed by the ``n - 1`` path degrees, or by ``table``, mapping labels
    (level 1) or ``(label, path)`` pairs (level >= 2) to degrees.  ``domain``
    is an optional ``(lo, hi)`` value range or a frozenset of labels.
    """

    level: int
    shape: object = None
    table: Mapping | None = None
    domain: Domain = None
    name: str = ""

    def __post_init__(self):
        if isinstance(self.level, bool) or not isinstance(self.level, int) or self.level < 1:
            raise ArgumentError(f"membership function level must be >= 1, got {self.level!r}")
        if (self.shape is None) == (self.table is None):
            raise ArgumentError("a membership function needs exactly one of shape or table")
        if self.table is not None:
            object.__setattr__(self, "table", MappingProxyType(dict(self.table)))

    def in_domain(self, x: Element) -> bool:
        if self.domain is None:
            return True
        if isinstance(self.domain, frozenset):
            return x.label in self.domain
        lo, hi = self.domain
        return x.value is not None and lo <= x.value <= hi

    def __call__(self, x: Element, path: Sequence[float] = ()) -> float:
        path = tuple(path)
        if len(path) != self.level - 1:
            raise ArgumentError(f"level-{self.level} function {self.name!r} needs a path of "
                                f"{self.level - 1} degrees, got {len(path)}")
        if not self.in_domain(x):
            raise DomainError(f"{x.label!r} is outside the domain of {self.name or 'function'}")
        if self.table is not None:
            key = x.label if self.level == 1 else (x.label, path)
            try:
                d = self.table[key]
            except KeyError:
                raise DomainError(f"{key!r} is not tabulated in {self.name or 'function'}") from None
        elif getattr(self.shape, "needs_value", True):
            if x.value is None:
                raise DomainError(f"{x.label!r} has no numeric value for {self.name or 'shape'}")
            d = self.shape(x.value, *path)
        else:
            d = self.shape(x.value, *path)
        if not is_degree(d):
            raise ShapeError(f"{self.name or 'function'} produced {d!r} at {x.label!r}{list(path)}")
        return float(d)


def unit_fn(level: int, name: str = "unit") -> MembershipFn:
    return MembershipFn(level, shape=UNIT, name=name)


@dataclass(frozen=True)
class MembershipStack:
    """Membership functions for a type-n set.

    ``families[l - 1]`` holds the level-l functions whose values at a support
    point are the level-l degrees it branches into; ``top`` is the single
    level-n function.
    """

    families: tuple[tuple[MembershipFn, ...], ...]
    top: MembershipFn

    def __post_init__(self):
        families = tuple(tuple(f) for f in self.families)
        object.__setattr__(self, "families", families)
        for lvl, fam in enumerate(families, start=1):
            if not fam:
                raise LevelError(f"level {lvl} of the stack has no functions")
            for f in fam:
                if f.level != lvl:
                    raise LevelError(f"function {f.name!r} of level {f.level} placed at level {lvl}")
        if self.top.level != len(families) + 1:
            raise LevelError(f"top function has level {self.top.level}, "
                             f"stack has {len(families) + 1} levels")

    @property
    def level(self) -> int:
        return len(self.families) + 1


def unit_stack(n: int) -> MembershipStack:
    if n < 1:
        raise ArgumentError(f"level must be >= 1, got {n}")
    return MembershipStack(tuple((unit_fn(l),) for l in range(1, n)), unit_fn(n))


def eval_type1(f: MembershipFn, x: Element) -> float:
    if f.level != 1:
        raise ArgumentError(f"eval_type1 needs a level-1 function, got level {f.level}")
    return f(x)


def _branches(family, x, prefix):
    out = set()
    for f in family:
        try:
            out.add(f(x, prefix))
        except DomainError:
            continue
    return sorted(out)


def eval_typen(stack: MembershipStack, x: Element, name: str = "") -> TypeNFuzzySet:
    """All entries of the stack's set at element ``x``.

    Family members undefined at a point simply contribute no branch; a level
    producing no branch at all, or a top function rejecting a produced path,
    is an :class:`InconsistentStack`.
    """
    prefixes = [()]
    for lvl, family in enumerate(stack.families, start=1):
        grown = []
        for p in prefixes:
            degs = _branches(family, x, p)
            if not degs:
                if lvl == 1:
                    raise DomainError(f"no level-1 function is defined at {x.label!r}")
                raise InconsistentStack(f"level {lvl} yields no degree at {x.label!r}{list(p)}")
            grown.extend(p + (d,) for d in degs)
        prefixes = grown
    entries = []
    for p in prefixes:
        try:
            top = stack.top(x, p)
        except DomainError as exc:
            if stack.level == 1:
                raise
            raise InconsistentStack(f"top function rejects {x.label!r}{list(p)}: {exc}") from exc
        entries.append(Entry(x, p, top))
    return TypeNFuzzySet(name, stack.level, (x,), tuple(entries))


def materialize(stack: MembershipStack, elements: Iterable[Element], name: str = "") -> TypeNFuzzySet:
    elements = tuple(elements)
    entries = []
    for x in elements:
        entries.extend(eval_typen(stack, x).entries)
    return TypeNFuzzySet(name, stack.level, elements, tuple(entries))


def promote_crisp(c: CrispSet, n: int) -> TypeNFuzzySet:
    """Crisp set as a type-n set whose every membership function is the unit function."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ArgumentError(f"level must be an integer >= 1, got {n!r}")
    ones = (1.0,) * (n - 1)
    return TypeNFuzzySet(c.name, n, c.elements, tuple(Entry(e, ones, 1.0) for e in c.elements))


def _prefixes(entries, length):
    """Distinct length-``length`` path prefixes in canonical order."""
    return list(dict.fromkeys(en.path[:length] for en in entries))


def _by_element(F: TypeNFuzzySet):
    groups: dict[str, list[Entry]] = {}
    for en in F.entries:
        groups.setdefault(en.element.label, []).append(en)
    return groups


def domain_typen(F: TypeNFuzzySet) -> list[TypeNFuzzySet]:
    """Split the domain of a type-n set into level-(n-1) constituent sets.

    For each element the distinct level-(n-1) support paths are numbered
    ``j = 1, 2, ...`` in canonical order; constituent ``j`` holds the j-th
    path of every element that has at least ``j`` of them, with the last
    path degree promoted to top degree.
    """
    if F.level < 2:
        raise LevelError(f"{F.name!r} is type-{F.level}; its domain is a crisp set")
    per_element = []
    for x in F.elements:
        paths = _prefixes(F.entries_for(x), F.level - 1)
        if paths:
            per_element.append((x, paths))
    count = max((len(p) for _, p in per_element), default=0)
    sets = []
    for j in range(count):
        members = [(x, paths[j]) for x, paths in per_element if len(paths) > j]
        sets.append(TypeNFuzzySet(f"{F.name}[{j + 1}]", F.level - 1,
                                  tuple(x for x, _ in members),
                                  tuple(Entry(x, p[:-1], p[-1]) for x, p in members)))
    return sets


@dataclass(frozen=True)
class BranchProfile:
    """Branching counts ``m[(label, level)]`` and per-level champions.

    ``champions[level]`` is ``(k, m_k)`` with ``k`` the 1-based position of
    the element with most distinct level-``level`` prefixes; ties go to the
    smallest position.
    """

    counts: Mapping = field(default_factory=dict)
    champions: Mapping = field(default_factory=dict)


def branching_profile(F: TypeNFuzzySet) -> BranchProfile:
    counts = {}
    champions = {}
    groups = _by_element(F)
    for lvl in range(1, F.level):
        best = None
        for i, x in enumerate(F.elements, start=1):
            if x.label not in groups:
                continue
            m = len(_prefixes(groups[x.label], lvl))
            counts[(x.label, lvl)] = m
            if best is None or m > best[1]:
                best = (i, m)
        if best is not None:
            champions[lvl] = best
    return BranchProfile(counts, champions)


def _require_level(F, level, op):
    if F.level != level:
        raise LevelError(f"{op} needs a type-{level} set, {F.name!r} is type-{F.level}")


def vertical_slice(F: TypeNFuzzySet, x: Element | str) -> list[tuple[float, float]]:
    """``(primary, secondary)`` pairs of a type-2 set at ``x``, by ascending primary."""
    _require_level(F, 2, "vertical_slice")
    entries = F.entries_for(x)
    if not entries:
        label = x.label if isinstance(x, Element) else x
        raise NotInSupport(f"{label!r} is not in the support of {F.name!r}")
    return sorted((en.path[0], en.top) for en in entries)


@dataclass(frozen=True)
class Stratum:
    level: int
    degrees: tuple[float, ...]
    count: int
    quantifies: str


def uncertainty_ladder(F: TypeNFuzzySet, x: Element | str) -> list[Stratum]:
    """The ``n`` strata of uncertainty about how ``x`` belongs to ``F``.

    Stratum ``l < n`` lists the distinct level-l degrees of ``x``, i.e. its
    membership in the level-l constituent sets; stratum ``n`` lists the top
    degrees and always counts the single set ``F``.
    """
    entries = F.entries_for(x)
    if not entries:
        label = x.label if isinstance(x, Element) else x
        raise NotInSupport(f"{label!r} is not in the support of {F.name!r}")
    ladder = []
    for lvl in range(1, F.level):
        degs = tuple(sorted({en.path[lvl - 1] for en in entries}))
        ladder.append(Stratum(lvl, degs, len(degs), f"level-{lvl} constituent sets"))
    tops = tuple(sorted({en.top for en in entries}))
    ladder.append(Stratum(F.level, tops, 1, F.name or "the set"))
    return ladder


@dataclass(frozen=True)
class Finding:
    code: str
    entry: int | None
    message: str


def validate(F: TypeNFuzzySet) -> list[Finding]:
    """Invariant violations of ``F``; empty when the set is well formed.

    ``entry`` is the 0-based position in the canonical entry order.
    """
    findings = []
    labels = [e.label for e in F.elements]
    for lab in sorted({l for l in labels if labels.count(l) > 1}):
        findings.append(Finding("DUPLICATE_ELEMENT", None, f"element label {lab!r} repeated"))
    known = set(labels)
    seen = {}
    for i, en in enumerate(F.entries):
        where = f"{en.element.label!r}{list(en.path)}"
        if en.element.label not in known:
            findings.append(Finding("UNKNOWN_ELEMENT", i, f"{where}: element not in the set's elements"))
        if len(en.path) != F.level - 1:
            findings.append(Finding("PATH_LENGTH", i, f"{where}: path has {len(en.path)} degrees, "
                                                      f"type-{F.level} needs {F.level - 1}"))
        for d in en.path + (en.top,):
            if not is_degree(d):
                findings.append(Finding("DEGREE_RANGE", i, f"{where}: degree {d!r} outside [0, 1]"))
        key = en.point
        if key in seen:
            findings.append(Finding("DUPLICATE_ENTRY", i,
                                    f"{where}: support point already given at entry {seen[key]}"))
        else:
            seen[key] = i
    return findings
