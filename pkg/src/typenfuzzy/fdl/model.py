"""Semantic layer: resolve a parsed document into runtime objects.

Names are collected in a first pass, so a declaration may refer to one that
appears later in the file.  Every rule violation becomes a
:class:`Diagnostic` pointing at the offending token.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import FuzzError, InvalidShape, SpecError
from ..fuzzcore import (CrispSet, Element, Entry, MembershipFn, MembershipStack, TypeNFuzzySet,
                        materialize, unit_fn, unit_stack, validate)
from ..mfshapes import (ABOVE, BELOW, DEFAULT_GRID_SIZE, IntervalType2Spec, PiecewiseLinear, Step,
                        interval_type2_stack)
from ..numfmt import render
from ..precisiation import AFTER, BEFORE, EventSpec
from ..worlds import CRISP, FUZZY, WorldModel, build_world
from .syntax import Block, Diagnostic, Document, FDLError, ListValue, Number, Text, Word

UNIT_REF = "unit"

_ALLOWED = {
    "range": {"from", "to", "count", "unit"},
    "crisp": {"elements", "values", "unit"},
    "shape": {"kind", "threshold", "sense", "anchors", "lower", "upper", "apex", "grid",
              "unit", "domain"},
    "fuzzy": {"level", "over", "mf", "stack", "entries"},
    "world": {"kind", "outcomes", "sets"},
    "event": {"world", "measurable", "timing", "realization"},
}


@dataclass
class FuzzyDecl:
    name: str
    level: int
    over: CrispSet | None
    stack: MembershipStack | None
    fuzzy_set: TypeNFuzzySet
    unit: str = ""

    def element(self, selector: str) -> Element:
        """Resolve a command-line selector to an element.

        Tries labels first, then numeric values; a number outside the
        declared elements becomes an ad-hoc element when the set is defined
        by membership functions.
        """
        pool = self.over.elements if self.over is not None else self.fuzzy_set.elements
        for e in pool:
            if e.label == selector:
                return e
        try:
            v = float(selector)
        except ValueError:
            raise KeyError(f"{selector!r} is not an element of {self.name!r}") from None
        for e in pool:
            if e.value == v:
                return e
        if self.stack is None or not math.isfinite(v):
            raise KeyError(f"{selector!r} is not an element of {self.name!r}")
        return Element(render(v), v, self.unit)


@dataclass
class Model:
    crisp: dict[str, CrispSet] = field(default_factory=dict)
    ranges: dict[str, tuple[float, float]] = field(default_factory=dict)
    shapes: dict[str, object] = field(default_factory=dict)
    shape_domains: dict[str, tuple[float, float] | None] = field(default_factory=dict)
    fuzzy: dict[str, FuzzyDecl] = field(default_factory=dict)
    worlds: dict[str, WorldModel] = field(default_factory=dict)
    events: dict[str, EventSpec] = field(default_factory=dict)

    def shape_fn(self, name: str) -> MembershipFn:
        s = self.shapes[name]
        if isinstance(s, IntervalType2Spec):
            return MembershipFn(2, shape=s, domain=self.shape_domains.get(name), name=name)
        return MembershipFn(1, shape=s, domain=self.shape_domains.get(name), name=name)


class _Bad(Exception):
    """Abort the current declaration; the diagnostic is already recorded."""


class _Builder:
    def __init__(self, doc: Document):
        self.doc = doc
        self.diags: list[Diagnostic] = []
        self.model = Model()
        self.names = {k: {b.name for b in doc.of_kind(k)} for k in _ALLOWED}
        self._shape_busy: set[str] = set()
        self._attempted: set[tuple[str, str]] = set()

    # diagnostics and field access ----------------------------------------------

    def error(self, node, code, msg):
        line = getattr(node, "name_line", 0) or node.line
        col = getattr(node, "name_col", 0) or node.col
        self.diags.append(Diagnostic("error", line, col, code, msg))

    def fail(self, node, code, msg):
        self.error(node, code, msg)
        raise _Bad

    def need(self, b: Block, key: str):
        f = b.get(key)
        if f is None:
            self.fail(b, "MISSING_FIELD", f"{b.kind} {b.name!r} needs a {key!r} field")
        return f.value

    def number(self, v, what):
        if not isinstance(v, Number):
            self.fail(v, "BAD_VALUE", f"{what} must be a number")
        return v.value

    def integer(self, v, what, minimum):
        x = self.number(v, what)
        if x != int(x) or x < minimum:
            self.fail(v, "BAD_VALUE", f"{what} must be an integer >= {minimum}")
        return int(x)

    def word(self, v, what, choices=None):
        if not isinstance(v, Word):
            self.fail(v, "BAD_VALUE", f"{what} must be a bare word")
        if choices and v.text not in choices:
            self.fail(v, "BAD_VALUE", f"{what} must be one of {', '.join(choices)}; got {v.text!r}")
        return v.text

    def text(self, v, what):
        if not isinstance(v, Text):
            self.fail(v, "BAD_VALUE", f"{what} must be a quoted string")
        return v.text

    def listv(self, v, what):
        if not isinstance(v, ListValue):
            self.fail(v, "BAD_VALUE", f"{what} must be a bracketed list")
        return v.items

    def label(self, v, what="label"):
        if isinstance(v, Number):
            return render(v.value)
        if isinstance(v, (Word, Text)):
            return v.text
        self.fail(v, "BAD_VALUE", f"{what} must be a word, string or number")

    def ref(self, v, kind, what):
        name = self.word(v, what)
        if name not in self.names[kind] and not (kind == "crisp" and name in self.names["range"]):
            self.fail(v, "UNKNOWN_REF", f"{what} refers to undeclared {kind} {name!r}")
        return name

    # declarations ------------------------------------------------------------

    def build(self) -> Model:
        for b in self.doc.blocks:
            for f in b.fields:
                if f.key not in _ALLOWED[b.kind] and not (b.kind == "world" and f.key.startswith("set.")):
                    self.error(f, "UNKNOWN_FIELD", f"{b.kind} declarations have no field {f.key!r}")
        for kind in ("range", "crisp"):
            if kind == "crisp":
                for name in self.names["crisp"] & self.names["range"]:
                    self.error(self.doc.get("crisp", name), "DUPLICATE_NAME",
                               f"{name!r} names both a range and a crisp set")
            for b in self.doc.of_kind(kind):
                self._guard(getattr(self, f"_{kind}"), b)
        for b in self.doc.of_kind("shape"):
            self._shape_named(b.name)
        for kind in ("fuzzy", "world", "event"):
            for b in self.doc.of_kind(kind):
                self._guard(getattr(self, f"_{kind}"), b)
        return self.model

    def _guard(self, fn, b):
        try:
            fn(b)
        except _Bad:
            pass

    def _range(self, b):
        lo = self.number(self.need(b, "from"), "from")
        hi = self.number(self.need(b, "to"), "to")
        count = self.integer(self.need(b, "count"), "count", 1)
        unit = self.text(b.get("unit").value, "unit") if b.get("unit") else ""
        if count == 1:
            values = [lo]
        else:
            if not lo < hi:
                self.fail(b.get("to").value, "BAD_VALUE", "range needs from < to")
            values = [lo + (hi - lo) * k / (count - 1) for k in range(count)]
        labels = [render(v) for v in values]
        if len(set(labels)) != len(labels):
            self.fail(b.get("count").value, "BAD_VALUE", "range too fine: element labels collide")
        self.model.crisp[b.name] = CrispSet(b.name, tuple(Element(l, v, unit) for l, v in zip(labels, values)))
        self.model.ranges[b.name] = (lo, hi)

    def _crisp(self, b):
        items = self.listv(self.need(b, "elements"), "elements")
        labels = [self.label(v) for v in items]
        unit = self.text(b.get("unit").value, "unit") if b.get("unit") else ""
        values = [None] * len(labels)
        if b.get("values"):
            vals = self.listv(b.get("values").value, "values")
            if len(vals) != len(labels):
                self.fail(b.get("values").value, "BAD_VALUE",
                          f"{len(vals)} values given for {len(labels)} elements")
            values = [self.number(v, "value") for v in vals]
        seen = set()
        for lab, node in zip(labels, items):
            if lab in seen:
                self.fail(node, "DUPLICATE_ELEMENT", f"element {lab!r} listed twice in crisp set {b.name!r}")
            seen.add(lab)
        self.model.crisp[b.name] = CrispSet(b.name, tuple(Element(l, v, unit) for l, v in zip(labels, values)))

    def _shape_named(self, name):
        if name in self.model.shapes:
            return self.model.shapes[name]
        b = self.doc.get("shape", name)
        if name in self._shape_busy:
            self.fail(b, "CYCLE", f"shape {name!r} is part of a reference cycle")
        if ("shape", name) in self._attempted:
            return None
        self._attempted.add(("shape", name))
        self._shape_busy.add(name)
        try:
            self._shape(b)
        except _Bad:
            return None
        finally:
            self._shape_busy.discard(name)
        return self.model.shapes[name]

    def _shape(self, b):
        kind = self.word(self.need(b, "kind"), "kind", ("step", "linear", "interval2"))
        unit = self.text(b.get("unit").value, "unit") if b.get("unit") else ""
        domain = None
        if b.get("domain"):
            d = self.listv(b.get("domain").value, "domain")
            if len(d) != 2:
                self.fail(b.get("domain").value, "BAD_VALUE", "domain must be [low, high]")
            domain = (self.number(d[0], "domain bound"), self.number(d[1], "domain bound"))
            if not domain[0] <= domain[1]:
                self.fail(b.get("domain").value, "BAD_VALUE", "domain needs low <= high")
        try:
            if kind == "step":
                threshold = self.number(self.need(b, "threshold"), "threshold")
                sense = self.word(b.get("sense").value, "sense", (BELOW, ABOVE)) if b.get("sense") else BELOW
                shape = Step(threshold, sense, unit)
            elif kind == "linear":
                anchors = []
                for item in self.listv(self.need(b, "anchors"), "anchors"):
                    pair = self.listv(item, "anchor")
                    if len(pair) != 2:
                        self.fail(item, "BAD_VALUE", "an anchor is [input, degree]")
                    anchors.append((self.number(pair[0], "anchor input"), self.number(pair[1], "anchor degree")))
                shape = PiecewiseLinear(tuple(anchors), unit)
            else:
                parts = []
                for key in ("lower", "upper"):
                    node = self.need(b, key)
                    ref = self.ref(node, "shape", key)
                    s = self._shape_named(ref)
                    if s is None:
                        raise _Bad
                    if not isinstance(s, (Step, PiecewiseLinear)):
                        self.fail(node, "BAD_REF", f"{key} must be a step or linear shape")
                    parts.append(s)
                apex = self.number(self.need(b, "apex"), "apex")
                grid = self.integer(b.get("grid").value, "grid", 2) if b.get("grid") else DEFAULT_GRID_SIZE
                shape = IntervalType2Spec(parts[0], parts[1], apex, grid, unit)
        except InvalidShape as exc:
            self.fail(b, "INVALID_SHAPE", str(exc))
        self.model.shapes[b.name] = shape
        self.model.shape_domains[b.name] = domain

    # fuzzy sets --------------------------------------------------------------

    def _over(self, b):
        if b.get("over") is None:
            return None, None
        name = self.ref(b.get("over").value, "crisp", "over")
        if name not in self.model.crisp:
            raise _Bad
        return self.model.crisp[name], self.model.ranges.get(name)

    def _fn(self, node, level, domain):
        """Membership function for stack position ``level`` named by ``node``."""
        name = self.word(node, "membership function")
        if name == UNIT_REF:
            return unit_fn(level)
        in_shapes = name in self.names["shape"]
        in_fuzzy = name in self.names["fuzzy"]
        if in_shapes and in_fuzzy:
            self.fail(node, "AMBIGUOUS_REF", f"{name!r} names both a shape and a fuzzy set")
        if in_shapes:
            s = self.model.shapes.get(name)
            if s is None:
                raise _Bad
            fn_level = 2 if isinstance(s, IntervalType2Spec) else 1
            if fn_level != level:
                self.fail(node, "LEVEL_MISMATCH",
                          f"shape {name!r} is a level-{fn_level} function, used at level {level}")
            return MembershipFn(level, shape=s, domain=self.model.shape_domains.get(name) or domain, name=name)
        if in_fuzzy:
            src = self.doc.get("fuzzy", name)
            if src.get("entries") is None:
                self.fail(node, "BAD_REF", f"fuzzy set {name!r} must be declared by entries to serve as a table")
            decl = self.model.fuzzy.get(name)
            if decl is None:
                self._guard(self._fuzzy, src)
                decl = self.model.fuzzy.get(name)
                if decl is None:
                    raise _Bad
            F = decl.fuzzy_set
            if F.level != level:
                self.fail(node, "LEVEL_MISMATCH", f"fuzzy set {name!r} is type-{F.level}, used at level {level}")
            if level == 1:
                table = {en.element.label: en.top for en in F.entries}
            else:
                table = {(en.element.label, en.path): en.top for en in F.entries}
            return MembershipFn(level, table=table, name=name)
        self.fail(node, "UNKNOWN_REF", f"{name!r} is neither a shape nor a fuzzy set")

    def _fuzzy(self, b):
        if ("fuzzy", b.name) in self._attempted:
            return
        self._attempted.add(("fuzzy", b.name))
        level_node = self.need(b, "level")
        level = self.integer(level_node, "level", 1)
        forms = [k for k in ("mf", "stack", "entries") if b.get(k) is not None]
        if len(forms) != 1:
            self.fail(b, "MISSING_FIELD" if not forms else "CONFLICT",
                      f"fuzzy set {b.name!r} needs exactly one of mf, stack or entries")
        over, rng = self._over(b)
        form = forms[0]
        if form == "entries":
            F = self._entries(b, level, over)
            stack = None
        else:
            if over is None:
                self.fail(b, "MISSING_FIELD", f"fuzzy set {b.name!r} needs 'over' to evaluate its functions")
            stack = self._stack(b, form, level, rng)
            try:
                F = materialize(stack, over.elements, b.name)
            except FuzzError as exc:
                self.fail(b, "EVALUATION", f"cannot evaluate {b.name!r}: {exc}")
        unit = over.elements[0].unit if over is not None and over.elements else ""
        self.model.fuzzy[b.name] = FuzzyDecl(b.name, level, over, stack, F, unit)

    def _stack(self, b, form, level, domain):
        node = b.get(form).value
        if form == "mf":
            name = self.word(node, "mf")
            s = self.model.shapes.get(name) if name in self.names["shape"] else None
            if name == UNIT_REF:
                return unit_stack(level)
            if isinstance(s, IntervalType2Spec):
                if level != 2:
                    self.fail(node, "LEVEL_MISMATCH",
                              f"interval type-2 shape {name!r} defines a type-2 set, declared level is {level}")
                return interval_type2_stack(s, self.model.shape_domains.get(name) or domain, name)
            if level != 1:
                self.fail(node, "LEVEL_MISMATCH",
                          f"'mf = {name}' defines a type-1 set, declared level is {level}; use a stack")
            return MembershipStack((), self._fn(node, 1, domain))
        items = self.listv(node, "stack")
        if len(items) != level:
            self.fail(node, "LEVEL_MISMATCH",
                      f"a type-{level} set needs a stack of {level} levels, got {len(items)}")
        families = []
        for lvl, item in enumerate(items[:-1], start=1):
            refs = item.items if isinstance(item, ListValue) else (item,)
            if not refs:
                self.fail(item, "BAD_VALUE", f"stack level {lvl} is empty")
            families.append(tuple(self._fn(r, lvl, domain) for r in refs))
        if isinstance(items[-1], ListValue):
            self.fail(items[-1], "BAD_VALUE", "the top of a stack is a single function")
        return MembershipStack(tuple(families), self._fn(items[-1], level, domain))

    def _entries(self, b, level, over):
        rows = self.listv(b.get("entries").value, "entries")
        known = {e.label: e for e in over.elements} if over is not None else {}
        entries = []
        for row in rows:
            parts = self.listv(row, "entry")
            if len(parts) != 3:
                self.fail(row, "BAD_VALUE", "an entry is [element, [path degrees], degree]")
            lab = self.label(parts[0], "element")
            path = tuple(self.number(d, "path degree") for d in self.listv(parts[1], "path"))
            top = self.number(parts[2], "degree")
            if len(path) != level - 1:
                self.fail(parts[1], "LEVEL_MISMATCH",
                          f"type-{level} entries need {level - 1} path degrees, got {len(path)}")
            if over is not None and lab not in known:
                self.fail(parts[0], "UNKNOWN_REF", f"{lab!r} is not an element of {over.name!r}")
            element = known.get(lab) or Element(lab)
            entries.append((row, Entry(element, path, top)))
        if over is not None:
            F = TypeNFuzzySet(b.name, level, over.elements, tuple(e for _, e in entries))
        else:
            F = TypeNFuzzySet.from_entries(b.name, level, (e for _, e in entries))
        seen = {}
        bad = False
        for row, en in entries:
            if en.point in seen:
                self.error(row, "DUPLICATE_ENTRY",
                           f"{en.element.label!r}{list(en.path)} already has a degree (line {seen[en.point]})")
                bad = True
            else:
                seen[en.point] = row.line
        # remaining invariants; degree ranges were already reported by the parser
        for finding in validate(F):
            if finding.code not in ("DUPLICATE_ENTRY", "DEGREE_RANGE"):
                self.error(b, finding.code, finding.message)
                bad = True
        if bad:
            raise _Bad
        return F

    # worlds and events -------------------------------------------------------

    def _world(self, b):
        kind = self.word(self.need(b, "kind"), "kind", (CRISP, FUZZY))
        outcomes = self.ref(self.need(b, "outcomes"), "crisp", "outcomes")
        space = self.model.crisp.get(outcomes)
        if space is None:
            raise _Bad
        set_nodes = self.listv(self.need(b, "sets"), "sets")
        sets = [self.word(v, "member set name") for v in set_nodes]
        for name, node in zip(sets, set_nodes):
            if sets.count(name) > 1:
                self.fail(node, "DUPLICATE_NAME", f"member set {name!r} listed twice")
        membership = {s: [] for s in sets}
        landing = {e.label: [] for e in space}
        bad = False
        for f in b.fields:
            if not f.key.startswith("set."):
                continue
            s = f.key[4:]
            if s not in membership:
                self.error(f, "UNKNOWN_REF", f"{s!r} is not one of the member sets {sets}")
                bad = True
                continue
            for node in self.listv(f.value, f.key):
                lab = self.label(node, "outcome")
                if lab not in landing:
                    self.error(node, "UNKNOWN_REF", f"{lab!r} is not an outcome of {outcomes!r}")
                    bad = True
                    continue
                if s in landing[lab]:
                    self.error(node, "DUPLICATE_ELEMENT", f"{lab!r} listed twice in set {s!r}")
                    bad = True
                    continue
                landing[lab].append(s)
                membership[s].append(lab)
                if kind == CRISP and len(landing[lab]) > 1:
                    self.error(node, "PARTITION",
                               f"crisp world {b.name!r}: outcome {lab!r} is in both "
                               f"{landing[lab][0]!r} and {s!r}")
                    bad = True
        for lab, where in landing.items():
            if not where:
                code = "PARTITION" if kind == CRISP else "COVERAGE"
                self.error(b, code, f"world {b.name!r}: outcome {lab!r} lands in no member set")
                bad = True
        if bad:
            raise _Bad
        self.model.worlds[b.name] = build_world(b.name, kind, sets, space, membership)

    def _event(self, b):
        wname = self.ref(self.need(b, "world"), "world", "world")
        world = self.model.worlds.get(wname)
        if world is None:
            raise _Bad
        measurable = self.word(self.need(b, "measurable"), "measurable", ("true", "false")) == "true"
        timing = self.word(self.need(b, "timing"), "timing", (BEFORE, AFTER))
        realization = self.label(b.get("realization").value, "realization") if b.get("realization") else None
        try:
            self.model.events[b.name] = EventSpec(b.name, measurable, timing, world, realization)
        except SpecError as exc:
            self.fail(b.get("realization").value if b.get("realization") else b, "EVENT_SPEC", str(exc))


def validate_document(doc: Document) -> list[Diagnostic]:
    """All semantic diagnostics of ``doc``; empty when it is fully valid."""
    builder = _Builder(doc)
    builder.build()
    return sorted(builder.diags, key=lambda d: (d.line, d.column, d.code))


def load(doc: Document) -> Model:
    """Resolve ``doc`` into runtime objects, raising :class:`FDLError` on any diagnostic."""
    builder = _Builder(doc)
    model = builder.build()
    if builder.diags:
        raise FDLError(sorted(builder.diags, key=lambda d: (d.line, d.column, d.code)))
    return model
