"""Command-line front end.

Exit status: 0 on success, 1 when the input has diagnostics or an operation
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from . import fuzzcore, mfshapes, precisiation, tabular, worlds
from .errors import FuzzError
from .fdl import FDLError, load, parse, validate_document
from .mfshapes import IntervalType2Spec
from .numfmt import render


class _Failure(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(f"cannot read {path}: {exc.strerror}") from None


def _model(path):
    try:
        return load(parse(_read(path)))
    except FDLError as exc:
        raise _Failure("\n".join(d.format(path) for d in exc.diagnostics)) from None


def _lookup(table, name, what):
    try:
        return table[name]
    except KeyError:
        known = ", ".join(sorted(table)) or "none"
        raise _Failure(f"no {what} named {name!r} (declared: {known})") from None


def _decl(model, name):
    return _lookup(model.fuzzy, name, "fuzzy set")


def _element(decl, selector):
    try:
        return decl.element(selector)
    except KeyError as exc:
        raise _Failure(exc.args[0]) from None


def cmd_check(args, out):
    source = _read(args.file)
    try:
        doc = parse(source)
    except FDLError as exc:
        diags = exc.diagnostics
    else:
        diags = validate_document(doc)
    if diags:
        raise _Failure("\n".join(d.format(args.file) for d in diags))


def cmd_eval(args, out):
    decl = _decl(_model(args.file), args.set)
    x = _element(decl, args.at)
    if decl.level == 1:
        if decl.stack is not None:
            d = fuzzcore.eval_type1(decl.stack.top, x)
        else:
            d = decl.fuzzy_set.to_type1().degree(x.label)
        out.write(render(d) + "\n")
        return
    if decl.stack is not None:
        F = fuzzcore.eval_typen(decl.stack, x, decl.name)
    else:
        F = fuzzcore.TypeNFuzzySet(decl.name, decl.level, (x,), decl.fuzzy_set.entries_for(x))
    out.write(tabular.set_to_csv(F))


def cmd_slice(args, out):
    decl = _decl(_model(args.file), args.set)
    pairs = fuzzcore.vertical_slice(decl.fuzzy_set, _element(decl, args.at))
    out.write(tabular.write_rows(["primary", "secondary"], pairs))


def cmd_ladder(args, out):
    decl = _decl(_model(args.file), args.set)
    x = _element(decl, args.at)
    for s in fuzzcore.uncertainty_ladder(decl.fuzzy_set, x):
        lo, hi = s.degrees[0], s.degrees[-1]
        out.write(f"stratum.{s.level}: count={s.count} degrees=[{render(lo)}, {render(hi)}] "
                  f"quantifies={s.quantifies}\n")


def cmd_domain(args, out):
    decl = _decl(_model(args.file), args.set)
    parts = fuzzcore.domain_typen(decl.fuzzy_set)
    header = ["set"] + tabular.set_header(decl.level - 1)
    rows = ([p.name, *row] for p in parts for row in tabular.set_rows(p))
    out.write(tabular.write_rows(header, rows))


def cmd_tally(args, out):
    world = _lookup(_model(args.file).worlds, args.world, "world")
    log = worlds.read_log(_read(args.log), world)
    t = worlds.tally(world, log)
    verdict = worlds.sum_law_check(t)
    out.write(tabular.write_rows(["set", "raw", "normalized"],
                                 ((s, t.raw_counts[s], t.normalized[s]) for s in world.member_sets)))
    out.write(f"N: {t.N}\n")
    out.write(f"raw_total: {sum(t.raw_counts.values())}\n")
    out.write(f"sum_law: {verdict.describe()}\n")
    if not verdict.passed:
        raise _Failure(f"sum law violated for crisp world {world.name!r}")


def cmd_classify(args, out):
    event = _lookup(_model(args.file).events, args.event, "event")
    out.write(precisiation.classify_event(event).to_text())


def cmd_precisiate(args, out):
    model = _model(args.file)
    world = _lookup(model.worlds, args.world, "world")
    _lookup(model.shapes, args.mf, "shape")
    p = precisiation.precisiate(args.concept, model.shape_fn(args.mf), world, args.include_zero)
    out.write(p.to_text())


def cmd_plot(args, out):
    model = _model(args.file)
    shape = _lookup(model.shapes, args.shape, "shape")
    lo, hi = args.lo, args.hi
    domain = model.shape_domains.get(args.shape)
    if lo is None:
        lo = domain[0] if domain else None
    if hi is None:
        hi = domain[1] if domain else None
    if lo is None or hi is None:
        raise _Failure(f"shape {args.shape!r} declares no domain; pass --from and --to")
    grid = mfshapes.uniform_grid(lo, hi, args.grid_size)
    rows = mfshapes.sample_shape(shape, grid)
    header = ["input", "primary", "secondary"] if isinstance(shape, IntervalType2Spec) else ["input", "degree"]
    out.write(tabular.write_rows(header, rows))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="typenfuzzy",
                                description="Type-n fuzzy sets, possible-world tallies and precisiation.")
    p.add_argument("-o", "--output", help="write results to this file instead of standard output")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="FDL source file")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "validate an FDL file")
    for name, func, help_ in (("eval", cmd_eval, "evaluate a fuzzy set at one element"),
                              ("slice", cmd_slice, "primary/secondary pairs of a type-2 set"),
                              ("ladder", cmd_ladder, "uncertainty strata of an element")):
        sp = add(name, func, help_)
        sp.add_argument("--set", required=True, help="fuzzy set name")
        sp.add_argument("--at", required=True, help="element label or numeric value")
    add("domain", cmd_domain, "split a type-n set into its type-(n-1) constituents").add_argument(
        "--set", required=True, help="fuzzy set name")
    sp = add("tally", cmd_tally, "tally an outcome log over a world")
    sp.add_argument("--world", required=True)
    sp.add_argument("--log", required=True, help="outcome log, one label per line")
    add("classify", cmd_classify, "classify the uncertainty of an event").add_argument(
        "--event", required=True)
    sp = add("precisiate", cmd_precisiate, "map a concept to a subset of a world")
    sp.add_argument("--concept", required=True)
    sp.add_argument("--mf", required=True, help="shape used as the concept's membership function")
    sp.add_argument("--world", required=True)
    sp.add_argument("--include-zero", action="store_true", help="keep outcomes with degree 0")
    sp = add("plot", cmd_plot, "tabulate a shape for plotting")
    sp.add_argument("--shape", required=True)
    sp.add_argument("--grid-size", type=int, default=mfshapes.DEFAULT_GRID_SIZE)
    sp.add_argument("--from", dest="lo", type=float)
    sp.add_argument("--to", dest="hi", type=float)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.output:
        target = Path(args.output).resolve()
        inputs = [Path(args.file).resolve()] + ([Path(args.log).resolve()] if getattr(args, "log", None) else [])
        if target in inputs:
            parser.error("the output file must not be one of the inputs")
    if getattr(args, "grid_size", 1) < 1:
        parser.error("--grid-size must be positive")
    buf = io.StringIO()
    status = 0
    try:
        args.func(args, buf)
    except _Failure as exc:
        print(exc, file=sys.stderr)
        status = 1
    except FuzzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = 1
    text = buf.getvalue()
    if args.output and (text or status == 0):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
