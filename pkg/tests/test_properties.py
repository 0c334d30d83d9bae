import random

from hypothesis import given, settings, strategies as st

from oracles import random_interval2, random_type2, random_world, recount, stripped_support, union_of_supports
from typenfuzzy.fdl import Block, Document, Field, ListValue, Number, Text, Word, parse, serialize
from typenfuzzy.fuzzcore import CrispSet, Element, domain_typen, promote_crisp, vertical_slice
from typenfuzzy.mfshapes import PiecewiseLinear, eval_interval_type2, eval_shape
from typenfuzzy.numfmt import render
from typenfuzzy.worlds import FUZZY, OutcomeLog, build_world, tally

finite = st.floats(allow_nan=False, allow_infinity=False)
degree = st.floats(min_value=0.0, max_value=1.0)
seeds = st.integers(min_value=0, max_value=2**32)


@given(finite)
def test_render_round_trips(x):
    text = render(x)
    assert float(text) == x and "e" not in text


@st.composite
def linear_shapes(draw):
    xs = draw(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=8, unique=True))
    return PiecewiseLinear(tuple((x, draw(degree)) for x in sorted(xs)))


@given(linear_shapes(), finite)
def test_linear_shape_stays_in_range(shape, v):
    d = eval_shape(shape, v)
    assert 0.0 <= d <= 1.0


@given(seeds, st.floats(0, 100), degree)
def test_secondary_stays_in_range(seed, v, primary):
    band = random_interval2(random.Random(seed))
    assert 0.0 <= eval_interval_type2(band, v, primary) <= 1.0


@given(seeds)
def test_domain_reassembles_support(seed):
    F = random_type2(random.Random(seed))
    assert union_of_supports(domain_typen(F)) == stripped_support(F)


@given(seeds)
def test_slice_is_sorted_support(seed):
    F = random_type2(random.Random(seed))
    for x in F.elements:
        pairs = vertical_slice(F, x)
        assert pairs == sorted(pairs)
        assert len(pairs) == sum(1 for en in F.entries if en.element == x)


@given(st.lists(st.text("abcxyz", min_size=1, max_size=3), unique=True, max_size=6),
       st.integers(1, 5))
def test_promotion(labels, n):
    F = promote_crisp(CrispSet("C", tuple(Element(l) for l in labels)), n)
    assert len(F.entries) == len(labels)
    assert all(d == 1.0 for d in F.degrees())


@given(seeds, st.data())
def test_fuzzy_tally_never_below_n(seed, data):
    sets, space, membership = random_world(random.Random(seed), FUZZY)
    w = build_world("w", FUZZY, sets, space, membership)
    labels = [e.label for e in space]
    draws = data.draw(st.lists(st.sampled_from(labels), min_size=1, max_size=50))
    t = tally(w, OutcomeLog(w, draws))
    assert t.raw_counts == recount(w.landing, draws, sets)
    assert sum(t.raw_counts.values()) >= t.N
    assert all(0.0 <= q <= 1.0 for q in t.normalized.values())


idents = st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True)
scalars = st.one_of(finite.map(Number), idents.map(Word),
                    st.text(st.characters(blacklist_categories=("Cs", "Cc")), max_size=8).map(Text))
values = st.recursive(scalars, lambda inner: st.lists(inner, max_size=4).map(lambda xs: ListValue(tuple(xs))),
                      max_leaves=10)


@st.composite
def documents(draw):
    blocks = []
    names = draw(st.lists(st.tuples(st.sampled_from(["range", "crisp", "world", "event"]), idents),
                          unique=True, max_size=5))
    for kind, name in names:
        keys = draw(st.lists(idents, unique=True, max_size=5))
        blocks.append(Block(kind, name, tuple(Field(k, draw(values)) for k in keys)))
    return Document(tuple(blocks))


@settings(max_examples=200)
@given(documents())
def test_syntax_round_trip(doc):
    text = serialize(doc)
    assert parse(text) == doc
    assert serialize(parse(text)) == text
