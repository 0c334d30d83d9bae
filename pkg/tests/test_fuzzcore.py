import random

import pytest

from oracles import (distinct_prefix_counts, enumerate_stack_tables, random_type2, random_typen,
                     stripped_support, union_of_supports)
from typenfuzzy.errors import (ArgumentError, DomainError, InconsistentStack, LevelError,
                               NotInSupport, ShapeError)
from typenfuzzy.fuzzcore import (CrispSet, Element, Entry, MembershipFn, MembershipStack,
                                 Type1FuzzySet, TypeNFuzzySet, branching_profile, domain_typen,
                                 eval_type1, eval_typen, materialize, promote_crisp, unit_fn,
                                 unit_stack, uncertainty_ladder, validate, vertical_slice)
from typenfuzzy.mfshapes import Step, young_exemplars, interval_type2_stack

X1, X2, X3 = Element("x1", 1.0), Element("x2", 2.0), Element("x3", 3.0)


def table_fn(level, rows, name=""):
    return MembershipFn(level, table=rows, name=name)


# primary tables give x1 two branches and x2 one
PRIMARY_A = {("x1", ()): 0.3, ("x2", ()): 0.6}
PRIMARY_B = {("x1", ()): 0.7}
SECONDARY = {("x1", (0.3,)): 0.5, ("x1", (0.7,)): 1.0, ("x2", (0.6,)): 0.8}


def toy_stack():
    fam = tuple(table_fn(1, {k[0]: v for k, v in t.items()}) for t in (PRIMARY_A, PRIMARY_B))
    return MembershipStack((fam,), table_fn(2, SECONDARY))


class TestEvalType1:
    def test_exemplar_anchor(self):
        _, type1, _ = young_exemplars()
        f = MembershipFn(1, shape=type1, domain=(0, 100))
        assert eval_type1(f, Element("felix", 27.0)) == 0.9

    def test_unit_function(self):
        assert eval_type1(unit_fn(1), Element("anything")) == 1.0

    def test_crisp_step_above_threshold(self):
        f = MembershipFn(1, shape=Step(40), domain=(0, 100))
        assert eval_type1(f, Element("p", 45.0)) == 0.0

    def test_outside_domain(self):
        f = MembershipFn(1, shape=Step(40), domain=(0, 100))
        with pytest.raises(DomainError):
            eval_type1(f, Element("p", 130.0))
        with pytest.raises(DomainError):
            eval_type1(f, Element("no-value"))

    def test_out_of_range_shape_is_rejected_not_clamped(self):
        f = MembershipFn(1, shape=lambda v: 1.2)
        with pytest.raises(ShapeError):
            eval_type1(f, Element("p", 1.0))

    def test_table_lookup_and_miss(self):
        f = table_fn(1, {"x1": 0.25})
        assert eval_type1(f, X1) == 0.25
        with pytest.raises(DomainError):
            eval_type1(f, X2)

    def test_rejects_higher_level(self):
        with pytest.raises(ArgumentError):
            eval_type1(unit_fn(2), X1)


class TestEvalTypeN:
    def test_ragged_tables_match_enumeration(self):
        stack = toy_stack()
        for x in (X1, X2):
            got = [(en.path, en.top) for en in eval_typen(stack, x).entries]
            assert got == enumerate_stack_tables(x.label, [[PRIMARY_A, PRIMARY_B]], SECONDARY)
        assert len(eval_typen(stack, X1).entries) == 2
        assert len(eval_typen(stack, X2).entries) == 1

    def test_unit_stack_over_crisp(self):
        for n in (1, 2, 4):
            F = eval_typen(unit_stack(n), X1)
            assert len(F.entries) == 1
            assert set(F.degrees()) == {1.0}

    def test_young_type2_primary_span(self):
        _, _, type2 = young_exemplars()
        F = eval_typen(interval_type2_stack(type2, (0, 100)), Element("27", 27.0))
        primaries = [en.path[0] for en in F.entries]
        assert min(primaries) == 0.57 and max(primaries) == 0.98

    def test_entry_count_is_product_of_branches(self):
        fam1 = (table_fn(1, {"x1": 0.4}), table_fn(1, {"x1": 0.8}))
        fam2 = tuple(table_fn(2, {("x1", (0.4,)): d, ("x1", (0.8,)): d}) for d in (0.2, 0.5, 0.9))
        top = MembershipFn(3, shape=lambda v, a, b: min(a, b))
        F = eval_typen(MembershipStack((fam1, fam2), top), X1)
        assert len(F.entries) == 2 * 3

    def test_inconsistent_top(self):
        fam = (table_fn(1, {"x1": 0.3}),)
        stack = MembershipStack((fam,), table_fn(2, {("x1", (0.4,)): 1.0}))
        with pytest.raises(InconsistentStack):
            eval_typen(stack, X1)

    def test_outside_level1_domain(self):
        with pytest.raises(DomainError):
            eval_typen(toy_stack(), X3)

    def test_stack_levels_are_checked(self):
        with pytest.raises(LevelError):
            MembershipStack(((unit_fn(2),),), unit_fn(2))
        with pytest.raises(LevelError):
            MembershipStack(((unit_fn(1),),), unit_fn(3))


class TestPromoteCrisp:
    def test_type1(self):
        F = promote_crisp(CrispSet("C", (X1, X2)), 1)
        assert [(en.element.label, en.top) for en in F.entries] == [("x1", 1.0), ("x2", 1.0)]

    def test_type3(self):
        F = promote_crisp(CrispSet("C", (X1,)), 3)
        assert [(en.element, en.path, en.top) for en in F.entries] == [(X1, (1.0, 1.0), 1.0)]

    def test_empty(self):
        F = promote_crisp(CrispSet("C"), 2)
        assert F.level == 2 and F.entries == ()

    def test_bad_level(self):
        with pytest.raises(ArgumentError):
            promote_crisp(CrispSet("C", (X1,)), 0)


def toy_312():
    # m = (3, 1, 2)
    rows = [(X1, 0.9, 0.1), (X1, 0.1, 0.2), (X1, 0.5, 0.3), (X2, 0.4, 0.4), (X3, 0.6, 0.5), (X3, 0.2, 0.6)]
    return TypeNFuzzySet("T", 2, (X1, X2, X3), tuple(Entry(x, (p,), s) for x, p, s in rows))


class TestDomain:
    def test_grouped_by_rank(self):
        parts = domain_typen(toy_312())
        # hand enumeration: rank j of each element's ascending primaries
        expected = [[("x1", 0.1), ("x2", 0.4), ("x3", 0.2)], [("x1", 0.5), ("x3", 0.6)], [("x1", 0.9)]]
        assert [[(en.element.label, en.top) for en in P.entries] for P in parts] == expected
        assert all(P.level == 1 for P in parts)

    def test_felix_union_reproduces_support(self, felix):
        F = felix.fuzzy["young_type2"].fuzzy_set
        parts = domain_typen(F)
        assert union_of_supports(parts) == stripped_support(F)
        assert len(parts) == branching_profile(F).champions[1][1]

    def test_promoted(self):
        parts = domain_typen(promote_crisp(CrispSet("C", (X1, X2)), 2))
        assert len(parts) == 1
        assert [d for _, d in parts[0].to_type1().entries] == [1.0, 1.0]

    def test_type3_domain_is_type2(self):
        G = random_typen(random.Random(3), 3)
        parts = domain_typen(G)
        assert all(P.level == 2 and not validate(P) for P in parts)
        assert union_of_supports(parts) == stripped_support(G)

    def test_level_error(self):
        with pytest.raises(LevelError):
            domain_typen(promote_crisp(CrispSet("C", (X1,)), 1))


class TestBranching:
    def test_ragged(self):
        F = materialize(toy_stack(), (X1, X2))
        prof = branching_profile(F)
        assert prof.counts == distinct_prefix_counts(F) == {("x1", 1): 2, ("x2", 1): 1}
        assert prof.champions == {1: (1, 2)}

    def test_promoted(self):
        for n in range(1, 5):
            prof = branching_profile(promote_crisp(CrispSet("C", (X1, X2, X3)), n))
            assert set(prof.counts.values()) <= {1}
            assert all(k == 1 for k, _ in prof.champions.values())

    def test_tie_goes_to_first(self):
        F = TypeNFuzzySet("T", 2, (X1, X2), tuple(
            Entry(x, (p,), 1.0) for x in (X1, X2) for p in (0.2, 0.4)))
        assert branching_profile(F).champions[1] == (1, 2)

    def test_later_champion(self):
        assert branching_profile(toy_312()).champions[1] == (1, 3)
        F = TypeNFuzzySet("T", 2, (X1, X2), (Entry(X1, (0.1,), 1), Entry(X2, (0.1,), 1), Entry(X2, (0.2,), 1)))
        assert branching_profile(F).champions[1] == (2, 2)


class TestSlice:
    def test_felix_anchor(self, felix):
        pairs = vertical_slice(felix.fuzzy["young_type2"].fuzzy_set, "27")
        hit = [s for p, s in pairs if p == 0.88]
        assert hit and abs(hit[0] - 0.83) < 1e-9

    def test_promoted(self):
        assert vertical_slice(promote_crisp(CrispSet("C", (X1,)), 2), X1) == [(1.0, 1.0)]

    def test_sorted_table(self):
        table = [(0.8, 0.1), (0.2, 0.9), (0.5, 0.4)]
        F = TypeNFuzzySet("T", 2, (X1,), tuple(Entry(X1, (p,), s) for p, s in table))
        assert vertical_slice(F, "x1") == sorted(table)

    def test_absent(self):
        with pytest.raises(NotInSupport):
            vertical_slice(toy_312(), "nobody")

    def test_needs_type2(self):
        with pytest.raises(LevelError):
            vertical_slice(promote_crisp(CrispSet("C", (X1,)), 3), X1)


class TestLadder:
    def test_type1(self):
        ladder = uncertainty_ladder(Type1FuzzySet("A", ((X1, 0.4),)).to_typen(), X1)
        assert len(ladder) == 1 and ladder[0].degrees == (0.4,)

    def test_felix(self, felix):
        ladder = uncertainty_ladder(felix.fuzzy["young_type2"].fuzzy_set, "27")
        assert [s.level for s in ladder] == [1, 2]
        assert (ladder[0].degrees[0], ladder[0].degrees[-1]) == (0.57, 0.98)

    def test_type3_counts(self):
        fam1 = (table_fn(1, {"x1": 0.4}), table_fn(1, {"x1": 0.8}))
        fam2 = tuple(table_fn(2, {("x1", (0.4,)): d, ("x1", (0.8,)): d}) for d in (0.2, 0.5, 0.9))
        tops = {("x1", (a, b)): 0.5 for a in (0.4, 0.8) for b in (0.2, 0.5, 0.9)}
        F = eval_typen(MembershipStack((fam1, fam2), table_fn(3, tops)), X1)
        tables1 = [{("x1", ()): 0.4}, {("x1", ()): 0.8}]
        tables2 = [{("x1", (a,)): d for a in (0.4, 0.8)} for d in (0.2, 0.5, 0.9)]
        enumerated = enumerate_stack_tables("x1", [tables1, tables2], tops)
        expected = [len({p[0] for p, _ in enumerated}), len({p[1] for p, _ in enumerated}), 1]
        assert expected == [2, 3, 1]
        assert [s.count for s in uncertainty_ladder(F, X1)] == expected

    def test_absent(self):
        with pytest.raises(NotInSupport):
            uncertainty_ladder(toy_312(), "nobody")


class TestValidate:
    def test_clean(self, felix):
        assert validate(felix.fuzzy["young_type2"].fuzzy_set) == []
        assert validate(toy_312()) == []

    def test_range(self):
        F = TypeNFuzzySet("T", 2, (X1,), (Entry(X1, (0.5,), 1.2),))
        assert [f.code for f in validate(F)] == ["DEGREE_RANGE"]

    def test_duplicate(self):
        F = TypeNFuzzySet("T", 2, (X1,), (Entry(X1, (0.5,), 0.2), Entry(X1, (0.5,), 0.3)))
        findings = validate(F)
        assert [f.code for f in findings] == ["DUPLICATE_ENTRY"]
        assert findings[0].entry == 1

    def test_structure(self):
        F = TypeNFuzzySet("T", 2, (X1,), (Entry(X2, (0.5,), 0.2), Entry(X1, (), 0.3)))
        assert sorted(f.code for f in validate(F)) == ["PATH_LENGTH", "UNKNOWN_ELEMENT"]


class TestType1RoundTrip:
    def test_lossless(self):
        A = Type1FuzzySet("A", ((X2, 0.3), (X1, 1.0)))
        assert A.to_typen().to_type1() == A
        F = promote_crisp(CrispSet("C", (X1, X2)), 1)
        assert F.to_type1().to_typen() == F

    def test_invariants(self):
        with pytest.raises(ArgumentError):
            Type1FuzzySet("A", ((X1, 0.3), (X1, 0.4)))
        with pytest.raises(ArgumentError):
            Type1FuzzySet("A", ((X1, 1.5),))
        with pytest.raises(ArgumentError):
            CrispSet("C", (X1, X1))


def test_entries_are_canonically_ordered():
    F = random_type2(random.Random(11))
    keys = [(F.index(en.element), en.path) for en in F.entries]
    assert keys == sorted(keys)
