"""Subsumption, reduction, and entailment."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from elgr.axioms import GCI
from elgr.concepts import Exists, Name, TOP, conj
from elgr.reasoner import (
    EntailmentContext,
    entails,
    equivalent_empty,
    is_tautology,
    reduce_concept,
    strictly_subsumed_empty,
    subsumes_empty,
)
from elgr.render import render
from _oracles import random_concept
from conftest import ax, c


class TestSubsumesEmpty:
    def test_conjunct_below_existential(self):
        assert subsumes_empty(c("A and some r.A"), c("some r.A"))

    def test_everything_below_top(self):
        for text in ("Top", "A", "some r.(A and B)"):
            assert subsumes_empty(c(text), TOP)

    def test_existential_not_below_conjunction(self):
        assert not subsumes_empty(c("some r.A"), c("A and some r.A"))

    def test_strictness(self):
        assert strictly_subsumed_empty(c("A and some r.A"), c("some r.A"))
        assert not strictly_subsumed_empty(c("Top"), c("A"))

    def test_commutativity_is_equivalence(self):
        assert equivalent_empty(c("A and B"), c("B and A"))

    def test_role_names_must_match(self):
        assert not subsumes_empty(c("some r.A"), c("some s.A"))

    def test_filler_recursion(self):
        assert subsumes_empty(c("some r.(A and B)"), c("some r.A"))
        assert not subsumes_empty(c("some r.A"), c("some r.(A and B)"))


class TestReduce:
    def test_duplicate_conjunct(self):
        assert render(reduce_concept(c("A and A"))) == "A"

    def test_subsumed_existential_deleted(self):
        got = reduce_concept(c("some r.(A and B) and some r.A"))
        assert render(got) == "some r.(A and B)"
        # sanity: the reduct is equivalent both ways
        assert equivalent_empty(got, c("some r.(A and B) and some r.A"))

    def test_already_reduced_untouched(self):
        text = "A and some r.(B1 and B2 and B3)"
        assert render(reduce_concept(c(text))) == text

    def test_top_conjuncts_dropped(self):
        assert render(reduce_concept(c("Top and A and Top"))) == "A"

    def test_reduces_inside_fillers(self):
        assert render(reduce_concept(c("some r.(A and A)"))) == "some r.A"

    def test_idempotent(self):
        concept = c("some r.(A and B) and some r.A and B and B")
        once = reduce_concept(concept)
        assert reduce_concept(once) == once


class TestEntails:
    def test_gci_chain(self):
        assert entails([ax("C SubClassOf A and B"), ax("B SubClassOf A")], ax("C SubClassOf A"))

    def test_assertion_with_conjunction(self):
        assert entails([ax("B SubClassOf A"), ax("(A and B)(a)")], ax("A(a)"))

    def test_assertion_through_tbox(self):
        assert entails([ax("B SubClassOf A"), ax("B(a)")], ax("A(a)"))

    def test_tautological_query_from_nothing(self):
        assert entails([], ax("C SubClassOf C"))

    def test_gci_query_ignores_assertions(self):
        # assertion data never forces a GCI
        assert not entails([ax("A(a)"), ax("B(a)")], ax("A SubClassOf B"))

    def test_role_assertion_query_is_syntactic(self):
        assert entails([ax("r(a,b)")], ax("r(a,b)"))
        assert not entails([ax("r(a,b)"), ax("s(b,c)")], ax("r(a,c)"))

    def test_role_assertions_feed_concept_queries(self):
        axioms = [ax("r(a,b)"), ax("B(b)"), ax("some r.B SubClassOf A")]
        assert entails(axioms, ax("A(a)"))

    def test_existential_monotonicity(self):
        assert entails([ax("C SubClassOf D")], ax("some r.C SubClassOf some r.D"))

    def test_top_lhs_equivalence(self):
        assert entails(
            [ax("Top SubClassOf A and some r.Top")],
            ax("Top SubClassOf A and some r.A"),
        )

    def test_monotone_in_axioms(self):
        rng = random.Random(19)
        names, roles = ["A", "B"], ["r"]
        for _ in range(80):
            smaller = [
                GCI(random_concept(rng, names, roles, 1),
                    random_concept(rng, names, roles, 1))
                for _ in range(rng.randint(0, 3))
            ]
            bigger = smaller + [
                GCI(random_concept(rng, names, roles, 1),
                    random_concept(rng, names, roles, 1))
            ]
            query = GCI(
                random_concept(rng, names, roles, 1),
                random_concept(rng, names, roles, 1),
            )
            if entails(smaller, query):
                assert entails(bigger, query)

    def test_context_reusable(self):
        ctx = EntailmentContext([ax("A SubClassOf B"), ax("B SubClassOf C")])
        assert ctx.entails(ax("A SubClassOf C"))
        assert ctx.entails(ax("A SubClassOf B"))
        assert not ctx.entails(ax("C SubClassOf A"))


class TestIsTautology:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("C SubClassOf Top", True),
            ("C SubClassOf C", True),
            ("A and B SubClassOf B", True),
            ("Top(a)", True),
            ("Prof SubClassOf Studi", False),
            ("A(a)", False),
            ("r(a,b)", False),
        ],
    )
    def test_examples(self, text, expected):
        assert is_tautology(ax(text)) is expected


class TestAgreementAndOrder:
    """The structural characterization against the completion engine."""

    def test_agreement_on_random_pairs(self):
        rng = random.Random(20240817)
        for _ in range(400):
            a = random_concept(rng, ["A", "B", "P"], ["r"], 3)
            b = random_concept(rng, ["A", "B", "P"], ["r"], 3)
            assert subsumes_empty(a, b) == entails([], GCI(a, b)), render(
                GCI(a, b)
            )

    def test_reduce_preserves_equivalence(self):
        rng = random.Random(7)
        for _ in range(300):
            a = random_concept(rng, ["A", "B"], ["r", "s"], 3)
            assert equivalent_empty(a, reduce_concept(a))

    def test_equivalence_iff_equal_renderings(self):
        rng = random.Random(11)
        pool = [random_concept(rng, ["A", "B"], ["r"], 2) for _ in range(60)]
        for a in pool:
            for b in pool:
                assert equivalent_empty(a, b) == (render(a) == render(b))

    def test_strict_subsumption_is_a_strict_order(self):
        rng = random.Random(13)
        pool = [random_concept(rng, ["A", "B"], ["r"], 2) for _ in range(40)]
        for a in pool:
            assert not strictly_subsumed_empty(a, a)
        for a in pool:
            for b in pool:
                for d in pool:
                    if strictly_subsumed_empty(a, b) and strictly_subsumed_empty(b, d):
                        assert strictly_subsumed_empty(a, d)


class TestEntailmentLaws:
    """Closure laws of the consequence relation on random ontologies."""

    def test_gci_laws(self):
        rng = random.Random(777)
        names, roles = ["A", "B", "P"], ["r", "s"]
        from _oracles import random_gci

        for _ in range(150):
            tbox = [random_gci(rng, names, roles, 2) for _ in range(rng.randint(0, 4))]
            ctx = EntailmentContext(tbox)
            a = random_concept(rng, names, roles, 2)
            b = random_concept(rng, names, roles, 2)
            d = random_concept(rng, names, roles, 2)
            ab, bd = ctx.entails(GCI(a, b)), ctx.entails(GCI(b, d))
            if ab and bd:
                assert ctx.entails(GCI(a, d))  # transitivity
            if ab:
                assert ctx.entails(GCI(Exists("r", a), Exists("r", b)))
                if ctx.entails(GCI(a, d)):
                    assert ctx.entails(GCI(a, conj([b, d])))
            if subsumes_empty(a, b):
                assert ctx.entails(GCI(a, b))  # tautologies lift
            for axiom in tbox:
                assert ctx.entails(axiom)

    def test_assertion_laws(self):
        rng = random.Random(778)
        names, roles = ["A", "B", "P"], ["r", "s"]
        from _oracles import random_gci
        from elgr.axioms import ConceptAssertion, RoleAssertion

        for _ in range(120):
            axioms = [random_gci(rng, names, roles, 1) for _ in range(rng.randint(0, 3))]
            axioms += [
                ConceptAssertion(random_concept(rng, names, roles, 1), rng.choice("ab"))
                for _ in range(rng.randint(0, 2))
            ]
            if rng.random() < 0.5:
                axioms.append(RoleAssertion(rng.choice(roles), *rng.sample("ab", 2)))
            ctx = EntailmentContext(axioms)
            d = random_concept(rng, names, roles, 1)
            e = random_concept(rng, names, roles, 1)
            for ind in "ab":
                da = ctx.entails(ConceptAssertion(d, ind))
                ea = ctx.entails(ConceptAssertion(e, ind))
                if da and ea:
                    assert ctx.entails(ConceptAssertion(conj([d, e]), ind))
                if da and subsumes_empty(d, e):
                    assert ea
                if da and ctx.entails(GCI(d, e)):
                    assert ea
            for axiom in axioms:
                assert ctx.entails(axiom)


def _concepts():
    names = st.sampled_from(["A", "B", "P"]).map(Name)

    def extend(children):
        return st.one_of(
            st.builds(Exists, st.sampled_from(["r", "s"]), children),
            st.lists(children, min_size=2, max_size=3).map(conj),
        )

    return st.recursive(st.one_of(st.just(TOP), names), extend, max_leaves=8)


class TestReduceProperties:
    @given(_concepts())
    @settings(max_examples=300, deadline=None)
    def test_reduce_equivalent_and_idempotent(self, concept):
        reduced = reduce_concept(concept)
        assert equivalent_empty(concept, reduced)
        assert reduce_concept(reduced) == reduced
