"""Weakening relations, oracles, and maximally strong weakenings."""

import random

import pytest

from elgr.axioms import Axiom, GCI
from elgr.errors import PreconditionError, SearchBudgetExceededError
from elgr.parser import parse_axiom
from elgr.reasoner import entails
from elgr.render import render
from elgr.weakening import (
    SUB,
    SYN,
    WeakeningContext,
    is_weaker_general,
    is_weaker_s,
    max_strong_weakenings,
    oracle_step,
    single_max_strong_syn,
    tautology_for,
    weaken_until,
)
from _oracles import brute_max_strong_syn, random_concept, same_axioms_modulo_equivalence
from conftest import ax, c, lab


def texts(axioms):
    return sorted(render(a.body) for a in axioms)


class TestPredicates:
    def test_general_weaker_gci(self):
        assert is_weaker_general(ax("C SubClassOf A and B"), ax("C SubClassOf B"))

    def test_general_irreflexive(self):
        beta = ax("C SubClassOf A and B")
        assert not is_weaker_general(beta, beta)

    def test_general_weaker_under_existential(self):
        assert is_weaker_general(
            ax("C SubClassOf D"), ax("some r.C SubClassOf some r.D")
        )

    def test_s_specializes_lhs(self):
        assert is_weaker_s(ax("Top SubClassOf A"), ax("some r.Top SubClassOf A"))

    def test_s_on_assertions(self):
        assert is_weaker_s(ax("(A and B)(a)"), ax("B(a)"))
        assert not is_weaker_s(ax("(A and B)(a)"), ax("B(b)"))

    def test_s_rejects_equivalent_axiom(self):
        assert not is_weaker_s(
            ax("A SubClassOf some r.A"), ax("A SubClassOf A and some r.A")
        )

    def test_relation_weaker_respects_kind(self):
        beta = ax("A SubClassOf some r.(P and Q)")
        gamma = ax("A SubClassOf some r.P")
        assert SUB.is_weaker(beta, gamma)
        assert SYN.is_weaker(beta, gamma)
        # a fresh-name generalization is sub-weaker but not a deletion
        other = ax("A SubClassOf some r.Top and some s.Top")
        assert not SYN.is_weaker(beta, other)

    def test_role_assertions_weaken_to_subject_tautology(self):
        assert SUB.is_weaker(ax("r(a,b)"), ax("Top(a)"))
        assert not SUB.is_weaker(ax("r(a,b)"), ax("Top(b)"))


class TestOneStepSuccessors:
    def test_tautologies_are_minimal(self):
        assert SUB.one_step_successors(ax("C SubClassOf Top")) == ()
        assert SYN.one_step_successors(ax("Top(a)")) == ()

    def test_name_pair_rhs(self):
        for rel in (SUB, SYN):
            got = rel.one_step_successors(ax("Top SubClassOf A and B"))
            assert texts(got) == ["Top SubClassOf A", "Top SubClassOf B"]

    def test_professor_axiom_syn(self):
        got = SYN.one_step_successors(
            ax("Prof SubClassOf some employed.Uni and some enrolled.Uni")
        )
        assert texts(got) == [
            "Prof SubClassOf some employed.Top and some enrolled.Uni",
            "Prof SubClassOf some employed.Uni and some enrolled.Top",
        ]

    def test_walks_through_equivalent_axioms(self):
        # the rhs neighbor A⊓∃r.Top gives an equivalent axiom; both
        # one-step successors lie behind it
        got = SUB.one_step_successors(ax("Top SubClassOf A and some r.A"))
        assert texts(got) == ["Top SubClassOf A", "Top SubClassOf some r.A"]
        assert "Top SubClassOf some r.Top" not in texts(got)

    def test_assertion_successors(self):
        got = SUB.one_step_successors(ax("(A and B)(a)"))
        assert texts(got) == ["A(a)", "B(a)"]

    def test_role_assertion_successor(self):
        got = SYN.one_step_successors(ax("r(a,b)"))
        assert texts(got) == ["Top(a)"]

    def test_successors_are_weaker(self):
        rng = random.Random(21)
        for _ in range(60):
            rhs = random_concept(rng, ["A", "B"], ["r"], 2)
            beta = Axiom("x", GCI(c("X"), rhs))
            for rel in (SUB, SYN):
                for succ in rel.one_step_successors(beta):
                    assert is_weaker_general(beta, succ)
                    assert rel.is_weaker(beta, succ)

    def test_label_inherited(self):
        beta = lab("r7", "Top SubClassOf A and B")
        assert {s.label for s in SYN.one_step_successors(beta)} == {"r7"}

    def test_budget_enforced(self):
        beta = ax("Top SubClassOf P1 and P2 and P3 and Q1 and Q2 and Q3")
        with pytest.raises(SearchBudgetExceededError):
            SUB.one_step_successors(beta, budget=2)


class TestOneStepMinimality:
    """Nothing in a bounded axiom space fits strictly between one steps."""

    def test_desk_scale_minimality(self):
        rng = random.Random(22)
        from _oracles import concept_pool

        pool = concept_pool(["A", "B", "P"], ["r"], 1)
        lhs = c("X")
        betas = [
            Axiom("b", GCI(lhs, random_concept(rng, ["A", "B", "P"], ["r"], 2)))
            for _ in range(25)
        ]
        for rel in (SUB, SYN):
            for beta in betas:
                for succ in rel.one_step_successors(beta):
                    for mid_rhs in pool:
                        mid = Axiom("m", GCI(lhs, mid_rhs))
                        assert not (
                            rel.is_weaker(beta, mid) and rel.is_weaker(mid, succ)
                        ), (render(beta.body), render(mid.body), render(succ.body))


class TestOracle:
    def test_minimal_fixed_point(self):
        beta = lab("r1", "C SubClassOf Top")
        assert oracle_step(SUB, beta) == beta

    def test_canonical_first_pick(self):
        got = oracle_step(SYN, ax("Top SubClassOf A and B"))
        assert render(got.body) == "Top SubClassOf A"

    def test_iteration_reaches_tautology(self):
        rng = random.Random(23)
        from elgr.reasoner import is_tautology

        for _ in range(40):
            current = Axiom(
                "x", GCI(c("X"), random_concept(rng, ["A", "B"], ["r"], 2))
            )
            for rel in (SUB, SYN):
                probe = current
                for _ in range(40):
                    nxt = oracle_step(rel, probe)
                    if nxt.body == probe.body:
                        break
                    probe = nxt
                assert is_tautology(probe.body)


class TestWeakenUntil:
    def test_professor_first_break(self, professor):
        rest = (professor.ontology.refutable[1],)
        ctx = WeakeningContext(professor.ontology.static, rest, professor.target)
        beta = professor.ontology.refutable[0]
        got = weaken_until(SYN, ctx, beta)
        assert not entails(
            list(professor.ontology.static) + [rest[0], got], professor.target
        )
        # the deterministic oracle generalizes both fillers on this path
        assert render(got.body) == (
            "Prof SubClassOf some employed.Top and some enrolled.Top"
        )

    def test_descends_to_tautology_when_needed(self):
        ctx = WeakeningContext([], [], ax("Top SubClassOf A"))
        got = weaken_until(SYN, ctx, lab("r1", "Top SubClassOf A and B"))
        assert render(got.body) == "Top SubClassOf Top"

    def test_precondition(self):
        ctx = WeakeningContext([], [], ax("Top SubClassOf A"))
        with pytest.raises(PreconditionError):
            weaken_until(SYN, ctx, lab("r1", "Top SubClassOf B"))


class TestMaxStrong:
    def test_unique_answer_under_both_relations(self):
        ctx = WeakeningContext([], [], ax("Top SubClassOf A"))
        for rel in (SUB, SYN):
            got = max_strong_weakenings(rel, ctx, lab("r1", "Top SubClassOf A and B"))
            assert texts(got) == ["Top SubClassOf B"]

    def test_professor_unique_syn(self, professor):
        rest = (professor.ontology.refutable[1],)
        ctx = WeakeningContext(professor.ontology.static, rest, professor.target)
        got = max_strong_weakenings(SYN, ctx, professor.ontology.refutable[0])
        assert texts(got) == [
            "Prof SubClassOf some employed.Uni and some enrolled.Top"
        ]

    def test_exponential_family_counts(self):
        statics = [
            lab(f"s{i}", f"P{i} and Q{i} SubClassOf B") for i in (1, 2, 3)
        ]
        beta = lab(
            "r1", "A SubClassOf P1 and Q1 and P2 and Q2 and P3 and Q3"
        )
        ctx = WeakeningContext(statics, [], ax("A SubClassOf B"))
        for rel in (SUB, SYN):
            got = max_strong_weakenings(rel, ctx, beta)
            assert len(got) == 8
            for axiom in got:
                assert isinstance(axiom.body, GCI)

    def test_assertion_max_strong(self, two_step_assertion):
        ctx = WeakeningContext([], [], two_step_assertion.target)
        got = max_strong_weakenings(SYN, ctx, two_step_assertion.ontology.refutable[1])
        assert texts(got) == ["B(a)"]

    def test_agrees_with_brute_force_on_random_contexts(self):
        rng = random.Random(24)
        names = ["A", "B", "P"]
        checked = 0
        while checked < 60:
            static = [
                Axiom(f"s{i}", GCI(random_concept(rng, names, ["r"], 1),
                                   random_concept(rng, names, ["r"], 1)))
                for i in range(rng.randint(0, 2))
            ]
            lhs = random_concept(rng, names, ["r"], 1)
            rhs = random_concept(rng, names, ["r"], 1)
            beta = Axiom("b", GCI(lhs, rhs))
            target = GCI(
                random_concept(rng, names, ["r"], 1),
                random_concept(rng, names, ["r"], 1),
            )
            if entails(static, target):
                continue
            if not entails(static + [beta], target):
                continue
            ctx = WeakeningContext(static, [], target)
            got = [a.body for a in max_strong_weakenings(SYN, ctx, beta)]
            expected = brute_max_strong_syn(ctx, beta)
            assert same_axioms_modulo_equivalence(got, expected), (
                render(beta.body),
                render(target),
                sorted(render(g) for g in got),
                sorted(render(e) for e in expected),
            )
            checked += 1


class TestSingleMaxStrong:
    def test_simple_instance(self):
        ctx = WeakeningContext([], [], ax("Top SubClassOf A"))
        got = single_max_strong_syn(ctx, lab("r1", "Top SubClassOf A and B"))
        assert render(got.body) == "Top SubClassOf B"

    def test_professor_instance(self, professor):
        rest = (professor.ontology.refutable[1],)
        ctx = WeakeningContext(professor.ontology.static, rest, professor.target)
        got = single_max_strong_syn(ctx, professor.ontology.refutable[0])
        assert render(got.body) == (
            "Prof SubClassOf some employed.Uni and some enrolled.Top"
        )

    def test_member_of_max_strong_set(self):
        rng = random.Random(25)
        names = ["A", "B", "P"]
        checked = 0
        while checked < 40:
            static = [
                Axiom("s1", GCI(random_concept(rng, names, ["r"], 1),
                                random_concept(rng, names, ["r"], 1)))
            ]
            beta = Axiom("b", GCI(c("X"), random_concept(rng, names, ["r"], 1)))
            target = GCI(c("X"), random_concept(rng, names, ["r"], 1))
            if entails(static, target) or not entails(static + [beta], target):
                continue
            ctx = WeakeningContext(static, [], target)
            single = single_max_strong_syn(ctx, beta)
            allmax = {render(a.body) for a in max_strong_weakenings(SYN, ctx, beta)}
            assert render(single.body) in allmax
            checked += 1

    def test_needs_gci(self):
        ctx = WeakeningContext([], [], ax("A(a)"))
        with pytest.raises(PreconditionError):
            single_max_strong_syn(ctx, lab("r1", "(A and B)(a)"))


class TestTautologyFor:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("C SubClassOf A", "C SubClassOf Top"),
            ("(A and B)(a)", "Top(a)"),
            ("r(a,b)", "Top(a)"),
        ],
    )
    def test_shapes(self, text, expected):
        assert render(tautology_for(ax(text))) == expected


class TestContextInvariant:
    def test_rest_must_not_entail(self):
        with pytest.raises(PreconditionError):
            WeakeningContext(
                [lab("s1", "A SubClassOf B")],
                [lab("r1", "X SubClassOf A")],
                ax("X SubClassOf B"),
            )
