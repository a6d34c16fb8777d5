"""Weakening relations for EL axioms and maximally strong weakenings.

The two enumerable relations generalize the right-hand side of a GCI (and
the concept of a concept assertion): ``sub`` walks semantic upper neighbors
in the subsumption order, ``syn`` walks one-step syntactic generalizations.
Both are well-founded, complete, and one-step generated, so every weaker
axiom is reachable along one-step successors and maximally strong
weakenings can be found by breadth-first search. Role assertions weaken
directly to a tautology on their subject.

Two further relations ship as pairwise predicates only: the general
weakening order on consequence sets (``is_weaker_general``) and the
generalize-right/specialize-left order (``is_weaker_s``). Neither is
enumerable here, the first because its steps can always be refined, the
second because left-hand sides can be specialized forever.

Everything is deterministic: successor sets, oracle picks, and search
results are ordered by canonical rendering.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence, Union

from .axioms import Axiom, Body, ConceptAssertion, GCI, RoleAssertion
from .concepts import Concept, TOP, structural_text
from .errors import (
    EngineInvariantError,
    PreconditionError,
    SearchBudgetExceededError,
)
from .neighbors import (
    PositionTree,
    default_search_budget,
    syn_generalizes,
    syn_one_step_up,
    upper_neighbors,
)
from .reasoner import (
    IncrementalChecker,
    entails,
    is_tautology,
    reduce_concept,
    strictly_subsumed_empty,
    subsumes_empty,
)
from .render import render_body, render_concept

__all__ = [
    "WeakeningRelation",
    "SUB",
    "SYN",
    "relation_by_kind",
    "WeakeningContext",
    "is_weaker_general",
    "is_weaker_s",
    "tautology_for",
    "oracle_step",
    "sub_one_step",
    "syn_one_step",
    "weaken_until",
    "max_strong_weakenings",
    "single_max_strong_syn",
]


def _body(axiom: Union[Axiom, Body]) -> Body:
    return axiom.body if isinstance(axiom, Axiom) else axiom


def _as_axiom(axiom: Union[Axiom, Body]) -> Axiom:
    return axiom if isinstance(axiom, Axiom) else Axiom("", axiom)


class _Budget:
    """Mutable node counter shared across one weakening search."""

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise SearchBudgetExceededError(
                f"weakening search exceeded the node budget of {self.limit}"
            )


def _resolve_budget(budget: Union[int, _Budget, None]) -> _Budget:
    if isinstance(budget, _Budget):
        return budget
    return _Budget(budget if budget is not None else default_search_budget())


def tautology_for(axiom: Union[Axiom, Body]) -> Body:
    """A tautological axiom of the shape the given axiom weakens to."""
    body = _body(axiom)
    if isinstance(body, GCI):
        return GCI(body.lhs, TOP)
    if isinstance(body, ConceptAssertion):
        return ConceptAssertion(TOP, body.individual)
    assert isinstance(body, RoleAssertion)
    return ConceptAssertion(TOP, body.subject)


def is_weaker_general(
    beta: Union[Axiom, Body], gamma: Union[Axiom, Body]
) -> bool:
    """True iff gamma's consequences are strictly contained in beta's."""
    b, g = _body(beta), _body(gamma)
    return entails([b], g) and not entails([g], b)


def is_weaker_s(beta: Union[Axiom, Body], gamma: Union[Axiom, Body]) -> bool:
    """Generalize the right-hand side and/or specialize the left-hand side.

    For GCIs: the new left side is subsumed by the old, the old right side
    by the new, and the new axiom must not entail the old. For concept
    assertions on the same individual: strict concept generalization.
    Mismatched kinds or individuals are simply not related.
    """
    b, g = _body(beta), _body(gamma)
    if isinstance(b, GCI) and isinstance(g, GCI):
        return (
            subsumes_empty(g.lhs, b.lhs)
            and subsumes_empty(b.rhs, g.rhs)
            and not entails([g], b)
        )
    if isinstance(b, ConceptAssertion) and isinstance(g, ConceptAssertion):
        return b.individual == g.individual and strictly_subsumed_empty(
            b.concept, g.concept
        )
    return False


def _is_top_assertion(body: Body, individual: str) -> bool:
    return (
        isinstance(body, ConceptAssertion)
        and body.individual == individual
        and subsumes_empty(TOP, body.concept)
    )


class WeakeningRelation:
    """An irreflexive transitive weakening order with enumerable steps."""

    kind: str

    def _concept_ups(self, c: Concept) -> Sequence[Concept]:
        raise NotImplementedError

    def _concept_weaker(self, c: Concept, d: Concept) -> bool:
        """Strictly more general per this relation's concept order."""
        raise NotImplementedError

    def is_weaker(
        self, beta: Union[Axiom, Body], gamma: Union[Axiom, Body]
    ) -> bool:
        b, g = _body(beta), _body(gamma)
        if isinstance(b, GCI) and isinstance(g, GCI):
            return (
                render_concept(b.lhs) == render_concept(g.lhs)
                and self._concept_weaker(b.rhs, g.rhs)
                and not entails([g], b)
            )
        if isinstance(b, ConceptAssertion) and isinstance(g, ConceptAssertion):
            return b.individual == g.individual and self._concept_weaker(
                b.concept, g.concept
            )
        if isinstance(b, RoleAssertion):
            return _is_top_assertion(g, b.subject)
        return False

    def one_step_successors(
        self, beta: Union[Axiom, Body], budget: Union[int, _Budget, None] = None
    ) -> tuple[Axiom, ...]:
        """Immediate successors of the axiom, canonically ordered.

        Successors inherit the axiom's label; they are pairwise
        incomparable and nothing per this relation lies strictly between
        the axiom and any of them.
        """
        ax = _as_axiom(beta)
        body = ax.body
        if is_tautology(body):
            return ()
        if isinstance(body, GCI):
            bodies = self._gci_one_step(body, _resolve_budget(budget))
        elif isinstance(body, ConceptAssertion):
            bodies = [
                ConceptAssertion(c, body.individual)
                for c in self._concept_ups(body.concept)
            ]
        else:
            assert isinstance(body, RoleAssertion)
            bodies = [ConceptAssertion(TOP, body.subject)]
        ordered = sorted(bodies, key=render_body)
        return tuple(Axiom(ax.label, b) for b in ordered)

    def _gci_one_step(self, body: GCI, budget: _Budget) -> list[Body]:
        # Walk concepts above the right-hand side; a step that only yields
        # an equivalent axiom is walked through, the first strictly weaker
        # axiom on each path is collected.
        start = reduce_concept(body.rhs)
        seen = {structural_text(start)}
        queue: deque[Concept] = deque([start])
        collected: dict[str, GCI] = {}
        while queue:
            node = queue.popleft()
            for nb in self._concept_ups(node):
                text = structural_text(nb)
                if text in seen:
                    continue
                seen.add(text)
                budget.spend()
                candidate = GCI(body.lhs, nb)
                if entails([candidate], body):
                    queue.append(nb)
                else:
                    collected[render_body(candidate)] = candidate
        keys = sorted(collected)
        return [
            collected[k]
            for k in keys
            if not any(
                k2 != k and self.is_weaker(collected[k2], collected[k])
                for k2 in keys
            )
        ]


class _SubRelation(WeakeningRelation):
    kind = "sub"

    def _concept_ups(self, c: Concept) -> Sequence[Concept]:
        return upper_neighbors(c).neighbors

    def _concept_weaker(self, c: Concept, d: Concept) -> bool:
        return subsumes_empty(c, d)


class _SynRelation(WeakeningRelation):
    kind = "syn"

    def _concept_ups(self, c: Concept) -> Sequence[Concept]:
        return syn_one_step_up(c)

    def _concept_weaker(self, c: Concept, d: Concept) -> bool:
        return syn_generalizes(c, d, strict=True)


SUB = _SubRelation()
SYN = _SynRelation()


def relation_by_kind(kind: str) -> WeakeningRelation:
    if kind == "sub":
        return SUB
    if kind == "syn":
        return SYN
    raise ValueError(f"unknown weakening relation {kind!r}")


def sub_one_step(
    beta: Union[Axiom, Body], budget: Union[int, None] = None
) -> tuple[Axiom, ...]:
    """One-step successors under semantic right-hand-side generalization."""
    return SUB.one_step_successors(beta, budget)


def syn_one_step(
    beta: Union[Axiom, Body], budget: Union[int, None] = None
) -> tuple[Axiom, ...]:
    """One-step successors under syntactic generalization."""
    return SYN.one_step_successors(beta, budget)


class WeakeningContext:
    """The fixed surroundings of one weakening step.

    Holds the static part, the rest of the justification under repair, and
    the unwanted consequence. A replacement satisfies the repair condition
    when the static part, the justification rest, and the replacement
    together no longer entail the target; when the same axiom sits in
    several justifications, ``extra_rests`` carries the additional rests
    and the condition must hold against every one of them.
    """

    def __init__(
        self,
        static_part: Iterable[Axiom],
        justification_rest: Iterable[Axiom],
        target: Union[Axiom, Body],
        extra_rests: Iterable[Iterable[Axiom]] = (),
    ):
        self.static = tuple(static_part)
        self.rest = tuple(justification_rest)
        self.target = _body(target)
        self.rests: tuple[tuple[Axiom, ...], ...] = (self.rest,) + tuple(
            tuple(r) for r in extra_rests
        )
        self._checkers = [
            IncrementalChecker(self.static + rest, self.target)
            for rest in self.rests
        ]
        for checker in self._checkers:
            if checker.entails_with(()):
                raise PreconditionError(
                    "the static part with the justification rest already "
                    "entails the target; the justification was not minimal"
                )

    def condition_holds(self, replacement: Union[Axiom, Body]) -> bool:
        """True iff the replacement breaks the entailment in every rest."""
        body = _body(replacement)
        return all(not ch.entails_with([body]) for ch in self._checkers)

    def needs_weakening(self, axiom: Union[Axiom, Body]) -> bool:
        """True iff the axiom completes the entailment in every rest."""
        body = _body(axiom)
        return all(ch.entails_with([body]) for ch in self._checkers)


def oracle_step(
    rel: WeakeningRelation,
    beta: Union[Axiom, Body],
    budget: Union[int, _Budget, None] = None,
) -> Axiom:
    """One deterministic weakening step; minimal axioms map to themselves."""
    ax = _as_axiom(beta)
    successors = rel.one_step_successors(ax, budget)
    return successors[0] if successors else ax


def weaken_until(
    rel: WeakeningRelation,
    ctx: WeakeningContext,
    beta: Union[Axiom, Body],
    budget: Union[int, _Budget, None] = None,
) -> Axiom:
    """Iterate the oracle until the repair condition holds.

    Well-foundedness bounds the iteration; at the latest a tautology is
    reached, which satisfies the condition because the justification was
    minimal.
    """
    b = _resolve_budget(budget)
    gamma = _as_axiom(beta)
    if ctx.condition_holds(gamma.body):
        raise PreconditionError("the axiom does not entail the target; nothing to weaken")
    while True:
        nxt = oracle_step(rel, gamma, b)
        if nxt.body == gamma.body:
            raise EngineInvariantError(
                "reached a minimal axiom whose condition still fails"
            )
        gamma = nxt
        if ctx.condition_holds(gamma.body):
            return gamma


def max_strong_weakenings(
    rel: WeakeningRelation,
    ctx: WeakeningContext,
    beta: Union[Axiom, Body],
    budget: Union[int, _Budget, None] = None,
) -> tuple[Axiom, ...]:
    """All maximally strong weakenings of the axiom in its justification.

    Breadth-first search along one-step successors: axioms that still
    entail the target are expanded, the first axiom on each path that does
    not is collected, and collected axioms weaker than another collected
    axiom are removed.
    """
    b = _resolve_budget(budget)
    ax = _as_axiom(beta)
    if ctx.condition_holds(ax.body):
        raise PreconditionError("the axiom does not entail the target; nothing to weaken")
    seen = {render_body(ax.body)}
    queue: deque[Axiom] = deque([ax])
    collected: dict[str, Axiom] = {}
    while queue:
        current = queue.popleft()
        for succ in rel.one_step_successors(current, b):
            key = render_body(succ.body)
            if key in seen:
                continue
            seen.add(key)
            b.spend()
            if ctx.condition_holds(succ.body):
                collected[key] = succ
            else:
                queue.append(succ)
    keys = sorted(collected)
    strongest = [
        collected[k]
        for k in keys
        if not any(
            k2 != k and rel.is_weaker(collected[k2], collected[k]) for k2 in keys
        )
    ]
    # deduplicate modulo axiom equivalence, keeping the smallest rendering
    result: list[Axiom] = []
    for axiom in strongest:
        if not any(
            entails([axiom.body], kept.body) and entails([kept.body], axiom.body)
            for kept in result
        ):
            result.append(axiom)
    return tuple(result)


def single_max_strong_syn(
    ctx: WeakeningContext, beta: Union[Axiom, Body]
) -> Axiom:
    """One maximally strong weakening per the syntactic relation.

    Greedy ascent from ⊤ toward the right-hand side: at each step the
    candidates add back one concept name or one restriction over ⊤ at a
    place where the right-hand side has one (in depth-first position
    order), and the first candidate that keeps the condition satisfied is
    taken. When every candidate re-entails the target, the current concept
    is maximally strong. Runs in polynomially many entailment checks.
    """
    ax = _as_axiom(beta)
    body = ax.body
    if not isinstance(body, GCI):
        raise PreconditionError("single maximally strong weakening needs a GCI")
    if ctx.condition_holds(body):
        raise PreconditionError("the axiom does not entail the target; nothing to weaken")
    tree = PositionTree(body.rhs)
    kept: frozenset[tuple[int, ...]] = frozenset()
    while True:
        step = None
        for path in tree.addable(kept):
            candidate = GCI(body.lhs, tree.realize(kept | {path}))
            if ctx.condition_holds(candidate):
                step = path
                break
        if step is None:
            return Axiom(ax.label, GCI(body.lhs, reduce_concept(tree.realize(kept))))
        kept = kept | {step}
