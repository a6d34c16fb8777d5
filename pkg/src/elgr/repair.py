"""Classical, gentle, and modified gentle repair.

Classical repair removes a minimal hitting set of all justifications.
Gentle repair replaces every hitting-set member with a weaker axiom that
breaks the entailment in each justification containing it, and iterates,
because one pass may leave the consequence derivable through the weakened
axioms. Modified gentle repair weakens one axiom of one justification per
iteration. Both terminate within ``2^|refutable|`` iterations, which is
enforced as a hard invariant; runs record a full trace.

Replacements come from a strategy: the tautology (equivalent to deletion),
iterated one-step oracles, a deterministic pick among the maximally strong
weakenings, a fixed script of ``label => axiom`` choices, or an interactive
callback. Every proposed replacement is validated against the repair
condition before being applied; scripted and interactive proposals are also
checked to be genuinely weaker under the run's weakening relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .axioms import Axiom, Body, Ontology, axiom_sort_key
from .errors import (
    EngineInvariantError,
    NotEntailedError,
    ScriptExhaustedError,
    StaticEntailsError,
    StrategyViolationError,
)
from .justifications import (
    Justification,
    all_justifications,
    find_one_justification,
    minimal_hitting_sets,
)
from .parser import parse_axiom
from .reasoner import EntailmentContext, IncrementalChecker, is_tautology
from .render import render_body
from .weakening import (
    WeakeningContext,
    WeakeningRelation,
    is_weaker_general,
    max_strong_weakenings,
    tautology_for,
    weaken_until,
)

__all__ = [
    "RepairProblem",
    "Replacement",
    "Iteration",
    "RepairTrace",
    "Strategy",
    "TautologyStrategy",
    "OracleStrategy",
    "MaxStrongStrategy",
    "ScriptedStrategy",
    "InteractiveStrategy",
    "parse_script",
    "classical_repair",
    "gentle_repair",
    "modified_gentle_repair",
    "verify_repair",
]


@dataclass(frozen=True)
class RepairProblem:
    """An ontology with an unwanted consequence to remove."""

    ontology: Ontology
    target: Body

    def validate(self) -> None:
        """Check the repair precondition; raises the specific error."""
        checker = IncrementalChecker(self.ontology.static, self.target)
        if checker.entails_with(()):
            raise StaticEntailsError("the static part alone entails the target")
        if not checker.entails_with(self.ontology.refutable):
            raise NotEntailedError("the ontology does not entail the target")


@dataclass(frozen=True)
class Replacement:
    label: str
    old: str
    new: str | None  # None means the axiom was removed


@dataclass(frozen=True)
class Iteration:
    justifications: tuple[tuple[str, ...], ...]
    hitting_set: tuple[str, ...]
    replacements: tuple[Replacement, ...]
    entailed_after: bool


@dataclass
class RepairTrace:
    """Iteration-by-iteration record of a repair run."""

    algorithm: str
    weakening: str | None
    iterations: list[Iteration] = field(default_factory=list)
    final_ontology: Ontology | None = None

    @property
    def iteration_count(self) -> int:
        return len(self.iterations)

    def to_dict(self) -> dict:
        final = self.final_ontology
        return {
            "algorithm": self.algorithm,
            "weakening": self.weakening,
            "iterations": [
                {
                    "justifications": [list(j) for j in it.justifications],
                    "hitting_set": list(it.hitting_set),
                    "replacements": [
                        {"label": r.label, "old": r.old, "new": r.new}
                        for r in it.replacements
                    ],
                    "entailed_after": it.entailed_after,
                }
                for it in self.iterations
            ],
            "final": {
                "static": [
                    {"label": a.label, "text": render_body(a)}
                    for a in (final.static if final else ())
                ],
                "refutable": [
                    {"label": a.label, "text": render_body(a)}
                    for a in (final.refutable if final else ())
                ],
            },
            "iteration_count": self.iteration_count,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


class Strategy:
    """Chooses which axiom to weaken and what to replace it with."""

    name = "strategy"
    #: automated strategies fail fast on a violating proposal; interactive
    #: ones are asked again
    interactive = False
    #: fall back to the tautology when the proposal violates the condition
    tautology_fallback = False

    def choose_axiom(self, justification: Justification) -> Axiom:
        return justification.sorted_axioms[0]

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        raise NotImplementedError


class TautologyStrategy(Strategy):
    """Replace by a tautology; equivalent to removing the axiom."""

    name = "tautology"
    tautology_fallback = True

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        return tautology_for(beta)


class OracleStrategy(Strategy):
    """Iterate the relation's one-step oracle until the condition holds."""

    name = "oracle"
    tautology_fallback = True

    def __init__(self, relation: WeakeningRelation, budget: int | None = None):
        self.relation = relation
        self.budget = budget

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        return weaken_until(self.relation, ctx, beta, self.budget).body


class MaxStrongStrategy(Strategy):
    """Deterministically pick the first maximally strong weakening."""

    name = "max-strong"

    def __init__(self, relation: WeakeningRelation, budget: int | None = None):
        self.relation = relation
        self.budget = budget

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        options = max_strong_weakenings(self.relation, ctx, beta, self.budget)
        return options[0].body


class ScriptedStrategy(Strategy):
    """Consume a fixed list of ``(label, replacement text)`` choices."""

    name = "scripted"

    def __init__(self, choices: Sequence[tuple[str, str]]):
        self.choices = list(choices)
        self.cursor = 0

    def _peek(self) -> tuple[str, str]:
        if self.cursor >= len(self.choices):
            raise ScriptExhaustedError(
                "the script ran out of choices before the repair finished"
            )
        return self.choices[self.cursor]

    def choose_axiom(self, justification: Justification) -> Axiom:
        label, _ = self._peek()
        for axiom in justification.sorted_axioms:
            if axiom.label == label:
                return axiom
        raise StrategyViolationError(
            f"scripted label {label!r} is not in the current justification",
            justification.labels,
        )

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        label, text = self._peek()
        if label != beta.label:
            raise StrategyViolationError(
                f"script expects axiom {label!r}, asked to weaken {beta.label!r}"
            )
        self.cursor += 1
        return parse_axiom(text)


class InteractiveStrategy(Strategy):
    """Ask a callback for each decision; re-ask after a rejected proposal.

    The callback receives a prompt dict carrying the justification (labels
    and texts), the axiom up for weakening, and the error message of the
    previous attempt, and returns the replacement text.
    """

    name = "interactive"
    interactive = True
    max_attempts = 25

    def __init__(self, callback: Callable[[dict], str]):
        self.callback = callback
        self._last_error: str | None = None

    def propose(self, ctx: WeakeningContext, beta: Axiom) -> Body:
        prompt = {
            "axiom": {"label": beta.label, "text": render_body(beta)},
            "static": [render_body(a) for a in ctx.static],
            "justification_rest": [render_body(a) for a in ctx.rest],
            "target": render_body(ctx.target),
            "error": self._last_error,
        }
        return parse_axiom(self.callback(prompt))

    def note_rejection(self, message: str) -> None:
        self._last_error = message


def parse_script(text: str) -> list[tuple[str, str]]:
    """Parse scripted choices, one ``label => axiom-text`` per line."""
    choices = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        label, sep, axiom_text = line.partition("=>")
        if not sep:
            raise ValueError(f"script line without '=>': {line!r}")
        choices.append((label.strip(), axiom_text.strip()))
    return choices


# ---------------------------------------------------------------------------
# Repair runs
# ---------------------------------------------------------------------------


def _canonical_hitting_set(
    justs: Sequence[Justification],
) -> tuple[Axiom, ...]:
    options = minimal_hitting_sets(justs)
    keyed = sorted(
        options, key=lambda h: tuple(sorted(a.label for a in h))
    )
    return tuple(sorted(keyed[0], key=axiom_sort_key))


def _validated_proposal(
    strategy: Strategy,
    ctx: WeakeningContext,
    beta: Axiom,
    relation: WeakeningRelation | None,
) -> Body:
    """Run the strategy and enforce the repair condition on its output.

    Automated strategies either guarantee the condition by construction or
    fall back to the tautology; a violating scripted proposal is a bug in
    the script and fails fast, while interactive strategies get re-asked.
    """
    attempts = 0
    while True:
        attempts += 1
        gamma = strategy.propose(ctx, beta)
        needs_weaker_check = isinstance(
            strategy, (ScriptedStrategy, InteractiveStrategy)
        )
        problem: str | None = None
        if needs_weaker_check and not is_tautology(gamma):
            if relation is not None and not relation.is_weaker(beta.body, gamma):
                problem = (
                    f"replacement {render_body(gamma)!r} is not weaker than "
                    f"{render_body(beta)!r} under the {relation.kind} relation"
                )
            elif relation is None and not is_weaker_general(beta.body, gamma):
                problem = (
                    f"replacement {render_body(gamma)!r} is not weaker than "
                    f"{render_body(beta)!r}"
                )
        if problem is None and not ctx.condition_holds(gamma):
            problem = (
                f"replacement {render_body(gamma)!r} still entails the target "
                "within its justification"
            )
        if problem is None:
            return gamma
        if strategy.tautology_fallback:
            fallback = tautology_for(beta)
            if not ctx.condition_holds(fallback):
                raise EngineInvariantError(
                    "tautology fallback violates the condition; "
                    "justification minimality is broken"
                )
            return fallback
        if isinstance(strategy, InteractiveStrategy):
            strategy.note_rejection(problem)
            if attempts >= strategy.max_attempts:
                raise StrategyViolationError(
                    f"no valid interactive choice after {attempts} attempts"
                )
            continue
        raise StrategyViolationError(problem, tuple(a.label for a in ctx.rest))


def _iteration_bound(problem: RepairProblem) -> int:
    return 2 ** len(problem.ontology.refutable)


def classical_repair(problem: RepairProblem) -> tuple[Ontology, RepairTrace]:
    """Remove a deterministic minimal hitting set of all justifications."""
    problem.validate()
    trace = RepairTrace(algorithm="classical", weakening=None)
    justs = all_justifications(problem.ontology, problem.target)
    hitting = _canonical_hitting_set(justs)
    result = problem.ontology.without_refutable(a.label for a in hitting)
    entailed_after = EntailmentContext(result.axioms).entails(problem.target)
    trace.iterations.append(
        Iteration(
            justifications=tuple(j.labels for j in justs),
            hitting_set=tuple(a.label for a in hitting),
            replacements=tuple(
                Replacement(a.label, render_body(a), None) for a in hitting
            ),
            entailed_after=entailed_after,
        )
    )
    trace.final_ontology = result
    if entailed_after or not verify_repair(problem, result):
        raise EngineInvariantError("classical repair did not produce a repair")
    return result, trace


def gentle_repair(
    problem: RepairProblem,
    strategy: Strategy,
    relation: WeakeningRelation | None = None,
) -> tuple[Ontology, RepairTrace]:
    """Weaken every member of a minimal hitting set per iteration.

    Each replacement must break the entailment in every justification
    recorded at the start of the iteration that contains the replaced
    axiom; the loop ends when the target is no longer entailed.
    """
    problem.validate()
    trace = RepairTrace(
        algorithm="gentle", weakening=relation.kind if relation else None
    )
    current = problem.ontology
    bound = _iteration_bound(problem)
    while EntailmentContext(current.axioms).entails(problem.target):
        if trace.iteration_count >= bound:
            raise EngineInvariantError(
                "gentle repair exceeded the exponential iteration bound"
            )
        justs = all_justifications(current, problem.target)
        hitting = _canonical_hitting_set(justs)
        replacements = []
        for member in hitting:
            containing = [j for j in justs if member in j]
            rests = [
                tuple(a for a in j.sorted_axioms if a.label != member.label)
                for j in containing
            ]
            ctx = WeakeningContext(
                current.static,
                rests[0],
                problem.target,
                extra_rests=rests[1:],
            )
            gamma = _validated_proposal(strategy, ctx, member, relation)
            current = current.replace_refutable(member.label, gamma)
            replacements.append(
                Replacement(member.label, render_body(member), render_body(gamma))
            )
        entailed_after = EntailmentContext(current.axioms).entails(problem.target)
        trace.iterations.append(
            Iteration(
                justifications=tuple(j.labels for j in justs),
                hitting_set=tuple(a.label for a in hitting),
                replacements=tuple(replacements),
                entailed_after=entailed_after,
            )
        )
    trace.final_ontology = current
    if not verify_repair(problem, current):
        raise EngineInvariantError("gentle repair did not produce a repair")
    return current, trace


def modified_gentle_repair(
    problem: RepairProblem,
    strategy: Strategy,
    relation: WeakeningRelation | None = None,
) -> tuple[Ontology, RepairTrace]:
    """Weaken one axiom of one justification per iteration."""
    problem.validate()
    trace = RepairTrace(
        algorithm="modified", weakening=relation.kind if relation else None
    )
    current = problem.ontology
    bound = _iteration_bound(problem)
    while EntailmentContext(current.axioms).entails(problem.target):
        if trace.iteration_count >= bound:
            raise EngineInvariantError(
                "modified gentle repair exceeded the exponential iteration bound"
            )
        just = find_one_justification(current, problem.target)
        beta = strategy.choose_axiom(just)
        rest = tuple(a for a in just.sorted_axioms if a.label != beta.label)
        ctx = WeakeningContext(current.static, rest, problem.target)
        gamma = _validated_proposal(strategy, ctx, beta, relation)
        current = current.replace_refutable(beta.label, gamma)
        entailed_after = EntailmentContext(current.axioms).entails(problem.target)
        trace.iterations.append(
            Iteration(
                justifications=(just.labels,),
                hitting_set=(beta.label,),
                replacements=(
                    Replacement(beta.label, render_body(beta), render_body(gamma)),
                ),
                entailed_after=entailed_after,
            )
        )
    trace.final_ontology = current
    if not verify_repair(problem, current):
        raise EngineInvariantError("modified gentle repair did not produce a repair")
    return current, trace


def verify_repair(problem: RepairProblem, candidate: Ontology) -> bool:
    """Check that the candidate's refutable part repairs the problem.

    The static part with the candidate's refutable part must not entail the
    target, and every candidate refutable axiom must be entailed by the
    original ontology (which bounds the candidate's consequences by the
    original's).
    """
    candidate_axioms = problem.ontology.static + candidate.refutable
    if EntailmentContext(candidate_axioms).entails(problem.target):
        return False
    original = EntailmentContext(problem.ontology.axioms)
    return all(original.entails(a) for a in candidate.refutable)
