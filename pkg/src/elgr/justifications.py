"""Justifications and minimal hitting sets.

A justification is a minimal subset of the refutable part that, together
with the static part, entails the target. One justification is found by
deletion-based shrinking (black-box, engine-agnostic); all justifications
are enumerated with a hitting-set tree; hitting sets are computed
exhaustively over the union of the justifications with subset-minimality
filtering. All outputs are canonically ordered by axiom label.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .axioms import Axiom, Body, Ontology, axiom_sort_key
from .errors import (
    NotEntailedError,
    SearchBudgetExceededError,
    StaticEntailsError,
)
from .neighbors import default_search_budget
from .reasoner import IncrementalChecker

__all__ = [
    "Justification",
    "find_one_justification",
    "all_justifications",
    "minimal_hitting_sets",
]


@dataclass(frozen=True)
class Justification:
    """A minimal refutable subset entailing the target."""

    axioms: frozenset[Axiom]
    target: Body

    @property
    def sorted_axioms(self) -> tuple[Axiom, ...]:
        return tuple(sorted(self.axioms, key=axiom_sort_key))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.sorted_axioms)

    def __contains__(self, axiom: Axiom) -> bool:
        return axiom in self.axioms


def _checker(ontology: Ontology, target: Union[Axiom, Body]) -> IncrementalChecker:
    return IncrementalChecker(ontology.static, target)


def _validate(
    ontology: Ontology, checker: IncrementalChecker
) -> None:
    if checker.entails_with(()):
        raise StaticEntailsError("the static part alone entails the target")
    if not checker.entails_with(ontology.refutable):
        raise NotEntailedError("the ontology does not entail the target")


def _shrink(
    checker: IncrementalChecker, axioms: list[Axiom], target: Body
) -> Justification:
    # Deletion-based minimization: walk in label order, drop every axiom
    # whose removal keeps the target entailed.
    current = list(axioms)
    for axiom in list(current):
        trial = [a for a in current if a is not axiom]
        if checker.entails_with(trial):
            current = trial
    return Justification(frozenset(current), target)


def find_one_justification(
    ontology: Ontology, target: Union[Axiom, Body]
) -> Justification:
    """One justification, minimized by deletion in label order."""
    checker = _checker(ontology, target)
    _validate(ontology, checker)
    ordered = sorted(ontology.refutable, key=axiom_sort_key)
    return _shrink(checker, ordered, checker.query_body)


def all_justifications(
    ontology: Ontology,
    target: Union[Axiom, Body],
    budget: int | None = None,
) -> tuple[Justification, ...]:
    """All justifications, via a hitting-set tree over found justifications.

    Each tree node removes one axiom of its parent's justification and
    recomputes a justification for the remainder; exploration is
    breadth-first and deduplicated, so the enumeration is complete.
    """
    limit = budget if budget is not None else default_search_budget()
    checker = _checker(ontology, target)
    _validate(ontology, checker)
    ordered = sorted(ontology.refutable, key=axiom_sort_key)
    found: dict[frozenset[Axiom], Justification] = {}
    visited: set[frozenset[str]] = set()
    queue: deque[frozenset[str]] = deque([frozenset()])
    nodes = 0
    while queue:
        removed = queue.popleft()
        if removed in visited:
            continue
        visited.add(removed)
        nodes += 1
        if nodes > limit:
            raise SearchBudgetExceededError(
                "justification enumeration exceeded the search budget"
            )
        remaining = [a for a in ordered if a.label not in removed]
        reuse = next(
            (j for s, j in found.items() if not any(a.label in removed for a in s)),
            None,
        )
        if reuse is None:
            if not checker.entails_with(remaining):
                continue
            just = _shrink(checker, remaining, checker.query_body)
            found.setdefault(just.axioms, just)
        else:
            just = reuse
        for axiom in just.sorted_axioms:
            child = removed | {axiom.label}
            if child not in visited:
                queue.append(child)
    ordered_justs = sorted(found.values(), key=lambda j: j.labels)
    return tuple(ordered_justs)


def minimal_hitting_sets(
    justifications: Iterable[Justification],
) -> tuple[frozenset[Axiom], ...]:
    """All subset-minimal sets of axioms intersecting every justification.

    Exhaustive over the union of the justifications; the result is ordered
    by size, then by label sequence.
    """
    justs = list(justifications)
    if not justs:
        raise ValueError("need at least one justification")
    if any(not j.axioms for j in justs):
        raise ValueError("justifications must be non-empty")
    universe = sorted(
        {a for j in justs for a in j.axioms}, key=axiom_sort_key
    )
    hitting: list[tuple[tuple[str, ...], frozenset[Axiom]]] = []
    for k in range(1, len(universe) + 1):
        for combo in combinations(universe, k):
            candidate = frozenset(combo)
            if not all(candidate & j.axioms for j in justs):
                continue
            if any(h < candidate for _, h in hitting):
                continue
            hitting.append((tuple(a.label for a in combo), candidate))
    hitting.sort(key=lambda pair: (len(pair[1]), pair[0]))
    return tuple(h for _, h in hitting)
