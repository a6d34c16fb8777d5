"""Upper neighbors and syntactic generalizations of EL concepts.

``upper_neighbors`` computes the concepts immediately above a concept in the
empty-ontology subsumption order: drop one top-level concept name, or
replace one top-level existential restriction by the conjunction of the
restrictions over the upper neighbors of its filler.

Syntactic generalization replaces occurrences of non-top subconcepts by the
top concept. Its one-step relation only ever replaces a single occurrence of
a concept name or of a restriction over the top concept, followed by a
filter keeping the subsumption-minimal candidates. Membership tests
(``syn_generalizes``) quantify over all occurrence subsets, which is
exponential in the worst case but fine at the sizes the repair engine
handles; the searches that must stay polynomial never call them.

Concepts are reduced on the way in and on the way out of every operation
here; equality is canonical-render equality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .concepts import (
    Concept,
    Conj,
    Exists,
    Name,
    TOP,
    Top,
    conj,
    conjuncts,
    msize,
    structural_text,
)
from .errors import PreconditionError, SearchBudgetExceededError
from .reasoner import reduce_concept, strictly_subsumed_empty, subsumes_empty

__all__ = [
    "NeighborSet",
    "upper_neighbors",
    "syn_one_step_up",
    "syn_generalizes",
    "syn_one_step_down_toward",
    "all_syntactic_generalizations",
    "PositionTree",
    "default_search_budget",
]

DEFAULT_SEARCH_BUDGET = 100_000


def default_search_budget() -> int:
    env = os.environ.get("ELGR_SEARCH_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEARCH_BUDGET


@dataclass(frozen=True)
class NeighborSet:
    """A reduced source concept and its strict upper neighbors.

    Members are reduced, pairwise incomparable, and each strictly subsumes
    the source.
    """

    source: Concept
    neighbors: tuple[Concept, ...]


def _canonical_set(concepts: Iterator[Concept]) -> tuple[Concept, ...]:
    by_text = {structural_text(c): c for c in concepts}
    return tuple(v for _, v in sorted(by_text.items()))


def upper_neighbors(c: Concept) -> NeighborSet:
    """Upper neighbors of ``c`` in the empty-ontology subsumption order."""
    source = reduce_concept(c)
    out: list[Concept] = []
    parts = conjuncts(source)
    for i, p in enumerate(parts):
        rest = list(parts[:i] + parts[i + 1 :])
        if isinstance(p, Name):
            out.append(reduce_concept(conj(rest)))
        elif isinstance(p, Exists):
            ups = upper_neighbors(p.filler).neighbors
            repl = [Exists(p.role, f) for f in ups]
            out.append(reduce_concept(conj(rest + repl)))
    return NeighborSet(source, _canonical_set(iter(out)))


# ---------------------------------------------------------------------------
# Occurrence trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Occurrence:
    path: tuple[int, ...]
    concept: Concept  # a Name or Exists occurrence
    children: tuple["_Occurrence", ...]


def _build_occurrences(c: Concept, prefix: tuple[int, ...]) -> tuple[_Occurrence, ...]:
    nodes = []
    for i, p in enumerate(conjuncts(c)):
        path = prefix + (i,)
        if isinstance(p, Name):
            nodes.append(_Occurrence(path, p, ()))
        elif isinstance(p, Exists):
            nodes.append(_Occurrence(path, p, _build_occurrences(p.filler, path)))
    return tuple(nodes)


class PositionTree:
    """Name and existential occurrences of a reduced concept.

    A kept set is a parent-closed set of occurrence paths; realizing it
    rebuilds the concept with every unkept occurrence replaced by ⊤ (a kept
    existential with no kept children realizes as a restriction over ⊤).
    The empty kept set realizes as ⊤ and the full set as the concept itself.
    """

    def __init__(self, c: Concept):
        self.source = reduce_concept(c)
        self.roots = _build_occurrences(self.source, ())
        self.by_path: dict[tuple[int, ...], _Occurrence] = {}

        def index(nodes: tuple[_Occurrence, ...]) -> None:
            for n in nodes:
                self.by_path[n.path] = n
                index(n.children)

        index(self.roots)

    @property
    def all_paths(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.by_path)

    def realize(self, kept: frozenset[tuple[int, ...]]) -> Concept:
        def build(nodes: tuple[_Occurrence, ...]) -> Concept:
            parts = []
            for n in nodes:
                if n.path not in kept:
                    continue
                if isinstance(n.concept, Name):
                    parts.append(n.concept)
                else:
                    assert isinstance(n.concept, Exists)
                    parts.append(Exists(n.concept.role, build(n.children)))
            return conj(parts)

        return build(self.roots)

    def addable(self, kept: frozenset[tuple[int, ...]]) -> list[tuple[int, ...]]:
        """Paths addable to ``kept``, in depth-first order.

        A name occurrence comes back whole; an existential occurrence comes
        back as a restriction over ⊤ (children stay out until added).
        """
        out = []
        for path, node in self.by_path.items():
            if path in kept:
                continue
            parent = path[:-1]
            if len(path) == 1 or parent in kept:
                out.append(path)
        out.sort()
        return out

    def kept_sets(self, budget: int) -> Iterator[frozenset[tuple[int, ...]]]:
        """All parent-closed kept sets; raises once more than ``budget``."""

        def options(node: _Occurrence) -> list[frozenset[tuple[int, ...]]]:
            absent: frozenset[tuple[int, ...]] = frozenset()
            present = [
                frozenset({node.path}).union(*combo) if combo else frozenset({node.path})
                for combo in product(*(options(ch) for ch in node.children))
            ]
            return [absent] + present

        count = 0
        for combo in product(*(options(r) for r in self.roots)):
            kept = frozenset().union(*combo) if combo else frozenset()
            count += 1
            if count > budget:
                raise SearchBudgetExceededError(
                    "occurrence-subset enumeration exceeded the search budget"
                )
            yield kept


# ---------------------------------------------------------------------------
# Syntactic generalization
# ---------------------------------------------------------------------------


def _variant_count(c: Concept) -> int:
    if isinstance(c, Top):
        return 1
    if isinstance(c, Name):
        return 2
    if isinstance(c, Exists):
        return _variant_count(c.filler) + 1
    assert isinstance(c, Conj)
    total = 1
    for p in c.parts:
        total *= _variant_count(p)
    return total + 1


def _variants(c: Concept) -> list[Concept]:
    if isinstance(c, Top):
        return [TOP]
    if isinstance(c, Name):
        return [c, TOP]
    if isinstance(c, Exists):
        return [Exists(c.role, v) for v in _variants(c.filler)] + [TOP]
    assert isinstance(c, Conj)
    combos = [conj(combo) for combo in product(*(_variants(p) for p in c.parts))]
    return combos + [TOP]


def all_syntactic_generalizations(
    c: Concept, budget: int | None = None
) -> dict[str, Concept]:
    """Reduced representatives of every syntactic generalization of ``c``.

    Includes the zero-replacement case (the reduced concept itself), keyed
    by canonical rendering.
    """
    limit = budget if budget is not None else default_search_budget()
    source = reduce_concept(c)
    if _variant_count(source) > limit:
        raise SearchBudgetExceededError(
            "syntactic-generalization enumeration exceeded the search budget"
        )
    out: dict[str, Concept] = {}
    for v in _variants(source):
        rv = reduce_concept(v)
        out.setdefault(structural_text(rv), rv)
    return out


def syn_generalizes(
    c: Concept, d: Concept, *, strict: bool = False, budget: int | None = None
) -> bool:
    """True iff ``d`` is a syntactic generalization of ``c``.

    The reflexive variant (default) also accepts equivalent concepts; with
    ``strict=True`` equivalents are rejected. Both sides are reduced and
    compared modulo equivalence.
    """
    rc = reduce_concept(c)
    rd = reduce_concept(d)
    tc, td = structural_text(rc), structural_text(rd)
    if tc == td:
        return not strict
    if msize(rd) >= msize(rc):
        return False
    if not subsumes_empty(rc, rd):
        return False
    return td in all_syntactic_generalizations(rc, budget)


def syn_one_step_up(c: Concept) -> tuple[Concept, ...]:
    """One-step syntactic generalizations of ``c``, up to equivalence.

    Candidates replace a single occurrence of a concept name or of a
    restriction over ⊤; candidates strictly above another candidate are
    dropped.
    """
    tree = PositionTree(c)
    full = tree.all_paths
    by_text: dict[str, Concept] = {}
    for path, node in tree.by_path.items():
        is_name = isinstance(node.concept, Name)
        is_top_exists = (
            isinstance(node.concept, Exists) and node.concept.filler == TOP
        )
        if not (is_name or is_top_exists):
            continue
        cand = reduce_concept(tree.realize(full - {path}))
        by_text.setdefault(structural_text(cand), cand)
    survivors = [
        cand
        for cand in by_text.values()
        if not any(
            other is not cand and strictly_subsumed_empty(other, cand)
            for other in by_text.values()
        )
    ]
    return _canonical_set(iter(survivors))


def syn_one_step_down_toward(
    d: Concept, dprime: Concept, budget: int | None = None
) -> tuple[Concept, ...]:
    """Concepts one syntactic step below ``dprime`` reachable from ``d``.

    Returns every concept that generalizes ``d``, lies one step below
    ``dprime``, and is obtained by adding back a concept name or a
    restriction over ⊤ at a place where the reduced form of ``d`` has one.
    """
    limit = budget if budget is not None else default_search_budget()
    rd = reduce_concept(d)
    rdp = reduce_concept(dprime)
    if not syn_generalizes(rd, rdp, budget=budget):
        raise PreconditionError("second concept must generalize the first")
    target_text = structural_text(rdp)
    tree = PositionTree(rd)
    candidates: dict[str, Concept] = {}
    for kept in tree.kept_sets(limit):
        if structural_text(reduce_concept(tree.realize(kept))) != target_text:
            continue
        for path in tree.addable(kept):
            cand = reduce_concept(tree.realize(kept | {path}))
            candidates.setdefault(structural_text(cand), cand)
    out = [
        cand
        for cand in candidates.values()
        if any(structural_text(u) == target_text for u in syn_one_step_up(cand))
    ]
    return _canonical_set(iter(out))
