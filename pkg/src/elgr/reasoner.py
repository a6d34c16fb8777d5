"""Reasoning for EL: empty-ontology subsumption, reduced forms, entailment.

Two decision procedures live here and are kept deliberately independent so
they can be checked against each other:

* ``subsumes_empty`` decides subsumption with no ontology through the
  recursive structural characterization (top-level names must be covered and
  every existential restriction on the right must be matched on the left).

* ``EntailmentContext`` decides ``axioms ⊨ query`` by normalizing all GCIs
  to the standard EL normal forms (every complex subconcept gets a defined
  name, with definitional inclusions in both directions) and saturating with
  the completion rules to a fixpoint. Assertions are encoded through one
  fresh concept name per individual: ``C(a)`` becomes ``N_a ⊑ C`` and
  ``r(a,b)`` becomes ``N_a ⊑ ∃r.N_b``, which is sound and complete for EL
  without nominals. GCI queries are decided against the GCIs alone, since in
  EL a GCI follows from a TBox together with an ABox exactly when it follows
  from the TBox.

A saturation is immutable once built; ``_Core.extended`` clones it and
continues the fixpoint with extra axioms, which keeps repeated entailment
checks against a fixed base (the inner loop of every weakening search)
cheap.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .axioms import Axiom, Body, ConceptAssertion, GCI, RoleAssertion
from .concepts import (
    Concept,
    Conj,
    Exists,
    Name,
    TOP,
    Top,
    conj,
    conjuncts,
    structural_text,
    top_existentials,
    top_names,
)

__all__ = [
    "subsumes_empty",
    "strictly_subsumed_empty",
    "equivalent_empty",
    "reduce_concept",
    "EntailmentContext",
    "IncrementalChecker",
    "entails",
    "is_tautology",
]

TOP_NAME = "__top"


# ---------------------------------------------------------------------------
# Structural subsumption and reduced forms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def subsumes_empty(c: Concept, d: Concept) -> bool:
    """True iff ``c`` is subsumed by ``d`` with no ontology."""
    if not top_names(d) <= top_names(c):
        return False
    c_ex = top_existentials(c)
    for e in top_existentials(d):
        if not any(
            f.role == e.role and subsumes_empty(f.filler, e.filler) for f in c_ex
        ):
            return False
    return True


def equivalent_empty(c: Concept, d: Concept) -> bool:
    return subsumes_empty(c, d) and subsumes_empty(d, c)


def strictly_subsumed_empty(c: Concept, d: Concept) -> bool:
    return subsumes_empty(c, d) and not subsumes_empty(d, c)


@lru_cache(maxsize=1 << 16)
def reduce_concept(c: Concept) -> Concept:
    """Canonical reduced form of ``c``.

    Bottom-up, every conjunct that is subsumed by a distinct sibling is
    deleted; of two mutually equivalent siblings the one with the larger
    rendering goes. Surviving conjuncts are sorted by their rendering, so
    concepts equal up to associativity and commutativity of conjunction
    reduce to structurally equal values.
    """
    if isinstance(c, (Top, Name)):
        return c
    if isinstance(c, Exists):
        return Exists(c.role, reduce_concept(c.filler))
    assert isinstance(c, Conj)
    parts = [reduce_concept(p) for p in c.parts]
    keyed = [(structural_text(p), i, p) for i, p in enumerate(parts)]
    kept: list[tuple[str, Concept]] = []
    for text_i, i, p in keyed:
        redundant = False
        for text_j, j, q in keyed:
            if i == j:
                continue
            if subsumes_empty(q, p):
                if not subsumes_empty(p, q) or (text_j, j) < (text_i, i):
                    redundant = True
                    break
        if not redundant:
            kept.append((text_i, p))
    kept.sort()
    return conj([p for _, p in kept])


def is_tautology(axiom: Union[Axiom, Body]) -> bool:
    """True iff the axiom holds in every interpretation."""
    body = axiom.body if isinstance(axiom, Axiom) else axiom
    if isinstance(body, GCI):
        return subsumes_empty(body.lhs, body.rhs)
    if isinstance(body, ConceptAssertion):
        return subsumes_empty(TOP, body.concept)
    return False


# ---------------------------------------------------------------------------
# Completion-based entailment
# ---------------------------------------------------------------------------


def _ind_name(individual: str) -> str:
    return f"__i_{individual}"


class _Saturation:
    """Normalized rule set plus its completion fixpoint.

    Rules are over plain name strings; values in the rule indexes are
    tuples, so clones can share them and replace on append.
    """

    __slots__ = (
        "S",
        "edges",
        "preds",
        "by_lhs",
        "conj_rules",
        "ex_rhs",
        "ex_lhs",
        "table",
        "fresh",
        "pending",
    )

    def __init__(self) -> None:
        self.S: dict[str, set[str]] = {TOP_NAME: {TOP_NAME}}
        self.edges: set[tuple[str, str, str]] = set()
        self.preds: dict[str, tuple[tuple[str, str], ...]] = {}
        self.by_lhs: dict[str, tuple[str, ...]] = {}
        self.conj_rules: dict[str, tuple[tuple[str, str], ...]] = {}
        self.ex_rhs: dict[str, tuple[tuple[str, str], ...]] = {}
        self.ex_lhs: dict[tuple[str, str], tuple[str, ...]] = {}
        self.table: dict[str, str] = {"Top": TOP_NAME}
        self.fresh = 0
        self.pending: deque = deque()

    def clone(self) -> "_Saturation":
        new = _Saturation.__new__(_Saturation)
        new.S = {k: set(v) for k, v in self.S.items()}
        new.edges = set(self.edges)
        new.preds = dict(self.preds)
        new.by_lhs = dict(self.by_lhs)
        new.conj_rules = dict(self.conj_rules)
        new.ex_rhs = dict(self.ex_rhs)
        new.ex_lhs = dict(self.ex_lhs)
        new.table = dict(self.table)
        new.fresh = self.fresh
        new.pending = deque()
        return new

    # -- names -----------------------------------------------------------

    def ensure_name(self, name: str) -> None:
        if name not in self.S:
            self.S[name] = set()
            self.add_sub(name, name)
            self.add_sub(name, TOP_NAME)

    def fresh_name(self) -> str:
        self.fresh += 1
        return f"__n{self.fresh}"

    def define(self, concept: Concept) -> str:
        """Name for ``concept``, creating definitional rules on demand."""
        text = structural_text(concept)
        known = self.table.get(text)
        if known is not None:
            return known
        if isinstance(concept, Name):
            self.table[text] = concept.id
            self.ensure_name(concept.id)
            return concept.id
        if isinstance(concept, Exists):
            filler = self.define(concept.filler)
            n = self.fresh_name()
            self.table[text] = n
            self.ensure_name(n)
            self.add_rule_ex_rhs(n, concept.role, filler)
            self.add_rule_ex_lhs(concept.role, filler, n)
            return n
        assert isinstance(concept, Conj)
        part_names = sorted({
            self.define(p) for p in concept.parts if not isinstance(p, Top)
        })
        if not part_names:
            self.table[text] = TOP_NAME
            return TOP_NAME
        if len(part_names) == 1:
            self.table[text] = part_names[0]
            return part_names[0]
        n = self.fresh_name()
        self.table[text] = n
        self.ensure_name(n)
        for p in part_names:
            self.add_rule_sub(n, p)
        acc = part_names[0]
        for i, p in enumerate(part_names[1:], start=2):
            target = n if i == len(part_names) else self.fresh_name()
            if target != n:
                self.ensure_name(target)
            self.add_rule_conj(acc, p, target)
            acc = target
        return n

    # -- rule insertion with replay ---------------------------------------

    def add_rule_sub(self, a: str, b: str) -> None:
        self.ensure_name(a)
        self.ensure_name(b)
        self.by_lhs[a] = self.by_lhs.get(a, ()) + (b,)
        for x, subsumers in self.S.items():
            if a in subsumers:
                self.add_sub(x, b)

    def add_rule_conj(self, a1: str, a2: str, b: str) -> None:
        self.ensure_name(a1)
        self.ensure_name(a2)
        self.ensure_name(b)
        self.conj_rules[a1] = self.conj_rules.get(a1, ()) + ((a2, b),)
        if a2 != a1:
            self.conj_rules[a2] = self.conj_rules.get(a2, ()) + ((a1, b),)
        for x, subsumers in self.S.items():
            if a1 in subsumers and a2 in subsumers:
                self.add_sub(x, b)

    def add_rule_ex_rhs(self, a: str, role: str, filler: str) -> None:
        self.ensure_name(a)
        self.ensure_name(filler)
        self.ex_rhs[a] = self.ex_rhs.get(a, ()) + ((role, filler),)
        for x, subsumers in self.S.items():
            if a in subsumers:
                self.add_edge(x, role, filler)

    def add_rule_ex_lhs(self, role: str, filler: str, b: str) -> None:
        self.ensure_name(filler)
        self.ensure_name(b)
        key = (role, filler)
        self.ex_lhs[key] = self.ex_lhs.get(key, ()) + (b,)
        for src, r, dst in list(self.edges):
            if r == role and filler in self.S[dst]:
                self.add_sub(src, b)

    # -- fixpoint ----------------------------------------------------------

    def add_sub(self, x: str, a: str) -> None:
        subsumers = self.S[x]
        if a not in subsumers:
            subsumers.add(a)
            self.pending.append((True, x, a, ""))

    def add_edge(self, src: str, role: str, dst: str) -> None:
        edge = (src, role, dst)
        if edge not in self.edges:
            self.edges.add(edge)
            self.preds[dst] = self.preds.get(dst, ()) + ((role, src),)
            self.pending.append((False, src, role, dst))

    def run(self) -> None:
        pending = self.pending
        S = self.S
        while pending:
            is_sub, x, a, dst = pending.popleft()
            if is_sub:
                for b in self.by_lhs.get(a, ()):
                    self.add_sub(x, b)
                subsumers = S[x]
                for a2, b in self.conj_rules.get(a, ()):
                    if a2 in subsumers:
                        self.add_sub(x, b)
                for role, filler in self.ex_rhs.get(a, ()):
                    self.add_edge(x, role, filler)
                for role, src in self.preds.get(x, ()):
                    for b in self.ex_lhs.get((role, a), ()):
                        self.add_sub(src, b)
            else:
                role = a
                for a_dst in list(S[dst]):
                    for b in self.ex_lhs.get((role, a_dst), ()):
                        self.add_sub(x, b)


def _absorb(sat: _Saturation, bodies: Iterable[Body], with_assertions: bool) -> None:
    for body in bodies:
        if isinstance(body, GCI):
            lhs = sat.define(body.lhs)
            rhs = sat.define(body.rhs)
            sat.add_rule_sub(lhs, rhs)
        elif isinstance(body, ConceptAssertion):
            if with_assertions:
                ind = _ind_name(body.individual)
                sat.ensure_name(ind)
                sat.add_rule_sub(ind, sat.define(body.concept))
        elif isinstance(body, RoleAssertion):
            if with_assertions:
                sub = _ind_name(body.subject)
                obj = _ind_name(body.object)
                sat.ensure_name(sub)
                sat.ensure_name(obj)
                sat.add_rule_ex_rhs(sub, body.role, obj)
        else:  # pragma: no cover - defensive
            raise TypeError(f"not an axiom body: {body!r}")


def _evaluate(sat: _Saturation, query: Body) -> bool:
    if isinstance(query, GCI):
        a = sat.define(query.lhs)
        b = sat.define(query.rhs)
        sat.run()
        return b in sat.S[a]
    assert isinstance(query, ConceptAssertion)
    ind = _ind_name(query.individual)
    sat.ensure_name(ind)
    c = sat.define(query.concept)
    sat.run()
    return c in sat.S[ind]


class _Core:
    """Saturated entailment core for a fixed set of axiom bodies."""

    __slots__ = ("sat", "with_assertions")

    def __init__(
        self,
        bodies: Iterable[Body],
        with_assertions: bool,
        predefine: Sequence[Concept] = (),
    ):
        self.sat = _Saturation()
        self.with_assertions = with_assertions
        _absorb(self.sat, bodies, with_assertions)
        for c in predefine:
            self.sat.define(c)
        self.sat.run()

    def query(self, extras: Iterable[Body], query: Body) -> bool:
        sat = self.sat.clone()
        _absorb(sat, extras, self.with_assertions)
        return _evaluate(sat, query)


class EntailmentContext:
    """Entailment oracle over a fixed axiom set.

    The underlying saturations (one over the GCIs alone, one with the
    assertions encoded) are built lazily and cached; the context is
    immutable once built, so it can be shared freely. Rebuild the context
    whenever the axiom set changes.
    """

    def __init__(self, axioms: Iterable[Union[Axiom, Body]]):
        self.bodies = tuple(
            a.body if isinstance(a, Axiom) else a for a in axioms
        )
        self._gci_core: _Core | None = None
        self._full_core: _Core | None = None
        self._memo: dict[object, bool] = {}

    def _core(self, with_assertions: bool) -> _Core:
        if with_assertions:
            if self._full_core is None:
                self._full_core = _Core(self.bodies, with_assertions=True)
            return self._full_core
        if self._gci_core is None:
            self._gci_core = _Core(self.bodies, with_assertions=False)
        return self._gci_core

    def entails(self, query: Union[Axiom, Body]) -> bool:
        body = query.body if isinstance(query, Axiom) else query
        hit = self._memo.get(body)
        if hit is not None:
            return hit
        if isinstance(body, GCI):
            result = self._core(with_assertions=False).query((), body)
        elif isinstance(body, ConceptAssertion):
            result = self._core(with_assertions=True).query((), body)
        elif isinstance(body, RoleAssertion):
            result = body in self.bodies
        else:  # pragma: no cover - defensive
            raise TypeError(f"not an axiom body: {body!r}")
        self._memo[body] = result
        return result


class IncrementalChecker:
    """Entailment of one fixed query against a fixed base plus varying extras.

    The base axioms are normalized and saturated once; each call to
    ``entails_with`` clones the fixpoint and continues it with the extra
    axioms, so checking many candidate axioms against the same base stays
    cheap. Role-assertion queries degenerate to syntactic presence.
    """

    def __init__(
        self,
        base: Iterable[Union[Axiom, Body]],
        query: Union[Axiom, Body],
    ):
        self.query_body: Body = query.body if isinstance(query, Axiom) else query
        base_bodies = tuple(a.body if isinstance(a, Axiom) else a for a in base)
        if isinstance(self.query_body, RoleAssertion):
            self._base_bodies: tuple[Body, ...] | None = base_bodies
            self._core = None
        else:
            self._base_bodies = None
            with_assertions = isinstance(self.query_body, ConceptAssertion)
            predefine: list[Concept] = []
            if isinstance(self.query_body, GCI):
                predefine = [self.query_body.lhs, self.query_body.rhs]
            else:
                predefine = [self.query_body.concept]
            self._core = _Core(
                base_bodies, with_assertions=with_assertions, predefine=predefine
            )

    def entails_with(self, extras: Iterable[Union[Axiom, Body]]) -> bool:
        bodies = tuple(a.body if isinstance(a, Axiom) else a for a in extras)
        if self._core is None:
            assert self._base_bodies is not None
            return self.query_body in self._base_bodies + bodies
        return self._core.query(bodies, self.query_body)


def entails(
    axioms: Iterable[Union[Axiom, Body]], query: Union[Axiom, Body]
) -> bool:
    """True iff the axiom set entails the query axiom."""
    return EntailmentContext(axioms).entails(query)
