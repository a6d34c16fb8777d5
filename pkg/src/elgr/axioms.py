"""EL axioms and ontologies.

An axiom body is a GCI, a concept assertion, or a role assertion. A labeled
axiom couples a body with an opaque label that stays stable while the body
is weakened during a repair run; an ontology is a static part plus a
refutable part, disjoint by label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .concepts import Concept

__all__ = [
    "GCI",
    "ConceptAssertion",
    "RoleAssertion",
    "Body",
    "Axiom",
    "Ontology",
    "label_sort_key",
    "axiom_sort_key",
]


@dataclass(frozen=True, slots=True)
class GCI:
    """General concept inclusion ``lhs SubClassOf rhs``."""

    lhs: Concept
    rhs: Concept


@dataclass(frozen=True, slots=True)
class ConceptAssertion:
    """Assertion that an individual belongs to a concept."""

    concept: Concept
    individual: str


@dataclass(frozen=True, slots=True)
class RoleAssertion:
    """Assertion that two individuals are related by a role."""

    role: str
    subject: str
    object: str


Body = Union[GCI, ConceptAssertion, RoleAssertion]


@dataclass(frozen=True, slots=True)
class Axiom:
    """An axiom body with a stable label.

    Labels identify axioms inside an ontology and survive weakening: the
    replacement axiom inherits the label of the axiom it replaces.
    """

    label: str
    body: Body


_LABEL_RE = re.compile(r"([A-Za-z_]*)(\d*)")


def label_sort_key(label: str) -> tuple[str, int, str]:
    """Sort key ordering labels naturally: r2 before r10."""
    m = _LABEL_RE.match(label)
    assert m is not None
    prefix, digits = m.group(1), m.group(2)
    return (prefix, int(digits) if digits else -1, label)


def axiom_sort_key(axiom: Axiom) -> tuple[str, int, str]:
    return label_sort_key(axiom.label)


@dataclass(frozen=True)
class Ontology:
    """A static part and a refutable part, disjoint by label."""

    static: tuple[Axiom, ...] = ()
    refutable: tuple[Axiom, ...] = ()

    def __post_init__(self) -> None:
        labels = [a.label for a in self.static] + [a.label for a in self.refutable]
        if len(labels) != len(set(labels)):
            raise ValueError("axiom labels must be unique across the ontology")

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return self.static + self.refutable

    def refutable_by_label(self, label: str) -> Axiom:
        for a in self.refutable:
            if a.label == label:
                return a
        raise KeyError(label)

    def replace_refutable(self, label: str, body: Body) -> "Ontology":
        """Replace the body of one refutable axiom, keeping its label."""
        self.refutable_by_label(label)
        new = tuple(
            Axiom(a.label, body) if a.label == label else a for a in self.refutable
        )
        return Ontology(self.static, new)

    def without_refutable(self, labels: Iterable[str]) -> "Ontology":
        """Drop the refutable axioms carrying the given labels."""
        drop = set(labels)
        kept = tuple(a for a in self.refutable if a.label not in drop)
        return Ontology(self.static, kept)
