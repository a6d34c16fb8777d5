"""Canonical text rendering for concepts, axioms, and ontologies.

Concepts are rendered in reduced form with conjuncts sorted, so the rendered
text is a canonical key: two concepts render identically exactly when they
are equivalent. Parsing the rendered text yields a semantically equal value.
"""

from __future__ import annotations

from typing import Union

from .axioms import Axiom, Body, ConceptAssertion, GCI, Ontology, RoleAssertion
from .concepts import Concept, Conj, structural_text
from .reasoner import reduce_concept

__all__ = ["render", "render_concept", "render_body", "render_ontology"]


def render_concept(c: Concept) -> str:
    return structural_text(reduce_concept(c))


def _assertion_concept_text(c: Concept) -> str:
    reduced = reduce_concept(c)
    text = structural_text(reduced)
    if isinstance(reduced, Conj):
        return f"({text})"
    return text


def render_body(body: Union[Axiom, Body]) -> str:
    if isinstance(body, Axiom):
        body = body.body
    if isinstance(body, GCI):
        return f"{render_concept(body.lhs)} SubClassOf {render_concept(body.rhs)}"
    if isinstance(body, ConceptAssertion):
        return f"{_assertion_concept_text(body.concept)}({body.individual})"
    if isinstance(body, RoleAssertion):
        return f"{body.role}({body.subject},{body.object})"
    raise TypeError(f"cannot render {body!r}")


def render_ontology(ontology: Ontology) -> str:
    lines = ["[static]"]
    lines.extend(render_body(a) for a in ontology.static)
    lines.append("[refutable]")
    lines.extend(render_body(a) for a in ontology.refutable)
    return "\n".join(lines) + "\n"


def render(x: Union[Concept, Axiom, Body, Ontology]) -> str:
    """Canonical text for a concept, axiom, or ontology."""
    if isinstance(x, Concept):
        return render_concept(x)
    if isinstance(x, Ontology):
        return render_ontology(x)
    return render_body(x)
