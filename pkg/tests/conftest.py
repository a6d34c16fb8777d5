"""Shared fixtures: the standard example ontologies and parse helpers."""

from __future__ import annotations

import pytest

from elgr.axioms import Axiom
from elgr.parser import parse_axiom, parse_concept, parse_ontology
from elgr.repair import RepairProblem


def c(text: str):
    return parse_concept(text)


def ax(text: str):
    return parse_axiom(text)


def lab(label: str, text: str) -> Axiom:
    return Axiom(label, parse_axiom(text))


@pytest.fixture
def professor():
    """Two axioms making professors students; the first is the culprit."""
    ontology = parse_ontology(
        """
        [refutable]
        Prof SubClassOf some employed.Uni and some enrolled.Uni
        some enrolled.Uni SubClassOf Studi
        """
    )
    return RepairProblem(ontology, ax("Prof SubClassOf Studi"))


@pytest.fixture
def two_step_assertion():
    """Assertion instance where one gentle pass leaves the target entailed."""
    ontology = parse_ontology(
        """
        [refutable]
        B SubClassOf A
        (A and B)(a)
        """
    )
    return RepairProblem(ontology, ax("A(a)"))


@pytest.fixture
def gci_variant():
    """GCI-only instance where one gentle pass leaves the target entailed."""
    ontology = parse_ontology(
        """
        [refutable]
        C SubClassOf A and B
        B SubClassOf A
        """
    )
    return RepairProblem(ontology, ax("C SubClassOf A"))


ADVERSARIAL_N2 = """
[refutable]
some r.(P1 and P2) SubClassOf DP1P2
DP1P2 and P1 SubClassOf P2
some r.(P1 and Q2) SubClassOf DP1Q2
DP1Q2 and P1 SubClassOf Q2
some r.(Q1 and P2) SubClassOf DQ1P2
DQ1P2 and Q1 SubClassOf P2
some r.(Q1 and Q2) SubClassOf DQ1Q2
DQ1Q2 and Q1 SubClassOf Q2
some r.P1 SubClassOf P1
some r.Q1 SubClassOf Q1
P2 SubClassOf B
Q2 SubClassOf B
P1 and Q1 SubClassOf P2
P1 and Q1 SubClassOf Q2
some r.(P2 and Q2) SubClassOf B
A SubClassOf some r.(P1 and Q1 and P2 and Q2)
"""


@pytest.fixture
def adversarial_n2():
    """Two-level instance driving the modified algorithm through many steps."""
    return RepairProblem(parse_ontology(ADVERSARIAL_N2), ax("A SubClassOf B"))


@pytest.fixture
def no_optimal_repair():
    """Cyclic static part under which repairs form an infinite ascending chain."""
    ontology = parse_ontology(
        """
        [static]
        A SubClassOf some r.A
        some r.A SubClassOf A
        [refutable]
        A(a)
        """
    )
    return RepairProblem(ontology, ax("A(a)"))
