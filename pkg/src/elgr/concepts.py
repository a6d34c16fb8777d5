"""Abstract syntax for EL concepts.

An EL concept is the top concept, a concept name, a conjunction, or an
existential restriction. Concepts are immutable and hashable; conjunctions
are flattened on construction (a conjunction never directly contains another
conjunction) but otherwise preserve their parts verbatim, including
duplicates and occurrences of the top concept. Canonical, order-insensitive
forms are produced by :func:`elgr.reasoner.reduce_concept`, not here.

``structural_text`` gives a deterministic concrete-syntax rendering with
conjuncts sorted lexicographically; on reduced concepts it is the canonical
rendering used throughout the engine as a dedup and ordering key.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Concept",
    "Top",
    "Name",
    "Conj",
    "Exists",
    "TOP",
    "conj",
    "conjuncts",
    "top_names",
    "top_existentials",
    "size",
    "msize",
    "role_depth",
    "signature",
    "structural_text",
    "subconcepts",
]


class Concept:
    """Base class for EL concept nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Top(Concept):
    """The top concept."""


@dataclass(frozen=True, slots=True)
class Name(Concept):
    """A concept name."""

    id: str


@dataclass(frozen=True, slots=True)
class Exists(Concept):
    """An existential restriction over a role."""

    role: str
    filler: Concept


@dataclass(frozen=True, slots=True)
class Conj(Concept):
    """A conjunction of two or more concepts.

    Parts form an ordered multiset: duplicates and top-concept parts are
    kept, but no part may itself be a conjunction.
    """

    parts: tuple[Concept, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("conjunction needs at least two parts")
        if any(isinstance(p, Conj) for p in self.parts):
            raise ValueError("conjunction parts must be flattened")


TOP = Top()


def conj(parts: Iterable[Concept]) -> Concept:
    """Build a conjunction, flattening nested conjunctions.

    Zero parts collapse to ⊤ and a single part to itself, so this is the
    generic "conjunction of a (possibly empty) list" constructor.
    """
    flat: list[Concept] = []
    for p in parts:
        if isinstance(p, Conj):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return Conj(tuple(flat))


def conjuncts(c: Concept) -> tuple[Concept, ...]:
    """Top-level conjuncts of ``c``; ⊤ has none, atoms are their own."""
    if isinstance(c, Conj):
        return c.parts
    if isinstance(c, Top):
        return ()
    return (c,)


def top_names(c: Concept) -> frozenset[str]:
    """Concept names occurring at the top level of ``c``."""
    return frozenset(p.id for p in conjuncts(c) if isinstance(p, Name))


def top_existentials(c: Concept) -> tuple[Exists, ...]:
    """Existential restrictions occurring at the top level of ``c``."""
    return tuple(p for p in conjuncts(c) if isinstance(p, Exists))


def size(c: Concept) -> int:
    """Occurrences of ⊤, concept names, and role names in ``c``."""
    if isinstance(c, (Top, Name)):
        return 1
    if isinstance(c, Exists):
        return 1 + size(c.filler)
    assert isinstance(c, Conj)
    return sum(size(p) for p in c.parts)


def msize(c: Concept) -> int:
    """Occurrences of concept and role names only (⊤ does not count)."""
    if isinstance(c, Top):
        return 0
    if isinstance(c, Name):
        return 1
    if isinstance(c, Exists):
        return 1 + msize(c.filler)
    assert isinstance(c, Conj)
    return sum(msize(p) for p in c.parts)


def role_depth(c: Concept) -> int:
    """Maximal nesting of existential restrictions in ``c``."""
    if isinstance(c, (Top, Name)):
        return 0
    if isinstance(c, Exists):
        return 1 + role_depth(c.filler)
    assert isinstance(c, Conj)
    return max(role_depth(p) for p in c.parts)


def signature(c: Concept) -> tuple[frozenset[str], frozenset[str]]:
    """Concept names and role names occurring anywhere in ``c``."""
    names: set[str] = set()
    roles: set[str] = set()

    def walk(x: Concept) -> None:
        if isinstance(x, Name):
            names.add(x.id)
        elif isinstance(x, Exists):
            roles.add(x.role)
            walk(x.filler)
        elif isinstance(x, Conj):
            for p in x.parts:
                walk(p)

    walk(c)
    return frozenset(names), frozenset(roles)


def _atom_text(c: Concept) -> str:
    # A conjunction used where the grammar wants an atom must be wrapped.
    text = structural_text(c)
    if isinstance(c, Conj):
        return f"({text})"
    return text


def structural_text(c: Concept) -> str:
    """Deterministic text for ``c`` with conjuncts sorted lexicographically.

    Two concepts equal up to associativity and commutativity of conjunction
    get the same text; no semantic reduction is applied.
    """
    if isinstance(c, Top):
        return "Top"
    if isinstance(c, Name):
        return c.id
    if isinstance(c, Exists):
        return f"some {c.role}.{_atom_text(c.filler)}"
    assert isinstance(c, Conj)
    return " and ".join(sorted(structural_text(p) for p in c.parts))


def subconcepts(c: Concept) -> Iterator[Concept]:
    """All subconcept occurrences of ``c``, including ``c`` itself."""
    yield c
    if isinstance(c, Exists):
        yield from subconcepts(c.filler)
    elif isinstance(c, Conj):
        for p in c.parts:
            yield from subconcepts(p)
