"""Parser for the textual EL format.

Grammar (``#`` starts a comment to end of line)::

    File      ::= ("[static]" AxiomLine*)? ("[refutable]" AxiomLine*)?
    AxiomLine ::= GCI | CAssert | RAssert
    GCI       ::= Concept "SubClassOf" Concept
    CAssert   ::= Atom "(" Ident ")"
    RAssert   ::= Ident "(" Ident "," Ident ")"
    Concept   ::= Atom ("and" Atom)*
    Atom      ::= "Top" | Ident | "(" Concept ")" | "some" Ident "." Atom

Axiom lines end at a newline. The ambiguity between concept and role
assertions is resolved by arity; a one-argument assertion whose head is also
used as a role elsewhere in the file is rejected. Identifiers starting with
``__`` are reserved for internal use and rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .axioms import Axiom, Body, ConceptAssertion, GCI, Ontology, RoleAssertion
from .concepts import Concept, Exists, Name, TOP, conj, subconcepts
from .errors import ElParseError

__all__ = ["parse_concept", "parse_axiom", "parse_ontology"]

KEYWORDS = {"Top", "and", "some", "SubClassOf"}

_PUNCT = {"(": "LPAREN", ")": "RPAREN", ",": "COMMA", ".": "DOT"}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # IDENT, KEYWORD, LPAREN, RPAREN, COMMA, DOT, SECTION, NEWLINE, EOF
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            tokens.append(_Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "[":
            j = text.find("]", i)
            if j < 0:
                raise ElParseError("unterminated section header", line, col)
            name = text[i + 1 : j].strip()
            if name not in ("static", "refutable"):
                raise ElParseError(f"unknown section [{name}]", line, col)
            tokens.append(_Token("SECTION", name, line, col))
            col += j - i + 1
            i = j + 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "IDENT"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise ElParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None) -> ElParseError:
        tok = tok or self.peek()
        return ElParseError(message, tok.line, tok.column)

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what}, found {tok.value or 'end of input'!r}")
        return self.next()

    def skip_newlines(self) -> None:
        while self.peek().kind == "NEWLINE":
            self.next()

    def at_line_end(self) -> bool:
        return self.peek().kind in ("NEWLINE", "EOF", "SECTION")

    # -- concepts ------------------------------------------------------

    def ident(self, what: str) -> str:
        tok = self.expect("IDENT", what)
        if tok.value.startswith("__"):
            raise self.error("identifiers starting with '__' are reserved", tok)
        return tok.value

    def atom(self) -> Concept:
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value == "Top":
            self.next()
            return TOP
        if tok.kind == "KEYWORD" and tok.value == "some":
            self.next()
            role = self.ident("a role name")
            self.expect("DOT", "'.'")
            return Exists(role, self.atom())
        if tok.kind == "LPAREN":
            self.next()
            inner = self.concept()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "IDENT":
            return Name(self.ident("a concept name"))
        raise self.error(
            f"expected a concept, found {tok.value or 'end of input'!r}"
        )

    def concept(self) -> Concept:
        parts = [self.atom()]
        while self.peek().kind == "KEYWORD" and self.peek().value == "and":
            self.next()
            parts.append(self.atom())
        return conj(parts)

    # -- axioms --------------------------------------------------------

    def axiom_line(self) -> Body:
        head = self.atom()
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value in ("and", "SubClassOf"):
            parts = [head]
            while self.peek().kind == "KEYWORD" and self.peek().value == "and":
                self.next()
                parts.append(self.atom())
            lhs = conj(parts)
            sub = self.expect("KEYWORD", "'SubClassOf'")
            if sub.value != "SubClassOf":
                raise self.error("expected 'SubClassOf'", sub)
            rhs = self.concept()
            return GCI(lhs, rhs)
        if tok.kind == "LPAREN":
            self.next()
            first = self.ident("an individual name")
            if self.peek().kind == "COMMA":
                self.next()
                second = self.ident("an individual name")
                self.expect("RPAREN", "')'")
                if not isinstance(head, Name):
                    raise self.error("a role assertion needs a plain role name")
                return RoleAssertion(head.id, first, second)
            self.expect("RPAREN", "')'")
            return ConceptAssertion(head, first)
        raise self.error(
            f"expected 'SubClassOf' or '(', found {tok.value or 'end of input'!r}"
        )


def parse_concept(text: str) -> Concept:
    """Parse a concept; the whole input must be consumed."""
    p = _Parser(text)
    p.skip_newlines()
    c = p.concept()
    p.skip_newlines()
    if p.peek().kind != "EOF":
        raise p.error(f"unexpected trailing input {p.peek().value!r}")
    return c


def parse_axiom(text: str) -> Body:
    """Parse a single axiom (GCI, concept assertion, or role assertion)."""
    p = _Parser(text)
    p.skip_newlines()
    body = p.axiom_line()
    p.skip_newlines()
    if p.peek().kind != "EOF":
        raise p.error(f"unexpected trailing input {p.peek().value!r}")
    return body


def _roles_used(bodies: list[Body]) -> set[str]:
    roles: set[str] = set()
    for body in bodies:
        if isinstance(body, RoleAssertion):
            roles.add(body.role)
        concepts: list[Concept] = []
        if isinstance(body, GCI):
            concepts = [body.lhs, body.rhs]
        elif isinstance(body, ConceptAssertion):
            concepts = [body.concept]
        for c in concepts:
            for sub in subconcepts(c):
                if isinstance(sub, Exists):
                    roles.add(sub.role)
    return roles


def parse_ontology(text: str) -> Ontology:
    """Parse an ontology file with ``[static]`` / ``[refutable]`` sections.

    Axioms are labeled ``s1, s2, …`` and ``r1, r2, …`` in file order.
    """
    p = _Parser(text)
    sections: dict[str, list[tuple[Body, _Token]]] = {}
    p.skip_newlines()
    seen_order: list[str] = []
    while p.peek().kind != "EOF":
        tok = p.peek()
        if tok.kind != "SECTION":
            raise p.error("axioms must appear inside a [static] or [refutable] section")
        section = p.next().value
        if section in sections:
            raise p.error(f"duplicate section [{section}]", tok)
        if section == "static" and "refutable" in sections:
            raise p.error("[static] must precede [refutable]", tok)
        sections[section] = []
        seen_order.append(section)
        p.skip_newlines()
        while p.peek().kind not in ("SECTION", "EOF"):
            start = p.peek()
            body = p.axiom_line()
            if not p.at_line_end():
                raise p.error(
                    f"unexpected trailing input {p.peek().value!r} after axiom"
                )
            sections[section].append((body, start))
            p.skip_newlines()

    everything = [body for items in sections.values() for body, _ in items]
    roles = _roles_used(everything)
    for items in sections.values():
        for body, tok in items:
            if isinstance(body, ConceptAssertion) and isinstance(body.concept, Name):
                if body.concept.id in roles:
                    raise ElParseError(
                        f"'{body.concept.id}' is used as a role; "
                        "a role assertion needs two arguments",
                        tok.line,
                        tok.column,
                    )

    static = tuple(
        Axiom(f"s{i}", body)
        for i, (body, _) in enumerate(sections.get("static", []), start=1)
    )
    refutable = tuple(
        Axiom(f"r{i}", body)
        for i, (body, _) in enumerate(sections.get("refutable", []), start=1)
    )
    return Ontology(static, refutable)
