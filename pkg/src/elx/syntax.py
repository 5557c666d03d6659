"""Concrete syntax for ontologies, axioms, concepts, and interpretations.

Ontology files hold one axiom per line; ``#`` starts a comment.  The
concept grammar is

    axiom    :=  concept "SubClassOf" concept
    concept  :=  primary ("and" primary)*
    primary  :=  "Top" | NAME | "?"VARNAME | "exists" ROLE "." primary
               | "(" concept ")"

so an existential's filler extends only over the next atomic or
parenthesized concept: ``exists r.A and B`` parses as the conjunction of
``exists r.A`` with ``B``.  Concept and role names match
``[A-Za-z][A-Za-z0-9_]*`` minus the keywords; variable names allow a
leading underscore so machine-generated variables survive a round trip.
Three classical role-axiom forms are accepted as sugar and expanded into
variable axioms while parsing:

    chain: r o s SubClassOf t
    C SubClassOf exists r.Self
    C SubClassOf (r subRoleOf s)

Interpretation files start with ``domain: e1 e2 ...``; every other line
is ``Name: e1 e2`` (a concept extension) or ``name: (e1,e2) (e3,e4)``
(a role extension), the shape of the values deciding which.

Parsing an ontology yields the axioms plus one source span per axiom and
a symbol table; every syntax error carries a 1-based line/column span.
``parse_axiom(print_axiom(x))`` returns ``x`` for canonical ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .concepts import (
    Atom,
    Axiom,
    Concept,
    Conj,
    ElxError,
    Exists,
    Ontology,
    Top,
    TOP,
    Var,
    conj,
    is_ground,
    ontology,
    sort_key,
)
from .oracle import FiniteInterpretation
from .sugar import LocalRoleValueMap, RoleChain, SelfRestriction, desugar

KEYWORDS = frozenset(
    ["Top", "and", "exists", "SubClassOf", "Self", "o", "subRoleOf", "chain"]
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#.*)
      | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*)
      | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<dot>\.)
      | (?P<colon>:)
      | (?P<comma>,)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token or construct in its source text."""

    line: int
    column: int
    length: int


class ParseError(ElxError):
    def __init__(self, message: str, span: SourceSpan) -> None:
        super().__init__(f"line {span.line}, column {span.column}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def _scan_line(line: str, lineno: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {line[pos]!r}",
                SourceSpan(lineno, pos + 1, 1),
            )
        kind = m.lastgroup
        text = m.group()
        if kind == "ident" and text in KEYWORDS:
            kind = text
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, SourceSpan(lineno, m.start() + 1, len(text))))
        pos = m.end()
    return tokens


class SymbolTable:
    """Tracks whether each name is used as a concept or as a role."""

    def __init__(self) -> None:
        self.kinds: dict[str, tuple[str, SourceSpan]] = {}

    def use(self, name: str, kind: str, span: SourceSpan) -> None:
        prev = self.kinds.get(name)
        if prev is None:
            self.kinds[name] = (kind, span)
        elif prev[0] != kind:
            raise ParseError(
                f"{name!r} used as a {kind} name here but as a {prev[0]} name at "
                f"line {prev[1].line}, column {prev[1].column}",
                span,
            )

    def kind_of(self, name: str) -> Optional[str]:
        entry = self.kinds.get(name)
        return entry[0] if entry else None


class _TokenStream:
    def __init__(self, tokens: list[Token], lineno: int, line_len: int) -> None:
        self.tokens = tokens
        self.pos = 0
        self._eol = SourceSpan(lineno, line_len + 1, 1)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def peek_kind(self) -> Optional[str]:
        t = self.peek()
        return t.kind if t else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of line", self._eol)
        self.pos += 1
        return t

    def expect(self, kind: str, what: str) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError(f"expected {what}, found end of line", self._eol)
        if t.kind != kind:
            raise ParseError(f"expected {what}, found {t.text!r}", t.span)
        self.pos += 1
        return t

    def expect_end(self, context: str) -> None:
        t = self.peek()
        if t is not None:
            raise ParseError(f"unexpected {t.text!r} after {context}", t.span)

    def rest_kinds(self) -> list[str]:
        return [t.kind for t in self.tokens[self.pos :]]


def _parse_primary(p: _TokenStream, symbols: SymbolTable) -> Concept:
    t = p.peek()
    if t is None:
        raise ParseError("expected a concept, found end of line", p._eol)
    if t.kind == "Top":
        p.next()
        return TOP
    if t.kind == "ident":
        p.next()
        symbols.use(t.text, "concept", t.span)
        return Atom(t.text)
    if t.kind == "var":
        p.next()
        return Var(t.text[1:])
    if t.kind == "exists":
        p.next()
        role = p.peek()
        if role is not None and role.kind == "var":
            raise ParseError(
                f"expected a role name after 'exists', found variable {role.text!r}",
                role.span,
            )
        role_tok = p.expect("ident", "a role name after 'exists'")
        symbols.use(role_tok.text, "role", role_tok.span)
        p.expect("dot", "'.' after the role name")
        filler = _parse_primary(p, symbols)
        return Exists(role_tok.text, filler)
    if t.kind == "lparen":
        p.next()
        c = _parse_concept_expr(p, symbols)
        p.expect("rparen", "')'")
        return c
    raise ParseError(f"expected a concept, found {t.text!r}", t.span)


def _parse_concept_expr(p: _TokenStream, symbols: SymbolTable) -> Concept:
    parts = [_parse_primary(p, symbols)]
    while p.peek_kind() == "and":
        p.next()
        parts.append(_parse_primary(p, symbols))
    return conj(parts)


def _parse_role_chain(p: _TokenStream, symbols: SymbolTable) -> list[str]:
    roles = []
    tok = p.expect("ident", "a role name")
    symbols.use(tok.text, "role", tok.span)
    roles.append(tok.text)
    while p.peek_kind() == "o":
        p.next()
        tok = p.expect("ident", "a role name after 'o'")
        symbols.use(tok.text, "role", tok.span)
        roles.append(tok.text)
    return roles


def _parse_axiom_tokens(
    p: _TokenStream, symbols: SymbolTable, fresh_var: str
) -> Axiom:
    if p.peek_kind() == "chain":
        start = p.next()
        p.expect("colon", "':' after 'chain'")
        lhs_roles = _parse_role_chain(p, symbols)
        p.expect("SubClassOf", "'SubClassOf'")
        rhs_start = p.peek()
        rhs_roles = _parse_role_chain(p, symbols)
        p.expect_end("the role chain")
        if len(rhs_roles) != 1:
            raise ParseError(
                "a role chain may only be included in a single role; axiom "
                "entailment with composite right-hand chains is undecidable",
                rhs_start.span if rhs_start else start.span,
            )
        return desugar(RoleChain(tuple(lhs_roles), rhs_roles[0]), fresh_var)

    lhs_start = p.peek()
    lhs = _parse_concept_expr(p, symbols)
    p.expect("SubClassOf", "'SubClassOf'")

    rest = p.rest_kinds()
    if rest == ["exists", "ident", "dot", "Self"]:
        p.next()
        role_tok = p.expect("ident", "a role name")
        symbols.use(role_tok.text, "role", role_tok.span)
        p.next()
        p.next()
        if not is_ground(lhs):
            raise ParseError(
                "the lhs of a Self restriction must be ground",
                lhs_start.span if lhs_start else p._eol,
            )
        return desugar(SelfRestriction(lhs, role_tok.text), fresh_var)
    if rest == ["lparen", "ident", "subRoleOf", "ident", "rparen"]:
        p.next()
        sub_tok = p.next()
        symbols.use(sub_tok.text, "role", sub_tok.span)
        p.next()
        super_tok = p.next()
        symbols.use(super_tok.text, "role", super_tok.span)
        p.next()
        if not is_ground(lhs):
            raise ParseError(
                "the lhs of a local role inclusion must be ground",
                lhs_start.span if lhs_start else p._eol,
            )
        return desugar(LocalRoleValueMap(lhs, sub_tok.text, super_tok.text), fresh_var)
    if "Self" in rest:
        idx = rest.index("Self")
        raise ParseError(
            "'Self' is only allowed in the form 'C SubClassOf exists r.Self'",
            p.tokens[p.pos + idx].span,
        )
    if "subRoleOf" in rest:
        idx = rest.index("subRoleOf")
        raise ParseError(
            "'subRoleOf' is only allowed in the form 'C SubClassOf (r subRoleOf s)'",
            p.tokens[p.pos + idx].span,
        )

    rhs = _parse_concept_expr(p, symbols)
    p.expect_end("the axiom")
    return Axiom(lhs, rhs)


@dataclass
class OntologyDocument:
    """A parsed ontology plus one source span per axiom and the symbol table."""

    ontology: Ontology
    spans: tuple[SourceSpan, ...]
    symbols: SymbolTable = field(default_factory=SymbolTable)


def parse_ontology(text: str, symbols: Optional[SymbolTable] = None) -> OntologyDocument:
    """Parse an ontology document; duplicate axioms are merged silently."""
    symbols = symbols if symbols is not None else SymbolTable()
    axioms: dict[Axiom, SourceSpan] = {}
    fresh = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _scan_line(line, lineno)
        if not tokens:
            continue
        p = _TokenStream(tokens, lineno, len(line))
        ax = _parse_axiom_tokens(p, symbols, f"__v{fresh}")
        if ax not in axioms:
            axioms[ax] = tokens[0].span
        fresh += 1
    return OntologyDocument(
        ontology=ontology(axioms.keys()),
        spans=tuple(axioms.values()),
        symbols=symbols,
    )


def parse_axiom(text: str, symbols: Optional[SymbolTable] = None) -> Axiom:
    """Parse one axiom (sugar forms allowed and expanded)."""
    symbols = symbols if symbols is not None else SymbolTable()
    tokens = _scan_line(text, 1)
    if not tokens:
        raise ParseError("expected an axiom", SourceSpan(1, 1, 1))
    p = _TokenStream(tokens, 1, len(text))
    return _parse_axiom_tokens(p, symbols, "__v0")


def parse_concept(text: str, symbols: Optional[SymbolTable] = None) -> Concept:
    """Parse one concept."""
    symbols = symbols if symbols is not None else SymbolTable()
    tokens = _scan_line(text, 1)
    if not tokens:
        raise ParseError("expected a concept", SourceSpan(1, 1, 1))
    p = _TokenStream(tokens, 1, len(text))
    c = _parse_concept_expr(p, symbols)
    p.expect_end("the concept")
    return c


def parse_concept_base(text: str) -> list[Concept]:
    """Parse a concept base file: one ground concept per line."""
    out: list[Concept] = []
    symbols = SymbolTable()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _scan_line(line, lineno)
        if not tokens:
            continue
        p = _TokenStream(tokens, lineno, len(line))
        c = _parse_concept_expr(p, symbols)
        p.expect_end("the concept")
        if not is_ground(c):
            raise ParseError(
                "concept base entries must be ground", tokens[0].span
            )
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# Interpretation files
# ---------------------------------------------------------------------------


def parse_interpretation(text: str) -> FiniteInterpretation:
    """Parse a finite interpretation from its line-oriented format."""
    domain: list[str] = []
    seen_domain = False
    concept_ext: dict[str, set[str]] = {}
    role_ext: dict[str, set[tuple[str, str]]] = {}
    kinds: dict[str, str] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _scan_line(line, lineno)
        if not tokens:
            continue
        p = _TokenStream(tokens, lineno, len(line))
        name_tok = p.expect("ident", "a name followed by ':'")
        p.expect("colon", f"':' after {name_tok.text!r}")
        if not seen_domain:
            if name_tok.text != "domain":
                raise ParseError(
                    "the first line of an interpretation must declare the domain",
                    name_tok.span,
                )
            while p.peek() is not None:
                tok = p.expect("ident", "a domain element")
                if tok.text not in domain:
                    domain.append(tok.text)
            if not domain:
                raise ParseError("the domain must be nonempty", name_tok.span)
            seen_domain = True
            continue
        if name_tok.text == "domain":
            raise ParseError("duplicate domain declaration", name_tok.span)

        first = p.peek()
        if first is None or first.kind == "ident":
            # concept extension
            if kinds.setdefault(name_tok.text, "concept") != "concept":
                raise ParseError(
                    f"{name_tok.text!r} was previously given a role extension",
                    name_tok.span,
                )
            ext = concept_ext.setdefault(name_tok.text, set())
            while p.peek() is not None:
                tok = p.expect("ident", "a domain element")
                if tok.text not in domain:
                    raise ParseError(
                        f"element {tok.text!r} is not in the domain", tok.span
                    )
                ext.add(tok.text)
        else:
            # role extension
            if kinds.setdefault(name_tok.text, "role") != "role":
                raise ParseError(
                    f"{name_tok.text!r} was previously given a concept extension",
                    name_tok.span,
                )
            ext2 = role_ext.setdefault(name_tok.text, set())
            while p.peek() is not None:
                p.expect("lparen", "'('")
                a = p.expect("ident", "a domain element")
                p.expect("comma", "','")
                b = p.expect("ident", "a domain element")
                p.expect("rparen", "')'")
                for tok in (a, b):
                    if tok.text not in domain:
                        raise ParseError(
                            f"element {tok.text!r} is not in the domain", tok.span
                        )
                ext2.add((a.text, b.text))

    if not seen_domain:
        raise ParseError("empty interpretation file", SourceSpan(1, 1, 1))
    return FiniteInterpretation(
        domain=tuple(domain),
        concept_ext={k: frozenset(v) for k, v in concept_ext.items()},
        role_ext={k: frozenset(v) for k, v in role_ext.items()},
    )


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _print_primary(c: Concept) -> str:
    if isinstance(c, Conj):
        return f"({print_concept(c)})"
    return print_concept(c)


def print_concept(c: Concept) -> str:
    """Render a concept with minimal parentheses; inverse of parse_concept."""
    if isinstance(c, Top):
        return "Top"
    if isinstance(c, Atom):
        return c.name
    if isinstance(c, Var):
        return f"?{c.name}"
    if isinstance(c, Exists):
        return f"exists {c.role}.{_print_primary(c.filler)}"
    if isinstance(c, Conj):
        return " and ".join(_print_primary(x) for x in c.conjuncts)
    raise TypeError(f"not a concept: {c!r}")


def print_axiom(ax: Axiom) -> str:
    return f"{print_concept(ax.lhs)} SubClassOf {print_concept(ax.rhs)}"


def print_ontology(kb: Ontology) -> str:
    return "\n".join(print_axiom(ax) for ax in kb)


def _element_order(interp: FiniteInterpretation) -> dict[str, int]:
    return {e: i for i, e in enumerate(interp.domain)}


def print_interpretation(interp: FiniteInterpretation) -> str:
    """Render an interpretation in the format parse_interpretation reads."""
    idx = _element_order(interp)
    lines = ["domain: " + " ".join(interp.domain)]
    for name in sorted(interp.concept_ext):
        ext = sorted(interp.concept_ext[name], key=idx.__getitem__)
        if ext:
            lines.append(f"{name}: " + " ".join(ext))
    for name in sorted(interp.role_ext):
        pairs = sorted(interp.role_ext[name], key=lambda p: (idx[p[0]], idx[p[1]]))
        if pairs:
            lines.append(f"{name}: " + " ".join(f"({a},{b})" for a, b in pairs))
    return "\n".join(lines)


def print_valuation(valuation) -> str:
    """Render a valuation as '?X={a,b} ?Y={}' with elements sorted."""
    if not valuation:
        return "(no variables)"
    parts = []
    for name in sorted(valuation):
        elems = ",".join(sorted(valuation[name]))
        parts.append(f"?{name}={{{elems}}}")
    return " ".join(parts)
