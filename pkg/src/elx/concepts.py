"""Core term language for EL with universally quantified concept variables.

Concepts are immutable trees over five constructors: the top concept,
concept names, concept variables, existential restrictions, and n-ary
conjunctions.  Conjunctions are kept flattened, deduplicated, and sorted
by a fixed total order, with Top conjuncts dropped and single-conjunct
lists collapsed, so structural equality coincides with semantic equality
up to associativity, commutativity, idempotence, and the neutrality of
Top.  That makes concepts directly usable as members of the concept sets
that the grounding and expansion machinery manipulates.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Iterator, Mapping, Union

from dataclasses import dataclass


class ElxError(Exception):
    """Base class for all errors raised by this package."""


class UnboundVariableError(ElxError):
    """A substitution was applied to a term it does not cover."""

    def __init__(self, name: str) -> None:
        super().__init__(f"no binding for variable ?{name}")
        self.name = name


@dataclass(frozen=True)
class Concept:
    """Base class of concept terms.  Instances are immutable and hashable."""


@dataclass(frozen=True)
class Top(Concept):
    """The universal concept."""


TOP = Top()


@dataclass(frozen=True)
class Atom(Concept):
    """A concept name."""

    name: str


@dataclass(frozen=True)
class Var(Concept):
    """A concept variable, universally quantified at the axiom level."""

    name: str


@dataclass(frozen=True)
class Exists(Concept):
    """Existential restriction: elements with some `role` successor in `filler`."""

    role: str
    filler: Concept


@dataclass(frozen=True)
class Conj(Concept):
    """Conjunction of two or more concepts, held in canonical order."""

    conjuncts: tuple[Concept, ...]


@dataclass(frozen=True)
class Axiom:
    """A concept inclusion: every instance of `lhs` is an instance of `rhs`."""

    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class Ontology:
    """A finite set of axioms with a stable, duplicate-free iteration order."""

    axioms: tuple[Axiom, ...]

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def __contains__(self, ax: object) -> bool:
        return ax in self.axioms


#: A substitution maps variable names to concepts.
Substitution = Mapping[str, Concept]

Term = Union[Concept, Axiom, Ontology]


def sort_key(c: Concept):
    """Total order on concepts: constructor tag, then names, then children."""
    if isinstance(c, Top):
        return (0,)
    if isinstance(c, Atom):
        return (1, c.name)
    if isinstance(c, Var):
        return (2, c.name)
    if isinstance(c, Exists):
        return (3, c.role, sort_key(c.filler))
    if isinstance(c, Conj):
        return (4,) + tuple(sort_key(x) for x in c.conjuncts)
    raise TypeError(f"not a concept: {c!r}")


def axiom_sort_key(ax: Axiom):
    return (sort_key(ax.lhs), sort_key(ax.rhs))


def conj(parts: Iterable[Concept]) -> Concept:
    """Conjunction of already-canonical parts, re-canonicalized.

    Flattens nested conjunctions, drops Top, deduplicates, sorts; an empty
    conjunction is Top and a singleton collapses to its only element.
    """
    items: list[Concept] = []
    for p in parts:
        if isinstance(p, Conj):
            items.extend(p.conjuncts)
        elif isinstance(p, Top):
            continue
        else:
            items.append(p)
    uniq = sorted(set(items), key=sort_key)
    if not uniq:
        return TOP
    if len(uniq) == 1:
        return uniq[0]
    return Conj(tuple(uniq))


def normalize(c: Concept) -> Concept:
    """Rebuild an arbitrary concept tree in canonical form."""
    if isinstance(c, Exists):
        return Exists(c.role, normalize(c.filler))
    if isinstance(c, Conj):
        return conj(normalize(x) for x in c.conjuncts)
    if isinstance(c, Top):
        return TOP
    return c


def gci(lhs: Concept, rhs: Concept) -> Axiom:
    """Build an axiom with both sides canonicalized."""
    return Axiom(normalize(lhs), normalize(rhs))


def ontology(axioms: Iterable[Axiom]) -> Ontology:
    """Build an ontology; duplicates are merged, first occurrence wins."""
    return Ontology(tuple(dict.fromkeys(axioms)))


def _walk(c: Concept) -> Iterator[Concept]:
    yield c
    if isinstance(c, Exists):
        yield from _walk(c.filler)
    elif isinstance(c, Conj):
        for x in c.conjuncts:
            yield from _walk(x)


def subconcepts(item: Term) -> frozenset[Concept]:
    """All subterms of a concept, axiom, or ontology, including itself/sides."""
    if isinstance(item, Concept):
        return frozenset(_walk(item))
    if isinstance(item, Axiom):
        return subconcepts(item.lhs) | subconcepts(item.rhs)
    if isinstance(item, Ontology):
        out: frozenset[Concept] = frozenset()
        for ax in item:
            out |= subconcepts(ax)
        return out
    raise TypeError(f"unsupported item: {item!r}")


def polar_subconcepts(ax: Axiom) -> tuple[frozenset[Concept], frozenset[Concept]]:
    """(positive, negative) subterms of an axiom.

    Right-hand sides contribute positively, left-hand sides negatively.
    """
    return subconcepts(ax.rhs), subconcepts(ax.lhs)


def positive_subconcepts(item: Union[Axiom, Ontology]) -> frozenset[Concept]:
    if isinstance(item, Axiom):
        return subconcepts(item.rhs)
    out: frozenset[Concept] = frozenset()
    for ax in item:
        out |= subconcepts(ax.rhs)
    return out


def variables(item: Term) -> frozenset[str]:
    """Names of the variables occurring in the given term."""
    if isinstance(item, Concept):
        return frozenset(n.name for n in _walk(item) if isinstance(n, Var))
    if isinstance(item, Axiom):
        return variables(item.lhs) | variables(item.rhs)
    if isinstance(item, Ontology):
        out: frozenset[str] = frozenset()
        for ax in item:
            out |= variables(ax)
        return out
    raise TypeError(f"unsupported item: {item!r}")


def variable_occurrences(c: Concept) -> Counter:
    """Multiplicity of each variable in a concept."""
    return Counter(n.name for n in _walk(c) if isinstance(n, Var))


def is_ground(item: Term) -> bool:
    return not variables(item)


def concept_names(item: Term) -> frozenset[str]:
    if isinstance(item, Concept):
        return frozenset(n.name for n in _walk(item) if isinstance(n, Atom))
    if isinstance(item, Axiom):
        return concept_names(item.lhs) | concept_names(item.rhs)
    out: frozenset[str] = frozenset()
    for ax in item:
        out |= concept_names(ax)
    return out


def role_names(item: Term) -> frozenset[str]:
    if isinstance(item, Concept):
        return frozenset(n.role for n in _walk(item) if isinstance(n, Exists))
    if isinstance(item, Axiom):
        return role_names(item.lhs) | role_names(item.rhs)
    out: frozenset[str] = frozenset()
    for ax in item:
        out |= role_names(ax)
    return out


def _substitute(c: Concept, theta: Substitution) -> Concept:
    if isinstance(c, Var):
        if c.name not in theta:
            raise UnboundVariableError(c.name)
        return theta[c.name]
    if isinstance(c, Exists):
        return Exists(c.role, _substitute(c.filler, theta))
    if isinstance(c, Conj):
        return Conj(tuple(_substitute(x, theta) for x in c.conjuncts))
    return c


def apply_substitution(theta: Substitution, item: Union[Concept, Axiom]):
    """Replace every variable via `theta` and re-canonicalize the result.

    Raises UnboundVariableError if `item` mentions a variable without a
    binding.  The images in `theta` need not be ground or canonical.
    """
    if isinstance(item, Axiom):
        return Axiom(
            apply_substitution(theta, item.lhs), apply_substitution(theta, item.rhs)
        )
    return normalize(_substitute(item, theta))


def ground_concept_instances(
    c: Concept, base: Iterable[Concept]
) -> frozenset[Concept]:
    """All instances of `c` obtained by mapping its variables into `base`."""
    vs = sorted(variables(c))
    if not vs:
        return frozenset([c])
    pool = sorted(set(base), key=sort_key)
    if not pool:
        raise ElxError("cannot ground over an empty concept base")
    return frozenset(
        apply_substitution(dict(zip(vs, images)), c)
        for images in itertools.product(pool, repeat=len(vs))
    )


def ground_instances(ax: Axiom, base: Iterable[Concept]) -> frozenset[Axiom]:
    """All instances of an axiom over a concept base.

    A ground axiom yields itself; a non-ground axiom over an empty base is
    an error.
    """
    vs = sorted(variables(ax))
    if not vs:
        return frozenset([ax])
    pool = sorted(set(base), key=sort_key)
    if not pool:
        raise ElxError("cannot ground over an empty concept base")
    return frozenset(
        apply_substitution(dict(zip(vs, images)), ax)
        for images in itertools.product(pool, repeat=len(vs))
    )


def ground_ontology(kb: Ontology, base: Iterable[Concept]) -> Ontology:
    """Every instance of every axiom of `kb` over `base`, in canonical order."""
    pool = sorted(set(base), key=sort_key)
    out: set[Axiom] = set()
    for ax in kb:
        out |= ground_instances(ax, pool)
    return Ontology(tuple(sorted(out, key=axiom_sort_key)))
