"""Classical ground entailment by structural normal form and saturation.

A ground ontology is compiled into four normal axiom shapes over names
(`A SubClassOf B`, `A1 and A2 SubClassOf B`, `A SubClassOf exists r.B`,
`exists r.A SubClassOf B`) by naming complex subconcepts with fresh
definition names.  Definition names are deterministic: the canonical
rendering of the concept they stand for, behind a prefix users cannot
write.  A worklist then saturates two relations, `subsumers[A]` (derived
names above A) and `links[r]` (derived existential successors), under
four completion rules:

    R1  A' in subsumers[A],  A' SubClassOf B             =>  B in subsumers[A]
    R2  A1, A2 in subsumers[A],  A1 and A2 SubClassOf B  =>  B in subsumers[A]
    R3  A' in subsumers[A],  A' SubClassOf exists r.B    =>  (A,B) in links[r]
    R4  (A,B) in links[r],  B' in subsumers[B],
        exists r.B' SubClassOf A''                       =>  A'' in subsumers[A]

with subsumers[A] seeded to {A, top}.  Every (rule, premise) pair is
processed at most once, so saturation is polynomial in the input size.
`entails_ground` reduces a ground goal inclusion to a subsumption between
two definition names introduced with defining axioms in both directions.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .concepts import (
    Atom,
    Axiom,
    Concept,
    Conj,
    ElxError,
    Exists,
    Ontology,
    Top,
    concept_names,
    is_ground,
    role_names,
    sort_key,
)
from .oracle import CanonicalInterpretation
from .syntax import print_concept

TOP_NAME = "#top"
_DEF_PREFIX = "#def:"


@dataclass(frozen=True)
class SubName:
    lhs: str
    rhs: str


@dataclass(frozen=True)
class SubConj:
    lhs1: str
    lhs2: str
    rhs: str


@dataclass(frozen=True)
class SubExists:
    lhs: str
    role: str
    filler: str


@dataclass(frozen=True)
class ExistsSub:
    role: str
    filler: str
    rhs: str


NormalAxiom = Union[SubName, SubConj, SubExists, ExistsSub]


def is_definition_name(name: str) -> bool:
    return name.startswith("#")


class Normalizer:
    """Accumulates normal axioms while naming complex subconcepts on demand.

    For each complex concept C two directions of defining axioms exist:
    "super" makes C SubClassOf name derivable, "sub" makes name
    SubClassOf C derivable.  Each direction is emitted at most once.
    """

    def __init__(self) -> None:
        self.axioms: set[NormalAxiom] = set()
        self.names: set[str] = {TOP_NAME}
        self.name_table: dict[str, Concept] = {}
        self._emitted: set[tuple[str, str]] = set()

    def _emit(self, ax: NormalAxiom) -> None:
        self.axioms.add(ax)

    def _fresh(self, c: Concept) -> str:
        name = _DEF_PREFIX + print_concept(c)
        if name not in self.name_table:
            self.name_table[name] = c
        self.names.add(name)
        return name

    def _atom_name(self, c: Concept) -> str:
        if isinstance(c, Top):
            return TOP_NAME
        assert isinstance(c, Atom)
        self.names.add(c.name)
        return c.name

    def name_sub(self, c: Concept) -> str:
        """A name below c: the defining axioms give name SubClassOf c."""
        if isinstance(c, (Top, Atom)):
            return self._atom_name(c)
        n = self._fresh(c)
        if (n, "sub") not in self._emitted:
            self._emitted.add((n, "sub"))
            if isinstance(c, Conj):
                for x in c.conjuncts:
                    self._emit(SubName(n, self.name_sub(x)))
            elif isinstance(c, Exists):
                self._emit(SubExists(n, c.role, self.name_sub(c.filler)))
            else:
                raise ElxError(f"cannot normalize non-ground concept {c!r}")
        return n

    def name_super(self, c: Concept) -> str:
        """A name above c: the defining axioms give c SubClassOf name."""
        if isinstance(c, (Top, Atom)):
            return self._atom_name(c)
        n = self._fresh(c)
        if (n, "super") not in self._emitted:
            self._emitted.add((n, "super"))
            if isinstance(c, Conj):
                parts = [self.name_super(x) for x in c.conjuncts]
                self._fold_conj(c, parts, n)
            elif isinstance(c, Exists):
                self._emit(ExistsSub(c.role, self.name_super(c.filler), n))
            else:
                raise ElxError(f"cannot normalize non-ground concept {c!r}")
        return n

    def name_both(self, c: Concept) -> str:
        """A name equivalent to c (defining axioms in both directions)."""
        n = self.name_sub(c)
        self.name_super(c)
        return n

    def _fold_conj(self, c: Conj, parts: list[str], target: str) -> None:
        # binary folding over the canonical conjunct order; intermediate
        # prefixes get their own deterministic definition names
        cur = parts[0]
        for i in range(1, len(parts)):
            if i == len(parts) - 1:
                t = target
            else:
                prefix = Conj(tuple(c.conjuncts[: i + 1]))
                t = self._fresh(prefix)
                self._emitted.add((t, "super"))
            self._emit(SubConj(cur, parts[i], t))
            cur = t

    def add_axiom(self, ax: Axiom) -> None:
        if not is_ground(ax):
            raise ElxError("only ground axioms can be put in normal form")
        rhs_parts = ax.rhs.conjuncts if isinstance(ax.rhs, Conj) else (ax.rhs,)
        for d in rhs_parts:
            self._add_inclusion(ax.lhs, d)

    def _add_inclusion(self, c: Concept, d: Concept) -> None:
        # d is never a conjunction here
        if isinstance(d, Top):
            # tautology, but record the names mentioned on the left
            self._lhs_name(c)
            return
        if isinstance(d, Exists):
            a = self._lhs_name(c)
            self._emit(SubExists(a, d.role, self.name_sub(d.filler)))
            return
        b = self._atom_name(d)
        if isinstance(c, Exists):
            self._emit(ExistsSub(c.role, self.name_super(c.filler), b))
        elif isinstance(c, Conj):
            parts = [self.name_super(x) for x in c.conjuncts]
            self._fold_conj(c, parts, b)
        else:
            self._emit(SubName(self._atom_name(c), b))

    def _lhs_name(self, c: Concept) -> str:
        if isinstance(c, (Top, Atom)):
            return self._atom_name(c)
        return self.name_super(c)


def normalize_ontology(kb: Ontology) -> frozenset[NormalAxiom]:
    """Compile a ground ontology into the four normal axiom shapes."""
    nz = Normalizer()
    for ax in kb:
        nz.add_axiom(ax)
    return frozenset(nz.axioms)


@dataclass
class SaturationIndex:
    """Saturated derived relations plus the definition-name table."""

    subsumers: dict[str, set[str]]
    links: dict[str, set[tuple[str, str]]]
    name_table: dict[str, Concept] = field(default_factory=dict)


def saturate(
    axioms: Iterable[NormalAxiom], names: Iterable[str]
) -> SaturationIndex:
    """Close the subsumption and link relations under the completion rules."""
    axioms = list(axioms)
    all_names: set[str] = set(names) | {TOP_NAME}
    for ax in axioms:
        if isinstance(ax, SubName):
            all_names |= {ax.lhs, ax.rhs}
        elif isinstance(ax, SubConj):
            all_names |= {ax.lhs1, ax.lhs2, ax.rhs}
        elif isinstance(ax, SubExists):
            all_names |= {ax.lhs, ax.filler}
        else:
            all_names |= {ax.filler, ax.rhs}

    sub_by_lhs: dict[str, list[str]] = defaultdict(list)
    conj_index: dict[str, list[tuple[str, str]]] = defaultdict(list)
    exists_by_lhs: dict[str, list[tuple[str, str]]] = defaultdict(list)
    exists_sub: dict[tuple[str, str], list[str]] = defaultdict(list)
    for ax in axioms:
        if isinstance(ax, SubName):
            sub_by_lhs[ax.lhs].append(ax.rhs)
        elif isinstance(ax, SubConj):
            conj_index[ax.lhs1].append((ax.lhs2, ax.rhs))
            if ax.lhs1 != ax.lhs2:
                conj_index[ax.lhs2].append((ax.lhs1, ax.rhs))
        elif isinstance(ax, SubExists):
            exists_by_lhs[ax.lhs].append((ax.role, ax.filler))
        else:
            exists_sub[(ax.role, ax.filler)].append(ax.rhs)

    subsumers: dict[str, set[str]] = {a: set() for a in all_names}
    links: dict[str, set[tuple[str, str]]] = defaultdict(set)
    preds: dict[str, set[tuple[str, str]]] = defaultdict(set)
    queue: deque = deque()

    def add_sub(a: str, b: str) -> None:
        if b not in subsumers[a]:
            subsumers[a].add(b)
            queue.append(("s", a, b))

    def add_link(r: str, a: str, b: str) -> None:
        if (a, b) not in links[r]:
            links[r].add((a, b))
            preds[b].add((r, a))
            queue.append(("r", r, a, b))

    for a in all_names:
        add_sub(a, a)
        add_sub(a, TOP_NAME)

    while queue:
        event = queue.popleft()
        if event[0] == "s":
            _, a, a1 = event
            for b in sub_by_lhs[a1]:
                add_sub(a, b)
            for a2, b in conj_index[a1]:
                if a2 in subsumers[a]:
                    add_sub(a, b)
            for r, b in exists_by_lhs[a1]:
                add_link(r, a, b)
            # a1 joined subsumers[a]; revisit links pointing at a
            for r, p in preds[a]:
                for b in exists_sub[(r, a1)]:
                    add_sub(p, b)
        else:
            _, r, a, b = event
            for b1 in tuple(subsumers[b]):
                for c in exists_sub[(r, b1)]:
                    add_sub(a, c)

    return SaturationIndex(subsumers=subsumers, links=dict(links))


def entails_ground(kb: Ontology, goal: Axiom) -> bool:
    """Does the ground ontology entail the ground inclusion classically?"""
    if not is_ground(goal):
        raise ElxError("entails_ground needs a ground goal")
    nz = Normalizer()
    for ax in kb:
        nz.add_axiom(ax)
    lhs_name = nz.name_both(goal.lhs)
    rhs_name = nz.name_both(goal.rhs)
    index = saturate(nz.axioms, nz.names)
    return rhs_name in index.subsumers[lhs_name]


def canonical_interpretation(
    kb: Ontology, base: Iterable[Concept]
) -> CanonicalInterpretation:
    """The interpretation whose elements are the concepts of a nonempty base.

    Element x stands for base concept C; x lies in concept name A exactly
    when kb entails C SubClassOf A, and (x_C, x_D) lies in role r exactly
    when kb entails C SubClassOf exists r.D.  All extensions are computed
    from one saturation run.
    """
    base_list = sorted(set(base), key=sort_key)
    if not base_list:
        raise ElxError("the concept base must be nonempty")
    for c in base_list:
        if not is_ground(c):
            raise ElxError("the concept base must be ground")
    if not all(is_ground(ax) for ax in kb):
        raise ElxError("canonical interpretations need a ground ontology")

    nz = Normalizer()
    for ax in kb:
        nz.add_axiom(ax)
    atom_names = sorted(concept_names(kb).union(*[concept_names(c) for c in base_list]))
    roles = sorted(role_names(kb).union(*[role_names(c) for c in base_list]))
    base_names = {c: nz.name_both(c) for c in base_list}
    exists_names = {
        (r, c): nz.name_both(Exists(r, c)) for r in roles for c in base_list
    }
    index = saturate(nz.axioms, set(nz.names) | set(atom_names))

    elements = {c: f"x{i}" for i, c in enumerate(base_list)}
    concept_ext: dict[str, frozenset[str]] = {}
    for a in atom_names:
        ext = frozenset(
            elements[c] for c in base_list if a in index.subsumers[base_names[c]]
        )
        if ext:
            concept_ext[a] = ext
    role_ext: dict[str, frozenset[tuple[str, str]]] = {}
    for r in roles:
        pairs = frozenset(
            (elements[c], elements[d])
            for c in base_list
            for d in base_list
            if exists_names[(r, d)] in index.subsumers[base_names[c]]
        )
        if pairs:
            role_ext[r] = pairs
    return CanonicalInterpretation(
        domain=tuple(elements[c] for c in base_list),
        concept_ext=concept_ext,
        role_ext=role_ext,
        element_concepts={elements[c]: c for c in base_list},
    )
