"""Level-wise construction of the concept base used for grounding.

Deciding an inclusion against an ontology with concept variables works by
grounding the variables over a growing base of ground concepts.  The base
starts from the goal's left-hand side and is enlarged level by level: each
step instantiates the fillers of positive existential subterms of the
ontology over the current base and unions the results in.  When two
consecutive levels coincide the base is closed and no further level can
change any verdict.

For tractable ontologies (every positive existential filler a variable or
ground) the construction is stationary after one step, and the closed form
is available directly without iterating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .concepts import (
    TOP,
    Axiom,
    Concept,
    Conj,
    ElxError,
    Exists,
    Ontology,
    Var,
    apply_substitution,
    gci,
    ground_concept_instances,
    is_ground,
    ontology,
    positive_subconcepts,
    subconcepts,
    variables,
)
from .fragments import all_gelt


@dataclass(frozen=True)
class ExpansionTrace:
    """The sequence of bases produced by the level-wise construction.

    ``fixpoint_reached`` is true when the last two levels are equal, in
    which case the final level is closed under further expansion.
    """

    levels: tuple[frozenset[Concept], ...]
    fixpoint_reached: bool

    @property
    def final(self) -> frozenset[Concept]:
        return self.levels[-1]

    def __len__(self) -> int:
        return len(self.levels)


def _existential_fillers(c: Concept) -> frozenset[Concept]:
    return frozenset(
        s.filler for s in subconcepts(c) if isinstance(s, Exists)
    )


def initial_base(goal: Axiom) -> frozenset[Concept]:
    """Level zero: the goal's lhs plus the fillers of its existential subterms."""
    if not is_ground(goal):
        raise ElxError(
            "the goal must be ground before expansion; generalize its "
            "variables to fresh concept names first"
        )
    return frozenset({goal.lhs}) | _existential_fillers(goal.lhs)


def positive_fillers(kb: Ontology) -> frozenset[Concept]:
    """Fillers of existential subterms on right-hand sides across the ontology."""
    out: set[Concept] = set()
    for ax in kb:
        for s in positive_subconcepts(ax):
            if isinstance(s, Exists):
                out.add(s.filler)
    return frozenset(out)


def expand_level(base: frozenset[Concept], kb: Ontology) -> frozenset[Concept]:
    """One expansion step: instantiate every positive filler over the base."""
    grown = set(base)
    for filler in positive_fillers(kb):
        grown |= ground_concept_instances(filler, base)
    return frozenset(grown)


def expand(kb: Ontology, goal: Axiom, max_levels: int = 10) -> ExpansionTrace:
    """Run the level-wise construction under a total level budget.

    The budget counts levels including level zero, so ``max_levels=3``
    produces at most three bases.  Expansion stops early once two
    consecutive levels agree.
    """
    budget = max(1, max_levels)
    levels: list[frozenset[Concept]] = [initial_base(goal)]
    while len(levels) < budget:
        nxt = expand_level(levels[-1], kb)
        levels.append(nxt)
        if nxt == levels[-2]:
            break
    fixpoint = len(levels) >= 2 and levels[-1] == levels[-2]
    return ExpansionTrace(levels=tuple(levels), fixpoint_reached=fixpoint)


def closed_form_base(kb: Ontology, goal: Axiom) -> frozenset[Concept]:
    """The stationary base for a tractable ontology, without iterating.

    Equals level zero united with the ground positive existential fillers;
    variable fillers only ever replay the current base, so one step closes
    the construction.
    """
    if not all_gelt(kb):
        raise ElxError(
            "the closed-form base requires every positive existential "
            "filler to be a variable or ground"
        )
    ground_fillers = {f for f in positive_fillers(kb) if not isinstance(f, Var)}
    return initial_base(goal) | ground_fillers


def to_single_variable_form(kb: Ontology) -> Ontology:
    """Rewrite a tractable ontology so no axiom uses two distinct variables.

    Axioms with at most one variable are kept as they are.  An axiom with
    more is split along the top-level conjuncts of its right-hand side;
    each piece keeps only the variable its conjunct mentions, and the
    remaining left-hand-side variables are weakened to Top.
    """
    if not all_gelt(kb):
        raise ElxError(
            "single-variable form requires every positive existential "
            "filler to be a variable or ground"
        )
    out: list[Axiom] = []
    for ax in kb:
        if len(variables(ax)) < 2:
            out.append(ax)
            continue
        parts = ax.rhs.conjuncts if isinstance(ax.rhs, Conj) else (ax.rhs,)
        for part in parts:
            keep = variables(part)
            theta = {
                v: (Var(v) if v in keep else TOP) for v in variables(ax.lhs)
            }
            out.append(
                gci(
                    apply_substitution(theta, ax.lhs),
                    apply_substitution(theta, part) if variables(part) else part,
                )
            )
    return ontology(out)
