"""Entailment of inclusions from ontologies with concept variables.

``decide`` implements the grounding-based semantics: an ontology entails a
goal inclusion when, for some level of the expansion (see
:mod:`elx.expansion`), the ontology grounded over that level classically
entails the goal.  Goal-side variables are first generalized to fresh
concept names, which is sound and complete because fresh names behave like
arbitrary unknowns.

The procedure refuses ontologies outside the supported fragment: every
axiom must be range restricted, linear on the left, and safe on the right.
Within the fragment a positive answer is always definitive.  A negative
answer is definitive only when the expansion reached its fixpoint;
otherwise the verdict is unknown and carries ``definitive=False``.

For tractable ontologies (every positive existential filler a variable or
ground) the expansion is stationary after one step, so the level budget is
silently raised to three to guarantee a definitive answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .concepts import (
    Atom,
    Axiom,
    Concept,
    ElxError,
    Ontology,
    apply_substitution,
    concept_names,
    gci,
    ground_instances,
    ground_ontology,
    is_ground,
    variables,
)
from .expansion import ExpansionTrace, expand, to_single_variable_form
from .fragments import FragmentReport, all_gelt, classify
from .saturation import entails_ground


class Status(enum.Enum):
    ENTAILED = "entailed"
    NOT_ENTAILED = "not-entailed"
    UNKNOWN = "unknown"


class NotGeloError(ElxError):
    """Raised when an ontology falls outside the decidable fragment.

    Carries ``offenders``: one ``(position, axiom, report)`` triple per
    offending axiom, where ``position`` is the axiom's index in the
    ontology and ``report`` the fragment classification explaining which
    conditions failed.
    """

    def __init__(
        self, offenders: Sequence[tuple[int, Axiom, FragmentReport]]
    ) -> None:
        self.offenders = tuple(offenders)
        reasons = "; ".join(
            f"axiom {pos + 1}: {v.reason}"
            for pos, _, report in self.offenders
            for v in report.violations
        )
        super().__init__(f"ontology outside the supported fragment ({reasons})")


@dataclass(frozen=True)
class EntailmentVerdict:
    """Outcome of ``decide`` together with the evidence that produced it.

    ``level`` is the expansion level at which the verdict was reached (the
    fixpoint level for a definitive negative), ``witness`` the grounded
    ontology tested at that level, ``trace`` the full expansion, and
    ``fresh_names`` the goal-variable generalization that was applied.
    """

    status: Status
    level: Optional[int]
    definitive: bool
    witness: Optional[Ontology]
    trace: ExpansionTrace
    fresh_names: Mapping[str, str]

    def __bool__(self) -> bool:
        return self.status is Status.ENTAILED


def generalize_goal(
    goal: Axiom, taken: frozenset[str]
) -> tuple[Axiom, dict[str, str]]:
    """Replace goal variables by fresh concept names not in ``taken``."""
    fresh: dict[str, str] = {}
    counter = 0
    for v in sorted(variables(goal)):
        while f"F{counter}" in taken:
            counter += 1
        fresh[v] = f"F{counter}"
        counter += 1
    if not fresh:
        return goal, fresh
    theta = {v: Atom(name) for v, name in fresh.items()}
    return gci(
        apply_substitution(theta, goal.lhs),
        apply_substitution(theta, goal.rhs),
    ), fresh


def require_gelo(kb: Ontology) -> None:
    """Raise ``NotGeloError`` unless every axiom is in the fragment."""
    offenders = []
    for pos, ax in enumerate(kb):
        report = classify(ax)
        if not report.is_gelo:
            offenders.append((pos, ax, report))
    if offenders:
        raise NotGeloError(offenders)


def decide(
    kb: Ontology,
    goal: Axiom,
    max_levels: int = 10,
    single_variable: bool = False,
) -> EntailmentVerdict:
    """Decide whether the ontology entails the goal inclusion.

    ``max_levels`` bounds the total number of expansion levels, counting
    level zero.  With ``single_variable=True`` the ontology is first
    rewritten so that no axiom uses two distinct variables (tractable
    ontologies only); the rewriting preserves the entailment relation.
    """
    require_gelo(kb)
    if single_variable:
        kb = to_single_variable_form(kb)
    taken = concept_names(kb) | concept_names(goal)
    ground_goal, fresh = generalize_goal(goal, taken)

    budget = max_levels
    if all_gelt(kb):
        budget = max(budget, 3)
    trace = expand(kb, ground_goal, budget)

    for i, level in enumerate(trace.levels):
        if trace.fixpoint_reached and i == len(trace.levels) - 1:
            break  # identical to the level already tested
        grounded = ground_ontology(kb, level)
        if entails_ground(grounded, ground_goal):
            return EntailmentVerdict(
                status=Status.ENTAILED,
                level=i,
                definitive=True,
                witness=grounded,
                trace=trace,
                fresh_names=fresh,
            )

    if trace.fixpoint_reached:
        return EntailmentVerdict(
            status=Status.NOT_ENTAILED,
            level=len(trace.levels) - 1,
            definitive=True,
            witness=None,
            trace=trace,
            fresh_names=fresh,
        )
    return EntailmentVerdict(
        status=Status.UNKNOWN,
        level=None,
        definitive=False,
        witness=None,
        trace=trace,
        fresh_names=fresh,
    )


def check_schema(
    kb: Ontology, goal: Axiom, base: frozenset[Concept] | Sequence[Concept]
) -> bool:
    """Entailment under the fixed-base semantics.

    Both the ontology and the goal are grounded over the given base; the
    answer is positive when every ground instance of the goal follows
    classically from the grounded ontology.
    """
    base_set = frozenset(base)
    if not base_set:
        raise ElxError("the concept base must be nonempty")
    for c in base_set:
        if not is_ground(c):
            raise ElxError("the concept base must be ground")
    grounded_kb = ground_ontology(kb, base_set)
    instances = ground_instances(goal, base_set)
    return all(entails_ground(grounded_kb, g) for g in instances)
