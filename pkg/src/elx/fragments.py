"""Syntactic fragment checks for variable axioms.

An axiom is *range restricted* when every right-hand-side variable also
occurs on the left, *left linear* when no variable occurs twice on the
left, and *right safe* when right-hand-side variables appear only as the
immediate filler of an existential restriction.  Axioms with all three
properties form the fragment the decision pipeline accepts ("gelo");
the tractable subfragment ("gelt") additionally requires every
existential restriction occurring positively to have a filler that is
either a variable or ground.
"""

from __future__ import annotations

from dataclasses import dataclass

from .concepts import (
    Axiom,
    Concept,
    Conj,
    Exists,
    Ontology,
    Var,
    is_ground,
    sort_key,
    subconcepts,
    variable_occurrences,
    variables,
)


@dataclass(frozen=True)
class Violation:
    """One reason an axiom falls outside a fragment, with the subterm at fault."""

    reason: str
    subterm: Concept


@dataclass(frozen=True)
class FragmentReport:
    range_restricted: bool
    lhs_linear: bool
    rhs_safe: bool
    is_gelo: bool
    is_gelt: bool
    violations: tuple[Violation, ...]


def is_range_restricted(ax: Axiom) -> bool:
    return variables(ax.rhs) <= variables(ax.lhs)


def is_linear(c: Concept) -> bool:
    """True when no variable occurs more than once in the concept."""
    return all(k <= 1 for k in variable_occurrences(c).values())


def is_safe(c: Concept) -> bool:
    """True when every variable occurrence is an immediate existential filler."""
    if isinstance(c, Var):
        return False
    if isinstance(c, Exists):
        return isinstance(c.filler, Var) or is_safe(c.filler)
    if isinstance(c, Conj):
        return all(is_safe(x) for x in c.conjuncts)
    return True


def _unguarded_vars(c: Concept, out: list[Var]) -> None:
    # collect variable occurrences that are not immediate existential fillers
    if isinstance(c, Var):
        out.append(c)
    elif isinstance(c, Exists):
        if not isinstance(c.filler, Var):
            _unguarded_vars(c.filler, out)
    elif isinstance(c, Conj):
        for x in c.conjuncts:
            _unguarded_vars(x, out)


def classify(ax: Axiom) -> FragmentReport:
    """Judge one axiom against every fragment check and collect violations."""
    violations: list[Violation] = []

    rr = is_range_restricted(ax)
    if not rr:
        for name in sorted(variables(ax.rhs) - variables(ax.lhs)):
            violations.append(
                Violation(
                    f"not range restricted: ?{name} occurs only on the rhs",
                    Var(name),
                )
            )

    lin = is_linear(ax.lhs)
    if not lin:
        for name, k in sorted(variable_occurrences(ax.lhs).items()):
            if k > 1:
                times = "twice" if k == 2 else f"{k} times"
                violations.append(
                    Violation(f"lhs not linear: ?{name} occurs {times}", Var(name))
                )

    safe = is_safe(ax.rhs)
    if not safe:
        seen: list[Var] = []
        _unguarded_vars(ax.rhs, seen)
        for v in dict.fromkeys(seen):
            violations.append(
                Violation(
                    f"rhs not safe: ?{v.name} occurs outside an existential filler",
                    v,
                )
            )

    gelo = rr and lin and safe

    gelt_ok = True
    for sub in sorted(subconcepts(ax.rhs), key=sort_key):
        if isinstance(sub, Exists):
            f = sub.filler
            if not (isinstance(f, Var) or is_ground(f)):
                gelt_ok = False
                violations.append(
                    Violation(
                        "not tractable: positive existential filler is neither "
                        "a variable nor ground",
                        sub,
                    )
                )

    return FragmentReport(
        range_restricted=rr,
        lhs_linear=lin,
        rhs_safe=safe,
        is_gelo=gelo,
        is_gelt=gelo and gelt_ok,
        violations=tuple(violations),
    )


def is_gelo(ax: Axiom) -> bool:
    return classify(ax).is_gelo


def is_gelt(ax: Axiom) -> bool:
    return classify(ax).is_gelt


def classify_ontology(kb: Ontology) -> tuple[FragmentReport, ...]:
    return tuple(classify(ax) for ax in kb)


def all_gelo(kb: Ontology) -> bool:
    return all(r.is_gelo for r in classify_ontology(kb))


def all_gelt(kb: Ontology) -> bool:
    return all(r.is_gelt for r in classify_ontology(kb))
