"""Seeded random generators shared by the property-style test suites.

Everything takes an explicit ``random.Random`` so failures reproduce from
the seed printed by the failing assertion.  Generators come in matched
pairs: an unrestricted form used to exercise validators, and restricted
forms (linear lhs, safe rhs, tractable fillers) used where a suite needs
inputs inside a fragment.
"""

from __future__ import annotations

import random
from typing import Sequence

from elx.concepts import (
    TOP,
    Atom,
    Axiom,
    Concept,
    Exists,
    Ontology,
    Var,
    conj,
    gci,
    ontology,
    variables,
)
from elx.oracle import FiniteInterpretation


def random_concept(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    vars_: Sequence[str] = (),
    depth: int = 3,
) -> Concept:
    """An arbitrary concept; variables may appear anywhere."""
    choices = ["atom", "top"]
    if vars_:
        choices.append("var")
    if depth > 0:
        choices += ["exists", "exists", "conj", "conj"]
    kind = rng.choice(choices)
    if kind == "atom":
        return Atom(rng.choice(list(names)))
    if kind == "top":
        return TOP
    if kind == "var":
        return Var(rng.choice(list(vars_)))
    if kind == "exists":
        return Exists(
            rng.choice(list(roles)),
            random_concept(rng, names, roles, vars_, depth - 1),
        )
    parts = [
        random_concept(rng, names, roles, vars_, depth - 1)
        for _ in range(rng.randint(2, 3))
    ]
    return conj(parts)


def random_ground_concept(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    depth: int = 3,
) -> Concept:
    return random_concept(rng, names, roles, (), depth)


def random_linear_concept(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    vars_: Sequence[str],
    depth: int = 3,
) -> Concept:
    """A concept in which each variable occurs at most once.

    Built by drawing an arbitrary shape over a private pool of variables,
    one per allowed variable name, so occurrences cannot repeat.
    """
    pool = list(vars_)
    rng.shuffle(pool)

    def build(depth: int) -> Concept:
        choices = ["atom", "top"]
        if pool:
            choices += ["var", "var"]
        if depth > 0:
            choices += ["exists", "exists", "conj"]
        kind = rng.choice(choices)
        if kind == "var":
            return Var(pool.pop())
        if kind == "atom":
            return Atom(rng.choice(list(names)))
        if kind == "top":
            return TOP
        if kind == "exists":
            return Exists(rng.choice(list(roles)), build(depth - 1))
        return conj([build(depth - 1) for _ in range(rng.randint(2, 3))])

    return build(depth)


def random_safe_concept(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    vars_: Sequence[str],
    depth: int = 3,
    tractable: bool = False,
) -> Concept:
    """A concept whose variables occur only as immediate existential fillers.

    With ``tractable=True`` every existential filler is additionally either
    a bare variable or ground.
    """
    choices = ["atom", "top"]
    if depth > 0:
        choices += ["exists", "exists", "conj"]
    kind = rng.choice(choices)
    if kind == "atom":
        return Atom(rng.choice(list(names)))
    if kind == "top":
        return TOP
    if kind == "exists":
        role = rng.choice(list(roles))
        if vars_ and rng.random() < 0.5:
            return Exists(role, Var(rng.choice(list(vars_))))
        if tractable:
            return Exists(role, random_ground_concept(rng, names, roles, depth - 1))
        return Exists(
            role, random_safe_concept(rng, names, roles, vars_, depth - 1, tractable)
        )
    parts = [
        random_safe_concept(rng, names, roles, vars_, depth - 1, tractable)
        for _ in range(rng.randint(2, 3))
    ]
    return conj(parts)


def random_gelo_axiom(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    max_vars: int = 2,
    depth: int = 3,
    tractable: bool = False,
) -> Axiom:
    """A random axiom inside the decidable fragment.

    The lhs is linear over a random subset of variables; the rhs is safe
    and only uses variables that actually made it into the lhs, keeping
    the axiom range restricted.
    """
    var_pool = ["X", "Y"][: rng.randint(0, max_vars)]
    lhs = random_linear_concept(rng, names, roles, var_pool, depth)
    usable = sorted(variables(lhs))
    rhs = random_safe_concept(rng, names, roles, usable, depth, tractable)
    return gci(lhs, rhs)


def random_gelt_axiom(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    max_vars: int = 2,
    depth: int = 3,
) -> Axiom:
    return random_gelo_axiom(rng, names, roles, max_vars, depth, tractable=True)


def random_gelt_kb(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    max_axioms: int = 4,
    depth: int = 2,
) -> Ontology:
    return ontology(
        random_gelt_axiom(rng, names, roles, depth=depth)
        for _ in range(rng.randint(1, max_axioms))
    )


def random_interpretation(
    rng: random.Random,
    names: Sequence[str],
    roles: Sequence[str],
    max_elements: int = 3,
) -> FiniteInterpretation:
    """A random finite interpretation with a nonempty domain."""
    n = rng.randint(1, max_elements)
    domain = tuple(f"d{i}" for i in range(n))
    concept_ext = {}
    for a in names:
        ext = frozenset(d for d in domain if rng.random() < 0.5)
        if ext:
            concept_ext[a] = ext
    role_ext = {}
    for r in roles:
        pairs = frozenset(
            (x, y) for x in domain for y in domain if rng.random() < 0.4
        )
        if pairs:
            role_ext[r] = pairs
    return FiniteInterpretation(
        domain=domain, concept_ext=concept_ext, role_ext=role_ext
    )


def random_valuation(
    rng: random.Random, domain: Sequence[str], vars_: Sequence[str]
) -> dict[str, frozenset[str]]:
    return {
        v: frozenset(d for d in domain if rng.random() < 0.5) for v in vars_
    }
