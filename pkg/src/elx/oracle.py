"""Finite-model checking under second-order semantics, and countermodel search.

A variable axiom holds in an interpretation under second-order semantics
when it holds under *every* valuation of its variables by subsets of the
domain.  For range-restricted axioms with a linear left-hand side it is
enough to check the valuations that assign singletons, which drops the
cost per axiom from (2^|domain|)^v to |domain|^v checks.

`refute_entailment` searches all interpretations up to a domain bound for
one that satisfies a knowledge base and violates a goal.  Enumeration is
exhaustive and deterministic (domain size ascending, then extension
bitmaps in lexicographic order over the sorted signature, concept names
before role names), so the first countermodel found is reproducible.  A
state-count ceiling guards against accidentally huge searches; results
are refutation-only: finding no countermodel up to the bound proves
nothing by itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .concepts import (
    Atom,
    Axiom,
    Concept,
    Conj,
    ElxError,
    Exists,
    Ontology,
    Top,
    UnboundVariableError,
    Var,
    concept_names,
    is_ground,
    role_names,
    variables,
)
from .fragments import is_linear, is_range_restricted

#: A valuation maps variable names to sets of domain elements.
Valuation = Mapping[str, frozenset]

DEFAULT_STATE_CEILING = 2**30

_CHUNK = 1 << 16


class SingletonModeError(ElxError):
    """Singleton valuation mode was requested where it is not sound."""


class EnumerationLimitError(ElxError):
    """The interpretation search would exceed the configured state ceiling."""


@dataclass
class FiniteInterpretation:
    """A finite interpretation: ordered domain plus name extensions.

    Names absent from `concept_ext`/`role_ext` denote the empty extension.
    Treated as immutable after construction.
    """

    domain: tuple[str, ...]
    concept_ext: dict[str, frozenset[str]] = field(default_factory=dict)
    role_ext: dict[str, frozenset[tuple[str, str]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.domain = tuple(self.domain)
        if not self.domain:
            raise ElxError("interpretation domain must be nonempty")
        members = set(self.domain)
        if len(members) != len(self.domain):
            raise ElxError("interpretation domain contains duplicates")
        self.concept_ext = {k: frozenset(v) for k, v in self.concept_ext.items()}
        self.role_ext = {k: frozenset(v) for k, v in self.role_ext.items()}
        for name, ext in self.concept_ext.items():
            for e in ext:
                if e not in members:
                    raise ElxError(f"element {e!r} of {name!r} is not in the domain")
        for name, ext in self.role_ext.items():
            for a, b in ext:
                if a not in members or b not in members:
                    raise ElxError(f"pair ({a!r},{b!r}) of {name!r} leaves the domain")


@dataclass
class CanonicalInterpretation(FiniteInterpretation):
    """A finite interpretation whose elements stand for concepts."""

    element_concepts: dict[str, Concept] = field(default_factory=dict)


def eval_concept(
    interp: FiniteInterpretation, valuation: Valuation, c: Concept
) -> frozenset[str]:
    """The extension of a concept under a valuation of its variables."""
    if isinstance(c, Top):
        return frozenset(interp.domain)
    if isinstance(c, Atom):
        return interp.concept_ext.get(c.name, frozenset())
    if isinstance(c, Var):
        if c.name not in valuation:
            raise UnboundVariableError(c.name)
        return frozenset(valuation[c.name])
    if isinstance(c, Exists):
        targets = eval_concept(interp, valuation, c.filler)
        pairs = interp.role_ext.get(c.role, frozenset())
        return frozenset(a for a, b in pairs if b in targets)
    if isinstance(c, Conj):
        out = eval_concept(interp, valuation, c.conjuncts[0])
        for x in c.conjuncts[1:]:
            if not out:
                break
            out &= eval_concept(interp, valuation, x)
        return out
    raise TypeError(f"not a concept: {c!r}")


def satisfies(interp: FiniteInterpretation, valuation: Valuation, ax: Axiom) -> bool:
    """Does the axiom hold under this one valuation?"""
    return eval_concept(interp, valuation, ax.lhs) <= eval_concept(
        interp, valuation, ax.rhs
    )


def singleton_mode_applicable(ax: Axiom) -> bool:
    """Singleton valuations suffice for range-restricted, left-linear axioms."""
    return is_range_restricted(ax) and is_linear(ax.lhs)


def _subsets_in_order(domain: Sequence[str]) -> list[frozenset[str]]:
    # ascending bitmask over the domain order
    out = []
    for mask in range(1 << len(domain)):
        out.append(frozenset(domain[j] for j in range(len(domain)) if mask >> j & 1))
    return out


def _valuations(
    interp: FiniteInterpretation, vs: Sequence[str], mode: str
) -> Iterable[dict[str, frozenset[str]]]:
    if not vs:
        yield {}
        return
    if mode == "singleton":
        choices: list[frozenset[str]] = [frozenset([e]) for e in interp.domain]
    else:
        choices = _subsets_in_order(interp.domain)
    for images in itertools.product(choices, repeat=len(vs)):
        yield dict(zip(vs, images))


def so_witness(
    interp: FiniteInterpretation, ax: Axiom, mode: str = "all"
) -> Optional[dict[str, frozenset[str]]]:
    """First valuation violating the axiom, or None when it always holds.

    `mode` is "all" (every subset valuation) or "singleton".  Singleton
    mode is refused unless the axiom is range restricted with a linear
    lhs, because only then do singletons decide the general verdict.
    """
    if mode not in ("all", "singleton"):
        raise ValueError(f"unknown valuation mode {mode!r}")
    if mode == "singleton" and not singleton_mode_applicable(ax):
        problems = []
        if not is_range_restricted(ax):
            problems.append("the axiom is not range restricted")
        if not is_linear(ax.lhs):
            problems.append("its lhs is not linear")
        raise SingletonModeError(
            "singleton valuation mode is only sound for range-restricted axioms "
            "with a linear lhs: " + " and ".join(problems)
        )
    vs = sorted(variables(ax))
    for val in _valuations(interp, vs, mode):
        if not satisfies(interp, val, ax):
            return val
    return None


def satisfies_so(interp: FiniteInterpretation, ax: Axiom, mode: str = "all") -> bool:
    """Does the axiom hold under every valuation?  See `so_witness` for modes."""
    return so_witness(interp, ax, mode) is None


def satisfies_so_kb(
    interp: FiniteInterpretation, kb: Ontology
) -> tuple[bool, Optional[tuple[Axiom, dict[str, frozenset[str]]]]]:
    """Check every axiom under second-order semantics.

    Returns (True, None) when the interpretation is a model, otherwise
    (False, (axiom, valuation)) for the first violated axiom in ontology
    order together with its first violating valuation.  The singleton
    shortcut is applied automatically per axiom whenever it is sound.
    """
    for ax in kb:
        mode = "singleton" if singleton_mode_applicable(ax) else "all"
        witness = so_witness(interp, ax, mode)
        if witness is not None:
            return False, (ax, witness)
    return True, None


def compose_roles(
    interp: FiniteInterpretation, roles: Sequence[str]
) -> frozenset[tuple[str, str]]:
    """Relational composition of the given role chain, left to right."""
    if not roles:
        raise ElxError("role chain must contain at least one role")
    rel = interp.role_ext.get(roles[0], frozenset())
    for r in roles[1:]:
        step = interp.role_ext.get(r, frozenset())
        succ: dict[str, set[str]] = {}
        for a, b in step:
            succ.setdefault(a, set()).add(b)
        rel = frozenset((a, c) for a, b in rel for c in succ.get(b, ()))
    return frozenset(rel)


def check_role_composition(
    interp: FiniteInterpretation, lhs_roles: Sequence[str], rhs_roles: Sequence[str]
) -> bool:
    """Does the lhs role chain's composition sit inside the rhs chain's?"""
    return compose_roles(interp, lhs_roles) <= compose_roles(interp, rhs_roles)


# ---------------------------------------------------------------------------
# Countermodel search
# ---------------------------------------------------------------------------


def _signature(kb: Ontology, goal: Axiom) -> tuple[list[str], list[str]]:
    names = sorted(concept_names(kb) | concept_names(goal))
    roles = sorted(role_names(kb) | role_names(goal))
    return names, roles


def state_count(n_elements: int, n_concepts: int, n_roles: int) -> int:
    """Number of interpretations with the given domain size and signature."""
    return 1 << (n_elements * n_concepts + n_elements * n_elements * n_roles)


def refute_entailment(
    kb: Ontology,
    goal: Axiom,
    max_domain: int = 3,
    state_ceiling: int = DEFAULT_STATE_CEILING,
) -> Optional[tuple[FiniteInterpretation, dict[str, frozenset[str]]]]:
    """Search for an interpretation satisfying `kb` but violating `goal`.

    Tries every interpretation over the signature of kb and goal with up
    to `max_domain` elements, in canonical order, and returns the first
    countermodel together with a goal-violating valuation (empty for a
    ground goal).  Returns None when no countermodel exists within the
    bound; that outcome is inconclusive, not a proof of entailment.

    Sizes are searched in ascending order; EnumerationLimitError is
    raised only when a size that still needs searching would mean
    checking more than `state_ceiling` interpretations, so a small
    countermodel is found even when the full range would be infeasible.
    """
    if max_domain < 1:
        raise ElxError("max_domain must be at least 1")
    names, roles = _signature(kb, goal)
    for n in range(1, max_domain + 1):
        count = state_count(n, len(names), len(roles))
        if count > state_ceiling:
            raise EnumerationLimitError(
                f"enumerating domain size {n} over {len(names)} concept names and "
                f"{len(roles)} roles means {count} interpretations, above the "
                f"ceiling of {state_ceiling}; lower max_domain or raise the ceiling"
            )
        found = _search_domain_size(kb, goal, names, roles, n)
        if found is not None:
            interp = found
            if is_ground(goal):
                return interp, {}
            witness = so_witness(interp, goal, mode="all")
            assert witness is not None
            return interp, witness
    return None


def _eval_vec(c, n, full, conc_masks, succ, val_masks):
    """Evaluate a concept to a bitmask, vectorized over role configurations."""
    if isinstance(c, Top):
        return full
    if isinstance(c, Atom):
        return conc_masks[c.name]
    if isinstance(c, Var):
        return val_masks[c.name]
    if isinstance(c, Conj):
        out = _eval_vec(c.conjuncts[0], n, full, conc_masks, succ, val_masks)
        for x in c.conjuncts[1:]:
            out = out & _eval_vec(x, n, full, conc_masks, succ, val_masks)
        return out
    if isinstance(c, Exists):
        f = _eval_vec(c.filler, n, full, conc_masks, succ, val_masks)
        rows = succ[c.role]
        out = np.zeros(rows[0].shape, dtype=np.int64)
        for d in range(n):
            out |= ((rows[d] & f) != 0).astype(np.int64) << d
        return out
    raise TypeError(f"not a concept: {c!r}")


def _axiom_valuation_masks(ax: Axiom, n: int) -> list[dict[str, int]]:
    vs = sorted(variables(ax))
    if not vs:
        return [{}]
    if singleton_mode_applicable(ax):
        choices = [1 << e for e in range(n)]
    else:
        choices = list(range(1 << n))
    return [dict(zip(vs, images)) for images in itertools.product(choices, repeat=len(vs))]


def _goal_valuation_masks(goal: Axiom, n: int) -> list[dict[str, int]]:
    vs = sorted(variables(goal))
    if not vs:
        return [{}]
    choices = list(range(1 << n))
    return [dict(zip(vs, images)) for images in itertools.product(choices, repeat=len(vs))]


def _search_domain_size(kb, goal, names, roles, n) -> Optional[FiniteInterpretation]:
    full = (1 << n) - 1
    k, m = len(names), len(roles)
    role_bits = n * n * m
    r_total = 1 << role_bits
    role_mask_bits = (1 << (n * n)) - 1

    kb_vals = [(ax, _axiom_valuation_masks(ax, n)) for ax in kb]
    goal_vals = _goal_valuation_masks(goal, n)

    for cc in range(1 << (n * k)):
        conc_masks = {
            name: (cc >> ((k - 1 - i) * n)) & full for i, name in enumerate(names)
        }
        for start in range(0, r_total, _CHUNK):
            rr = np.arange(start, min(start + _CHUNK, r_total), dtype=np.int64)
            succ: dict[str, list[np.ndarray]] = {}
            for j, role in enumerate(roles):
                rmask = (rr >> ((m - 1 - j) * n * n)) & role_mask_bits
                succ[role] = [(rmask >> (d * n)) & full for d in range(n)]
            alive = np.ones(rr.shape, dtype=bool)
            for ax, vals in kb_vals:
                for val_masks in vals:
                    lhs = _eval_vec(ax.lhs, n, full, conc_masks, succ, val_masks)
                    rhs = _eval_vec(ax.rhs, n, full, conc_masks, succ, val_masks)
                    alive &= (lhs & (full ^ rhs)) == 0
                if not alive.any():
                    break
            if not alive.any():
                continue
            violated = np.zeros(rr.shape, dtype=bool)
            for val_masks in goal_vals:
                lhs = _eval_vec(goal.lhs, n, full, conc_masks, succ, val_masks)
                rhs = _eval_vec(goal.rhs, n, full, conc_masks, succ, val_masks)
                violated |= (lhs & (full ^ rhs)) != 0
            hits = alive & violated
            if hits.any():
                rr_val = start + int(np.argmax(hits))
                return _build_interpretation(n, names, roles, conc_masks, rr_val, m)
    return None


def _build_interpretation(n, names, roles, conc_masks, rr_val, m) -> FiniteInterpretation:
    domain = tuple(f"d{i}" for i in range(n))
    concept_ext = {}
    for name in names:
        mask = conc_masks[name]
        ext = frozenset(domain[j] for j in range(n) if mask >> j & 1)
        if ext:
            concept_ext[name] = ext
    role_ext = {}
    for j, role in enumerate(roles):
        rmask = (rr_val >> ((m - 1 - j) * n * n)) & ((1 << (n * n)) - 1)
        pairs = frozenset(
            (domain[a], domain[b])
            for a in range(n)
            for b in range(n)
            if rmask >> (a * n + b) & 1
        )
        if pairs:
            role_ext[role] = pairs
    return FiniteInterpretation(domain, concept_ext, role_ext)
