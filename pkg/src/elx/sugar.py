"""Classical role axioms encoded as concept-variable axioms.

Four sugar forms compile into a single variable axiom each:

    RoleChain(r1..rm, s)        ->  exists r1...exists rm.?X SubClassOf exists s.?X
    SelfRestriction(C, r)       ->  C and ?X SubClassOf exists r.?X
    LocalRoleValueMap(C, r, s)  ->  C and exists r.?X SubClassOf exists s.?X
    GuardedChain(C0,[(Ci,ri)],s) -> C0 and exists r1.(C1 and ... exists rn.(Cn and ?X))
                                      SubClassOf exists s.?X

A reflexive role is the degenerate SelfRestriction with lhs Top.  All
concept parts must be ground; the one variable introduced is chosen by
the caller (or defaults to ?X) and can never clash because of that.
Chains into a *composite* right-hand side are rejected outright: axiom
entailment in their presence is undecidable, so no encoding is offered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .concepts import Axiom, Concept, ElxError, Exists, Var, conj, gci, is_ground


@dataclass(frozen=True)
class RoleChain:
    """Composition of lhs_roles is included in rhs_role."""

    lhs_roles: tuple[str, ...]
    rhs_role: str


@dataclass(frozen=True)
class SelfRestriction:
    """Every instance of lhs has itself as a `role` successor."""

    lhs: Concept
    role: str


@dataclass(frozen=True)
class LocalRoleValueMap:
    """On instances of lhs, every sub_role successor is a super_role successor."""

    lhs: Concept
    sub_role: str
    super_role: str


@dataclass(frozen=True)
class GuardedChain:
    """A guarded chain of (concept, role) steps included in one role."""

    guard: Concept
    steps: tuple[tuple[Concept, str], ...]
    rhs_role: str


SugarAxiom = Union[RoleChain, SelfRestriction, LocalRoleValueMap, GuardedChain]


def _require_ground(c: Concept, what: str) -> None:
    if not is_ground(c):
        raise ElxError(f"{what} must be ground")


def desugar(s: SugarAxiom, var_name: str = "X") -> Axiom:
    """Expand a sugar axiom into its equivalent variable axiom."""
    x = Var(var_name)
    if isinstance(s, RoleChain):
        if not s.lhs_roles:
            raise ElxError("a role chain needs at least one role on the lhs")
        body: Concept = x
        for role in reversed(s.lhs_roles):
            body = Exists(role, body)
        return gci(body, Exists(s.rhs_role, x))
    if isinstance(s, SelfRestriction):
        _require_ground(s.lhs, "the lhs of a Self restriction")
        return gci(conj([s.lhs, x]), Exists(s.role, x))
    if isinstance(s, LocalRoleValueMap):
        _require_ground(s.lhs, "the lhs of a local role inclusion")
        return gci(conj([s.lhs, Exists(s.sub_role, x)]), Exists(s.super_role, x))
    if isinstance(s, GuardedChain):
        _require_ground(s.guard, "the guard of a guarded chain")
        inner: Concept = x
        for c, role in reversed(s.steps):
            _require_ground(c, "every step concept of a guarded chain")
            inner = Exists(role, conj([c, inner]))
        return gci(conj([s.guard, inner]), Exists(s.rhs_role, x))
    raise TypeError(f"not a sugar axiom: {s!r}")
