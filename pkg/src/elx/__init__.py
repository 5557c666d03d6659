"""Reasoning with EL ontologies extended by concept variables.

The package decides entailment of concept inclusions from ontologies whose
axioms may quantify universally over concepts, via level-wise grounding
over a growing concept base.  It also ships a finite second-order model
checker used as an independent oracle, fragment validators, syntactic
sugar for role chains and related forms, and a small CLI.
"""

from __future__ import annotations

from .concepts import (
    TOP,
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
    apply_substitution,
    conj,
    gci,
    ground_instances,
    ground_ontology,
    ontology,
    subconcepts,
    variables,
)
from .entailment import (
    EntailmentVerdict,
    NotGeloError,
    Status,
    check_schema,
    decide,
    generalize_goal,
)
from .expansion import (
    ExpansionTrace,
    closed_form_base,
    expand,
    initial_base,
    to_single_variable_form,
)
from .fragments import FragmentReport, all_gelo, all_gelt, classify, is_gelo, is_gelt
from .oracle import (
    CanonicalInterpretation,
    FiniteInterpretation,
    refute_entailment,
    satisfies,
    satisfies_so,
    satisfies_so_kb,
    so_witness,
)
from .saturation import canonical_interpretation, entails_ground
from .sugar import GuardedChain, LocalRoleValueMap, RoleChain, SelfRestriction, desugar
from .syntax import (
    ParseError,
    parse_axiom,
    parse_concept,
    parse_interpretation,
    parse_ontology,
    print_axiom,
    print_concept,
    print_interpretation,
    print_ontology,
)

__version__ = "0.1.0"

__all__ = [
    "TOP",
    "Atom",
    "Axiom",
    "CanonicalInterpretation",
    "Concept",
    "Conj",
    "ElxError",
    "EntailmentVerdict",
    "Exists",
    "ExpansionTrace",
    "FiniteInterpretation",
    "FragmentReport",
    "GuardedChain",
    "LocalRoleValueMap",
    "NotGeloError",
    "Ontology",
    "ParseError",
    "RoleChain",
    "SelfRestriction",
    "Status",
    "Top",
    "UnboundVariableError",
    "Var",
    "all_gelo",
    "all_gelt",
    "apply_substitution",
    "canonical_interpretation",
    "check_schema",
    "classify",
    "closed_form_base",
    "conj",
    "decide",
    "desugar",
    "entails_ground",
    "expand",
    "gci",
    "generalize_goal",
    "ground_instances",
    "ground_ontology",
    "initial_base",
    "is_gelo",
    "is_gelt",
    "ontology",
    "parse_axiom",
    "parse_concept",
    "parse_interpretation",
    "parse_ontology",
    "print_axiom",
    "print_concept",
    "print_interpretation",
    "print_ontology",
    "refute_entailment",
    "satisfies",
    "satisfies_so",
    "satisfies_so_kb",
    "so_witness",
    "subconcepts",
    "to_single_variable_form",
    "variables",
]
