"""Kernel tests: canonical concept construction, subterm queries,
substitution, and grounding over a concept base."""

from __future__ import annotations

import random

import pytest

from elx.concepts import (
    TOP,
    Atom,
    Conj,
    ElxError,
    Exists,
    Top,
    UnboundVariableError,
    Var,
    apply_substitution,
    axiom_sort_key,
    concept_names,
    conj,
    gci,
    ground_concept_instances,
    ground_instances,
    ground_ontology,
    is_ground,
    normalize,
    ontology,
    polar_subconcepts,
    positive_subconcepts,
    role_names,
    sort_key,
    subconcepts,
    variable_occurrences,
    variables,
)

A, B, C, D = Atom("A"), Atom("B"), Atom("C"), Atom("D")
X, Y = Var("X"), Var("Y")


class TestConjFactory:
    def test_flattens_nested_conjunctions(self):
        inner = conj([A, B])
        assert conj([inner, C]) == conj([A, B, C])

    def test_drops_top_and_duplicates(self):
        assert conj([A, TOP, A]) == A
        assert conj([TOP, TOP]) == TOP
        assert conj([]) == TOP

    def test_sorts_conjuncts_canonically(self):
        assert conj([B, A]) == conj([A, B])
        c = conj([Exists("r", A), A, X])
        assert isinstance(c, Conj)
        # atoms sort before variables, variables before existentials
        assert c.conjuncts == (A, X, Exists("r", A))

    def test_single_part_collapses(self):
        assert conj([Exists("r", A)]) == Exists("r", A)


class TestNormalize:
    def test_rebuilds_nested_structure(self):
        raw = Conj((Conj((B, A)), TOP))
        assert normalize(raw) == conj([A, B])

    def test_idempotent_on_random_concepts(self):
        rng = random.Random(7)
        from randgen import random_concept

        for _ in range(300):
            c = normalize(
                random_concept(rng, ["A", "B"], ["r", "s"], ["X"], depth=4)
            )
            assert normalize(c) == c

    def test_gci_normalizes_both_sides(self):
        ax = gci(Conj((B, A)), Conj((A, Conj((A, TOP)))))
        assert ax.lhs == conj([A, B])
        assert ax.rhs == A


class TestSubconcepts:
    def test_nonlinear_axiom_subterms(self):
        ax = gci(conj([Exists("r", X), Exists("s", X)]), Exists("t", X))
        subs = subconcepts(ax)
        assert Exists("t", X) in subs
        assert X in subs
        assert Exists("r", X) in subs
        assert Exists("s", X) in subs
        assert conj([Exists("r", X), Exists("s", X)]) in subs

    def test_positive_side_is_rhs_only(self):
        ax = gci(conj([Exists("r", X), Exists("s", X)]), Exists("t", X))
        assert positive_subconcepts(ax) == frozenset({Exists("t", X), X})

    def test_negative_side_lists_lhs_subterms(self):
        ax = gci(conj([Exists("r", X), Exists("s", Y)]), Exists("t", X))
        _, neg = polar_subconcepts(ax)
        assert neg == frozenset(
            {
                conj([Exists("r", X), Exists("s", Y)]),
                Exists("r", X),
                Exists("s", Y),
                X,
                Y,
            }
        )


class TestVariables:
    def test_two_variable_axiom(self):
        ax = gci(conj([Exists("r", X), Exists("s", Y)]), Exists("t", X))
        assert variables(ax) == frozenset({"X", "Y"})

    def test_occurrence_counts(self):
        c = conj([Exists("r", X), Exists("s", X), Y])
        occ = variable_occurrences(c)
        assert occ["X"] == 2 and occ["Y"] == 1

    def test_is_ground(self):
        assert is_ground(gci(A, Exists("r", B)))
        assert not is_ground(Exists("r", X))

    def test_name_collectors(self):
        ax = gci(conj([A, Exists("r", B)]), Exists("s", X))
        assert concept_names(ax) == frozenset({"A", "B"})
        assert role_names(ax) == frozenset({"r", "s"})


class TestSubstitution:
    def test_direct_replacement(self):
        ax = gci(conj([Exists("r", X), Exists("s", Y)]), Exists("t", X))
        got = apply_substitution({"X": B, "Y": C}, ax)
        assert got == gci(conj([Exists("r", B), Exists("s", C)]), Exists("t", B))

    def test_result_is_normalized(self):
        got = apply_substitution({"X": conj([A, A])}, Exists("r", X))
        assert got == Exists("r", A)
        collapsed = apply_substitution({"X": TOP}, conj([Exists("r", X), A]))
        assert collapsed == conj([A, Exists("r", TOP)])

    def test_unbound_variable_raises(self):
        with pytest.raises(UnboundVariableError):
            apply_substitution({"X": A}, conj([X, Y]))


class TestGrounding:
    def test_single_variable_two_concepts(self):
        ax = gci(X, Exists("r", X))
        base = {A, Exists("r", A)}
        assert ground_instances(ax, base) == frozenset(
            {
                gci(A, Exists("r", A)),
                gci(Exists("r", A), Exists("r", Exists("r", A))),
            }
        )

    def test_two_variables_square(self):
        ax = gci(conj([Exists("r", X), Exists("s", Y)]), Exists("t", X))
        assert len(ground_instances(ax, {A, B})) == 4

    def test_ground_axiom_is_its_own_instance(self):
        ax = gci(A, B)
        assert ground_instances(ax, {C}) == frozenset({ax})
        assert ground_instances(ax, set()) == frozenset({ax})

    def test_nonground_axiom_over_empty_base_rejected(self):
        with pytest.raises(ElxError):
            ground_instances(gci(X, Exists("r", X)), set())
        with pytest.raises(ElxError):
            ground_concept_instances(X, set())

    def test_ground_ontology_is_sorted_and_deduped(self):
        kb = ontology([gci(X, Exists("r", X)), gci(A, B)])
        grounded = ground_ontology(kb, {A})
        axioms = list(grounded)
        assert set(axioms) == {gci(A, Exists("r", A)), gci(A, B)}
        assert axioms == sorted(axioms, key=axiom_sort_key)


class TestOrdering:
    def test_sort_key_is_a_total_order_over_random_concepts(self):
        rng = random.Random(11)
        from randgen import random_concept

        cs = [
            normalize(random_concept(rng, ["A", "B"], ["r"], ["X"], depth=3))
            for _ in range(200)
        ]
        ordered = sorted(cs, key=sort_key)
        assert sorted(ordered, key=sort_key) == ordered
        for left, right in zip(ordered, ordered[1:]):
            if sort_key(left) == sort_key(right):
                assert left == right

    def test_tag_order_top_atom_var_exists_conj(self):
        items = [conj([A, B]), Exists("r", A), X, A, TOP]
        assert sorted(items, key=sort_key) == [
            TOP,
            A,
            X,
            Exists("r", A),
            conj([A, B]),
        ]

    def test_ontology_dedups_preserving_first_occurrence(self):
        kb = ontology([gci(A, B), gci(B, C), gci(A, B)])
        assert list(kb) == [gci(A, B), gci(B, C)]
        assert len(kb) == 2
        assert gci(A, B) in kb


class TestTopIdentity:
    def test_top_is_singleton_like(self):
        assert Top() == TOP
        assert normalize(Top()) == TOP

    def test_exists_over_top_is_kept(self):
        c = Exists("r", TOP)
        assert normalize(c) == c
        assert is_ground(c)
