"""Command-line interface: exit codes, text output, JSON payloads, and
error handling.  Commands run in-process through ``main`` except for one
subprocess check of the installed module entry point."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from elx.cli import (
    EXIT_AFFIRMATIVE,
    EXIT_ERROR,
    EXIT_NEGATIVE,
    EXIT_UNKNOWN,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


class TestValidate:
    def test_ground_ontology_is_valid(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "validate", str(fixtures_dir / "nonlinear_kb.elx"))
        assert code == EXIT_AFFIRMATIVE
        assert "range-restricted=yes lhs-linear=yes rhs-safe=yes" in out

    def test_nonlinear_axiom_flagged(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "validate", str(fixtures_dir / "nonlinear.elx"))
        assert code == EXIT_NEGATIVE
        assert "lhs-linear=no" in out
        assert "violation:" in out

    def test_json_payload(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys, "validate", str(fixtures_dir / "nonlinear.elx")
        )
        assert code == EXIT_NEGATIVE
        assert payload["status"] == "invalid"
        assert len(payload["axioms"]) == 4
        bad = payload["axioms"][-1]
        assert bad["lhs_linear"] is False
        assert bad["range_restricted"] is True
        assert any("linear" in v for v in bad["violations"])


class TestEntails:
    def test_affirmative(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "entails",
            str(fixtures_dir / "reflexive.elx"),
            "--goal",
            "A SubClassOf exists r.A",
        )
        assert code == EXIT_AFFIRMATIVE
        assert "ENTAILED at level 0 (definitive)" in out

    def test_negative_definitive(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "entails",
            str(fixtures_dir / "nonlinear_kb.elx"),
            "--goal",
            "A SubClassOf D",
        )
        assert code == EXIT_NEGATIVE
        assert "NOT ENTAILED (expansion closed at level 2)" in out

    def test_unknown_when_budget_runs_out(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "entails",
            str(fixtures_dir / "composite_chain.elx"),
            "--goal",
            "exists u.A SubClassOf exists w.A",
            "--max-level",
            "4",
        )
        assert code == EXIT_UNKNOWN
        assert "UNKNOWN" in out and "--max-level" in out

    def test_unsupported_fragment_is_usage_error(self, capsys, fixtures_dir):
        code, _, err = run(
            capsys,
            "entails",
            str(fixtures_dir / "nonlinear.elx"),
            "--goal",
            "A SubClassOf D",
        )
        assert code == EXIT_ERROR
        assert "error:" in err and "fragment" in err

    def test_json_payload(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "entails",
            str(fixtures_dir / "grandfather.elx"),
            "--goal",
            "Carl SubClassOf exists hasGrandfather.Dan",
        )
        assert code == EXIT_AFFIRMATIVE
        assert payload["status"] == "entailed"
        assert payload["level"] == 1
        assert payload["definitive"] is True
        assert payload["fresh_names"] == {}
        assert payload["levels"][0] == ["Carl"]

    def test_quantified_goal_reports_fresh_names(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "entails",
            str(fixtures_dir / "reflexive.elx"),
            "--goal",
            "?X SubClassOf exists r.?X",
        )
        assert code == EXIT_AFFIRMATIVE
        assert payload["fresh_names"] == {"X": "F0"}

    def test_schema_base_semantics(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "entails",
            str(fixtures_dir / "nonlinear_instance.elx"),
            "--goal",
            "A SubClassOf D",
            "--schema-base",
            str(fixtures_dir / "base_bc.base"),
        )
        assert code == EXIT_AFFIRMATIVE
        assert payload["status"] == "entailed"
        assert payload["semantics"] == "fixed-base"
        assert payload["base"] == ["B", "C"]
        assert payload["level"] is None

    def test_schema_base_negative(self, capsys, fixtures_dir):
        # the shared-variable axiom cannot mix B and C in one instance,
        # so grounding it over {B, C} proves nothing new
        code, out, _ = run(
            capsys,
            "entails",
            str(fixtures_dir / "nonlinear.elx"),
            "--goal",
            "A SubClassOf D",
            "--schema-base",
            str(fixtures_dir / "base_bc.base"),
        )
        assert code == EXIT_NEGATIVE
        assert "NOT ENTAILED" in out

    def test_single_variable_option(self, capsys, fixtures_dir):
        code, _, _ = run(
            capsys,
            "entails",
            str(fixtures_dir / "grandfather.elx"),
            "--goal",
            "Carl SubClassOf exists hasGrandfather.Dan",
            "--single-variable",
        )
        assert code == EXIT_AFFIRMATIVE


class TestExpand:
    def test_trace_text(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "expand",
            str(fixtures_dir / "nested_expansion.elx"),
            "--goal",
            "A SubClassOf exists r.A",
            "--max-level",
            "3",
        )
        assert code == EXIT_UNKNOWN
        assert "level 0: {A}" in out
        assert "level 1: {A, exists r.A}" in out
        assert "level 2: {A, exists r.A, exists r.exists r.A}" in out
        assert "fixpoint reached: no" in out

    def test_closure_and_grounded_output(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "expand",
            str(fixtures_dir / "nonlinear_kb.elx"),
            "--goal",
            "A SubClassOf D",
        )
        assert code == EXIT_AFFIRMATIVE
        assert payload["fixpoint"] is True
        assert payload["levels"] == [["A"], ["A", "B", "C"], ["A", "B", "C"]]
        assert "A SubClassOf exists r.B and exists s.C" in payload["grounded"]


class TestClassify:
    def test_subsumption_listing(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "classify",
            str(fixtures_dir / "local_rvm.elx"),
            "--goal",
            "Bob SubClassOf exists isFatherOf.Alice",
        )
        assert code == EXIT_AFFIRMATIVE
        assert payload["status"] == "ok"
        assert ["Bob", "Male"] in payload["subsumptions"]
        assert all(not a.startswith("#") and not b.startswith("#") for a, b in payload["subsumptions"])

    def test_text_output(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "classify",
            str(fixtures_dir / "local_rvm.elx"),
            "--goal",
            "Bob SubClassOf exists isFatherOf.Alice",
        )
        assert code == EXIT_AFFIRMATIVE
        assert "Bob SubClassOf Male" in out


class TestOracleRefute:
    def test_countermodel_found(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "oracle",
            "refute",
            str(fixtures_dir / "nonlinear_kb.elx"),
            "--goal",
            "A SubClassOf D",
        )
        assert code == EXIT_NEGATIVE
        assert payload["status"] == "refuted"
        counter = payload["counterexample"]
        assert counter["domain"] == ["d0"]
        assert counter["valuation"] is None or counter["valuation"] == {}
        assert payload["max_domain"] >= 1

    def test_search_exhausted(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "oracle",
            "refute",
            str(fixtures_dir / "unsafe_rhs.elx"),
            "--goal",
            "exists r.Top SubClassOf exists r.A",
            "--max-domain",
            "3",
        )
        assert code == EXIT_UNKNOWN
        assert "no countermodel with at most 3 elements" in out

    def test_quantified_goal_violation_prints_valuation(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "oracle",
            "refute",
            str(fixtures_dir / "nonlinear_kb.elx"),
            "--goal",
            "exists r.?X and exists s.?X SubClassOf exists t.?X",
        )
        assert code == EXIT_NEGATIVE
        assert "goal violated at" in out


class TestOracleCheckModel:
    def test_model_satisfies_ontology(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "nonlinear.model"),
            str(fixtures_dir / "nonlinear_kb.elx"),
        )
        assert code == EXIT_AFFIRMATIVE
        assert "model satisfies all 3 axioms" in out

    def test_quantified_axiom_violated_at_pair(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "nonlinear.model"),
            str(fixtures_dir / "nonlinear.elx"),
        )
        assert code == EXIT_NEGATIVE
        assert payload["status"] == "violated"
        assert payload["violations"] == [
            {
                "axiom": "exists r.?X and exists s.?X SubClassOf exists t.?X",
                "valuation": {"X": ["b", "c"]},
            }
        ]

    def test_rhs_only_variable_violated_at_empty_set(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "not_range_restricted.model"),
            str(fixtures_dir / "not_range_restricted.elx"),
        )
        assert code == EXIT_NEGATIVE
        assert payload["violations"][0]["valuation"] == {"X": []}

    def test_unsafe_axiom_violated_at_singleton(self, capsys, fixtures_dir):
        code, payload, _ = run_json(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "unsafe_rhs.model"),
            str(fixtures_dir / "unsafe_rhs.elx"),
        )
        assert code == EXIT_NEGATIVE
        assert payload["violations"][0]["valuation"] == {"X": ["b"]}

    def test_goal_refuted_by_model_via_single_axiom_file(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "nonlinear.model"),
            str(fixtures_dir / "nonlinear_goal.elx"),
        )
        assert code == EXIT_NEGATIVE
        assert "violated: A SubClassOf D" in out

    def test_cross_kind_name_conflict(self, capsys, fixtures_dir, tmp_path):
        bad = tmp_path / "role_as_concept.elx"
        bad.write_text("r SubClassOf D\n")
        code, _, err = run(
            capsys,
            "oracle",
            "check-model",
            str(fixtures_dir / "nonlinear.model"),
            str(bad),
        )
        assert code == EXIT_ERROR
        assert "error:" in err


class TestDesugar:
    def test_expansion_listing(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "desugar", str(fixtures_dir / "grandfather.elx"))
        assert code == EXIT_AFFIRMATIVE
        assert "hasGrandfather" in out
        assert "?" in out  # introduces a quantified variable


class TestBench:
    def test_writes_outputs(self, capsys, tmp_path):
        code, payload, _ = run_json(
            capsys,
            "bench",
            "--sizes",
            "4,8",
            "--repeats",
            "1",
            "--out-dir",
            str(tmp_path),
        )
        assert code == EXIT_AFFIRMATIVE
        assert (tmp_path / "scaling.csv").exists()
        assert (tmp_path / "scaling.png").exists()
        assert isinstance(payload["slope"], float)
        assert [p["size"] for p in payload["points"]] == [4, 8]
        csv_text = (tmp_path / "scaling.csv").read_text()
        assert csv_text.splitlines()[0] == "size,seconds"


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent/path.elx")
        assert code == EXIT_ERROR
        assert "error:" in err

    def test_unknown_flag(self, capsys, fixtures_dir):
        code = main(["validate", str(fixtures_dir / "reflexive.elx"), "--bogus"])
        capsys.readouterr()
        assert code == EXIT_ERROR

    def test_unknown_subcommand(self, capsys):
        code = main(["frobnicate"])
        capsys.readouterr()
        assert code == EXIT_ERROR

    def test_missing_goal(self, capsys, fixtures_dir):
        code = main(["entails", str(fixtures_dir / "reflexive.elx")])
        capsys.readouterr()
        assert code == EXIT_ERROR

    def test_no_arguments(self, capsys):
        code = main([])
        capsys.readouterr()
        assert code == EXIT_ERROR

    def test_parse_error_reports_position(self, capsys, tmp_path):
        bad = tmp_path / "broken.elx"
        bad.write_text("A and and B SubClassOf C\n")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == EXIT_ERROR
        assert "line 1" in err

    def test_help_exits_zero(self, capsys):
        code = main(["--help"])
        capsys.readouterr()
        assert code == 0


class TestModuleEntryPoint:
    def test_runs_as_module(self, fixtures_dir):
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "elx",
                "entails",
                str(fixtures_dir / "reflexive.elx"),
                "--goal",
                "A SubClassOf exists r.A",
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "ENTAILED" in result.stdout
