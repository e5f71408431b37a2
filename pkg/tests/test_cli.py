"""Exit codes, output stability, and report content of the front end."""

import json

import pytest

from conftest import fixture_path

from kbdiag.cli import (
    EXIT_CAP,
    EXIT_COUNTEREXAMPLE,
    EXIT_INPUT,
    EXIT_OK,
    _check_failed,
    main,
)
from kbdiag.diagram import serialize
from kbdiag.gen import performance_diagram


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBracketCommand:
    def test_genus_one_fixture(self, capsys):
        code, out, _ = run(capsys, "bracket", fixture_path("e6"))
        assert code == EXIT_OK
        assert "bracket: A^-6" in out
        assert "breadth: 0" in out
        assert "z2 class: trivial" in out

    def test_nontrivial_class_notes_vanishing(self, capsys):
        code, out, _ = run(capsys, "bracket", fixture_path("e1"))
        assert code == EXIT_OK
        assert "bracket: 0" in out
        assert "z2 class: nontrivial (01)" in out
        assert "mod-2 nontrivial" in out

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, "bracket", "/no/such/file.diag")
        assert code == EXIT_INPUT
        assert not out
        assert "error:" in err

    def test_unparseable_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.diag"
        bad.write_text("kbdiag 1\ngenus 0\nX m c0 oops\n")
        code, _, err = run(capsys, "bracket", str(bad))
        assert code == EXIT_INPUT
        assert "error:" in err

    def test_crossing_cap(self, capsys):
        code, _, err = run(
            capsys, "bracket", fixture_path("trefoil"), "--max-crossings", "2"
        )
        assert code == EXIT_CAP
        assert "exceeds cap" in err

    def test_json_record(self, capsys):
        code, out, _ = run(
            capsys, "bracket", fixture_path("e6"), "--format", "json-lines"
        )
        assert code == EXIT_OK
        (line,) = out.splitlines()
        rec = json.loads(line)
        assert rec["record"] == "bracket"
        assert rec["value"] == "A^-6"
        assert rec["n"] == 2
        assert rec["ord_inf"] == rec["ord_zero"] == -6
        assert rec["z2_trivial"] is True

    def test_json_null_orders_for_zero_bracket(self, capsys):
        _, out, _ = run(
            capsys, "bracket", fixture_path("e1"), "--format", "json-lines"
        )
        rec = json.loads(out)
        assert rec["value"] == "0"
        assert rec["ord_inf"] is None
        assert rec["ord_zero"] is None

    def test_output_byte_stable(self, capsys):
        _, first, _ = run(
            capsys, "bracket", fixture_path("e5"), "--format", "json-lines"
        )
        _, second, _ = run(
            capsys, "bracket", fixture_path("e5"), "--format", "json-lines"
        )
        assert first == second

    def test_input_flag_matches_positional(self, capsys):
        _, positional, _ = run(capsys, "bracket", fixture_path("e2"))
        _, flagged, _ = run(capsys, "bracket", "--input", fixture_path("e2"))
        assert positional == flagged

    def test_no_input_rejected(self, capsys):
        code, _, err = run(capsys, "bracket")
        assert code == EXIT_INPUT
        assert "input path" in err

    def test_jobs_do_not_change_output(self, capsys, tmp_path):
        path = tmp_path / "perf.diag"
        path.write_text(serialize(performance_diagram(8, 2)))
        _, serial, _ = run(
            capsys, "bracket", str(path), "--format", "json-lines"
        )
        _, parallel, _ = run(
            capsys, "bracket", str(path), "--format", "json-lines",
            "--jobs", "2",
        )
        assert serial == parallel


class TestCheckCommand:
    def test_classical_example_passes(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("trefoil"))
        assert code == EXIT_OK
        assert "breadth identity: pass (expected 16, actual 16)" in out
        assert "result: ok" in out

    def test_genus_one_example_passes(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("e6"))
        assert code == EXIT_OK
        assert "breadth identity: pass (expected 0, actual 0)" in out

    def test_disconnected_is_inapplicable_not_failing(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("e5"))
        assert code == EXIT_OK
        assert "connected: no" in out
        assert "breadth identity: inapplicable" in out
        assert "result: ok" in out

    def test_json_record(self, capsys):
        code, out, _ = run(
            capsys, "check", fixture_path("e1"), "--format", "json-lines"
        )
        assert code == EXIT_OK
        rec = json.loads(out)
        assert rec["record"] == "check"
        assert rec["z2_trivial"] is False
        assert rec["theorem"] == "inapplicable"
        assert rec["certificate"] is None
        assert rec["span_bound_holds"] is None

    def test_certificate_reported_with_assumption(self, capsys):
        _, out, _ = run(
            capsys, "check", fixture_path("e5"), "--format", "json-lines"
        )
        rec = json.loads(out)
        assert rec["certificate"]["kind"] == 2
        assert rec["certificate"]["assumes_non_split"] is True

    def test_failure_detection(self):
        base = {
            "theorem": "pass",
            "span_bound_holds": True,
            "span_equality_holds": None,
            "trivial_sum_holds": None,
            "alternating_span_holds": True,
        }
        assert not _check_failed(base)
        assert _check_failed({**base, "theorem": "fail"})
        assert _check_failed({**base, "span_bound_holds": False})
        assert _check_failed({**base, "trivial_sum_holds": False})
        assert not _check_failed({**base, "theorem": "inapplicable"})


class TestEnumerateCommand:
    def test_crossingless_genus_one_census(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n-max", "0", "--genus", "1")
        assert code == EXIT_OK
        assert "summary: 8 diagrams" in out

    def test_predicate_census_has_no_failures(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--n-max", "2", "--genus", "1",
            "--predicate", "alternating,connected,z2trivial",
            "--format", "json-lines",
        )
        assert code == EXIT_OK
        records = [json.loads(line) for line in out.splitlines()]
        summary = records[-1]
        assert summary["record"] == "summary"
        assert summary["fail"] == 0
        assert summary["total"] == 23
        assert summary["pass"] == 6
        for rec in records[:-1]:
            assert rec["record"] == "diagram"
            assert rec["z2"] == "00"

    def test_repeated_predicate_flags_accumulate(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--n-max", "2", "--genus", "1",
            "--predicate", "alternating", "--predicate", "connected",
            "--predicate", "z2trivial", "--format", "json-lines",
        )
        assert code == EXIT_OK
        summary = json.loads(out.splitlines()[-1])
        assert summary["total"] == 23
        assert summary["pass"] == 6

    def test_cap_exceeded(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n-max", "30")
        assert code == EXIT_CAP
        assert "exceeds cap" in err

    def test_unknown_predicate(self, capsys):
        code, _, err = run(
            capsys, "enumerate", "--n-max", "1", "--predicate", "chiral"
        )
        assert code == EXIT_INPUT
        assert "unknown predicate" in err

    def test_negated_predicate(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--n-max", "0", "--genus", "1",
            "--predicate", "not-z2trivial", "--format", "json-lines",
        )
        assert code == EXIT_OK
        records = [json.loads(line) for line in out.splitlines()]
        assert all(r["z2"] != "00" for r in records[:-1])
        assert records[-1]["total"] == 3

    def test_stream_byte_stable(self, capsys):
        args = (
            "enumerate", "--n-max", "1", "--genus", "1",
            "--format", "json-lines",
        )
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second
