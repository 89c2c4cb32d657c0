"""Tests for report records and their renderings."""

import json
from fractions import Fraction

from veccoh.report import (
    exit_code,
    jsonable,
    make_check,
    make_report,
    parse_markdown_table,
    render_json,
    render_markdown,
    table_rows,
)


def _report():
    checks = [
        make_check("H^1 form_m2_p0_q1_k1_operator", 2, 2, "forms, first cohomology"),
        make_check("theta", Fraction(-3), -3, "connecting homomorphism"),
        make_check("H^0 form_m2_p0_q1_k1_operator", 0),
    ]
    return make_report("cohomology", {"m": 2, "k": 1}, checks, seed=7, elapsed_ms=0)


class TestChecks:
    """Test check records."""

    def test_jsonable(self):
        """Test exact values in JSON form."""
        assert jsonable(Fraction(4, 2)) == 2
        assert jsonable(Fraction(-1, 3)) == "-1/3"
        assert jsonable([Fraction(1, 2), {"a": Fraction(3)}]) == ["1/2", {"a": 3}]

    def test_match_flags(self):
        """Test match for equal, unequal and missing expectations."""
        assert make_check("a", 1, 1)["match"] is True
        assert make_check("a", 1, 2)["match"] is False
        assert make_check("a", 1)["match"] is None

    def test_exit_code(self):
        """Test that only mismatches fail a report."""
        report = _report()
        assert exit_code(report) == 0
        report["checks"].append(make_check("bad", 1, 0))
        assert exit_code(report) == 1


class TestRendering:
    """Test JSON and markdown output."""

    def test_json_is_stable(self):
        """Test deterministic JSON with sorted keys."""
        text = render_json(_report())
        assert text.endswith("\n")
        assert text == render_json(_report())
        data = json.loads(text)
        assert data["checks"][1]["computed"] == -3
        assert data["seed"] == 7

    def test_markdown_table(self):
        """Test the markdown layout and its parser."""
        report = _report()
        text = render_markdown(report)
        assert text.startswith("## cohomology\n")
        assert "Parameters: k=1, m=2" in text
        assert "3 checks, 0 mismatches" in text
        rows = parse_markdown_table(text)
        assert rows == table_rows(report)
        assert rows[2] == ["H^0 form_m2_p0_q1_k1_operator", "0", "-", "-", "-"]
        assert rows[0][3] == "yes"

    def test_pipes_are_escaped(self):
        """Test that cell text containing pipes survives the round trip."""
        report = make_report("structure", {}, [make_check("a|b", 1, 1, "x | y")])
        assert parse_markdown_table(render_markdown(report)) == [["a|b", "1", "1", "yes", "x | y"]]
