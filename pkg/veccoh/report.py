"""
Run reports: scored checks and their JSON and markdown renderings.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .types import CheckResult, RunReport

COLUMNS = ("check", "computed", "expected", "match", "citation")


def jsonable(value: Any) -> Any:
    """Exact values as JSON: integral fractions become ints, others ``"a/b"`` strings."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return value


def make_check(name: str, computed: Any, expected: Any = None, citation: Optional[str] = None) -> CheckResult:
    """A check whose match flag is exact equality, or None without an expected value."""
    match = None if expected is None else computed == expected
    return {
        "name": name,
        "computed": jsonable(computed),
        "expected": jsonable(expected),
        "citation": citation,
        "match": match,
    }


def make_report(
    command: str,
    params: Dict[str, Any],
    checks: Sequence[CheckResult],
    seed: Optional[int] = None,
    elapsed_ms: int = 0,
) -> RunReport:
    return {
        "command": command,
        "params": jsonable(params),
        "checks": list(checks),
        "seed": seed,
        "elapsed_ms": elapsed_ms,
    }


def exit_code(report: RunReport) -> int:
    """1 when any check mismatches, 0 otherwise."""
    return 1 if any(c["match"] is False for c in report["checks"]) else 0


def render_json(report: RunReport) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "NO"
    return str(value)


def table_rows(report: RunReport) -> List[List[str]]:
    """The check table as strings, one row per check in report order."""
    return [
        [c["name"], _cell(c["computed"]), _cell(c["expected"]), _cell(c["match"]), _cell(c["citation"])]
        for c in report["checks"]
    ]


def render_markdown(report: RunReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(report["params"].items()))
    lines = [
        f"## {report['command']}",
        "",
        f"Parameters: {params or '-'}",
        f"Seed: {_cell(report['seed'])}, elapsed: {report['elapsed_ms']} ms",
        "",
        "| " + " | ".join(COLUMNS) + " |",
        "|" + "|".join("---" for _ in COLUMNS) + "|",
    ]
    for row in table_rows(report):
        lines.append("| " + " | ".join(cell.replace("|", "\\|") for cell in row) + " |")
    failed = sum(1 for c in report["checks"] if c["match"] is False)
    lines += ["", f"{len(report['checks'])} checks, {failed} mismatches", ""]
    return "\n".join(lines)


def parse_markdown_table(text: str) -> List[List[str]]:
    """Read back the check rows written by :func:`render_markdown`."""
    rows: List[List[str]] = []
    for line in text.splitlines():
        if not line.startswith("| ") or line.startswith("| check |"):
            continue
        cells = [cell.strip().replace("\\|", "|") for cell in line.strip()[2:-2].split(" | ")]
        rows.append(cells)
    return rows
