"""Tests for the command-line front end."""

import json

import pytest

from veccoh import ModuleSpec, SpecError, cli
from veccoh.cli import build_module_spec, build_parser, cmd_theta, family_spec, main, report_cells, run
from veccoh.cocycles import FamilyError


class TestParser:
    """Test argument parsing."""

    def test_version(self, capsys):
        """Test that --version exits cleanly."""
        assert main(["--version"]) == 0
        assert "veccoh 0.1.0" in capsys.readouterr().out

    def test_missing_arguments(self, capsys):
        """Test that usage errors exit with 2."""
        code, report = run(["structure"])
        assert code == 2
        assert report is None

    def test_output_flags_are_exclusive(self):
        """Test that --json and --markdown cannot be combined."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["structure", "--m", "2", "--json", "--markdown"])

    def test_species_alias(self):
        """Test that mv is accepted for multivectors."""
        args = build_parser().parse_args(["cohomology", "--species", "mv", "--m", "2"])
        assert args.species == "mv"
        assert (args.k, args.u, args.level) == (0, 1, "operator")


class TestFamilySpec:
    """Test filling in degrees from the family rules."""

    def test_form_offsets(self):
        """Test that c2 defaults to p = 0, q = 2."""
        fam = family_spec("c2", 2, None, None, 1)
        assert (fam.spec.p, fam.spec.q) == (0, 2)
        assert family_spec("c10", 3, 1, None, 0).spec.q == 2

    def test_multivector_offsets(self):
        """Test that the iota alias gets p = q + 1."""
        fam = family_spec("iota", 2, None, 1, 1)
        assert fam.tag == "iota_dc"
        assert (fam.spec.p, fam.spec.q) == (2, 1)

    def test_unknown_family(self):
        """Test that unknown tags raise FamilyError."""
        with pytest.raises(FamilyError):
            family_spec("c3", 2, None, None, 1)


class TestBuildModuleSpec:
    """Test turning command-line values into a ModuleSpec."""

    def test_alias_resolved(self):
        """Test that mv becomes the multivector species."""
        assert build_module_spec(2, "mv", 1, 0, 1) == ModuleSpec(2, "multivector", 1, 0, 1)

    def test_validator_used_when_available(self, monkeypatch):
        """Test that the pydantic validator builds the spec when installed."""
        seen = []

        def fake_validate(fields):
            seen.append(fields)
            return ModuleSpec(**fields)

        monkeypatch.setattr(cli, "PYDANTIC_AVAILABLE", True)
        monkeypatch.setattr(cli, "validate_module_spec", fake_validate)
        spec = build_module_spec(3, "form", 0, 1, 2, "symbol")
        assert spec == ModuleSpec(3, "form", 0, 1, 2, "symbol")
        assert seen == [{"m": 3, "species": "form", "p": 0, "q": 1, "k": 2, "level": "symbol"}]

    @pytest.mark.parametrize("available", [True, False])
    def test_invalid_values_raise_spec_error(self, available, monkeypatch):
        """Test that bad degrees surface as SpecError with or without pydantic."""
        if available:
            pytest.importorskip("pydantic")
        monkeypatch.setattr(cli, "PYDANTIC_AVAILABLE", available)
        with pytest.raises(SpecError):
            build_module_spec(2, "form", 3, 0, 1)
        with pytest.raises(SpecError):
            build_module_spec(2, "function", 1, 0, 0)

    def test_cohomology_usage_error_exit_code(self):
        """Test that an out-of-range degree exits with 2."""
        code, report = run(["cohomology", "--species", "form", "--m", "2", "--p", "5"])
        assert code == 2
        assert report is None


class TestCommands:
    """Test the commands end to end."""

    def test_structure(self, capsys):
        """Test the structure checks for m = 2."""
        code, report = run(["structure", "--m", "2", "--no-timing"])
        assert code == 0
        assert report is not None
        assert [c["match"] for c in report["checks"]] == [True, True, True, True]
        assert report["checks"][1]["computed"] == 28
        out = capsys.readouterr().out
        assert out.startswith("## structure")

    def test_json_output_is_reproducible(self, capsys):
        """Test byte-identical JSON across runs with --no-timing."""
        argv = ["theta", "--species", "mv", "--m", "2", "--p", "1", "--q", "0", "--json", "--no-timing"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second
        data = json.loads(first)
        assert data["elapsed_ms"] == 0
        assert [c["computed"] for c in data["checks"]] == [3, 3]

    def test_theta_sign(self):
        """Test the trace variant of θ."""
        report = cmd_theta("mv", 2, 1, 0, 1)
        assert report["checks"][0]["computed"] == -3
        assert report["checks"][0]["match"] is True

    def test_cohomology(self, capsys, tmp_path):
        """Test one cohomology cell and the matrix dumps."""
        code, report = run(
            ["cohomology", "--species", "function", "--m", "2", "--k", "0", "--u", "1",
             "--dump-matrices", str(tmp_path), "--json"]
        )
        assert code == 0
        check = report["checks"][0]
        assert (check["computed"], check["expected"], check["match"]) == (1, 1, True)
        assert sorted(p.name for p in tmp_path.iterdir()) == [
            "function_m2_p0_q0_k0_operator_0.mtx",
            "function_m2_p0_q0_k0_operator_1.mtx",
        ]

    def test_cocycle(self):
        """Test a cocycle run with a few random pairs."""
        code, report = run(["cocycle", "--family", "c10", "--m", "2", "--k", "0", "--trials", "3", "--max-deg", "2"])
        assert code == 0
        assert report["seed"] == 0
        assert report["params"]["q"] == 1
        assert [c["computed"] for c in report["checks"]] == [True, 0]

    def test_iota_witness_checks(self):
        """Test the extra witness checks of the contraction family."""
        code, report = run(["cocycle", "--family", "iota", "--m", "2", "--trials", "2", "--max-deg", "2"])
        assert code == 0
        assert len(report["checks"]) == 4
        assert all(c["match"] for c in report["checks"])

    @pytest.mark.parametrize(
        "argv",
        [
            ["structure", "--m", "1"],
            ["cocycle", "--family", "c3", "--m", "2"],
            ["cocycle", "--family", "c2", "--m", "2", "--k", "0"],
            ["theta", "--species", "form", "--m", "2", "--p", "1", "--q", "0"],
            ["cohomology", "--species", "function", "--m", "2", "--p", "1"],
            ["report", "--m", "2", "--max-k", "-1"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        """Test that invalid requests exit with 2 and a message."""
        code, report = run(argv)
        assert code == 2
        assert report is None
        assert "error" in capsys.readouterr().err

    def test_bad_thread_setting(self, monkeypatch):
        """Test that an invalid environment setting is a usage error."""
        monkeypatch.setenv("VECCOH_THREADS", "zero")
        assert main(["structure", "--m", "2"]) == 2

    def test_report_cells(self):
        """Test the cell grid and its order."""
        cells = report_cells(2, 1)
        assert len(cells) == 2 * 3 * 3 * 2 * 2
        assert cells[0] == {"species": "multivector", "m": 2, "p": 0, "q": 0, "k": 0, "u": 0}
        assert cells[-1] == {"species": "form", "m": 2, "p": 2, "q": 2, "k": 1, "u": 1}

    @pytest.mark.slow
    def test_report_order_zero(self):
        """Test the full k = 0 table for m = 2."""
        code, report = run(["report", "--m", "2", "--max-k", "0", "--json", "--no-timing"])
        assert code == 0
        assert len(report["checks"]) == 36
        assert not any(c["match"] is False for c in report["checks"])


class TestErrors:
    """Test the error types surfaced by the CLI."""

    def test_spec_error_is_value_error(self):
        """Test that SpecError is a ValueError."""
        assert issubclass(SpecError, ValueError)
