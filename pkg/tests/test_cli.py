"""End-to-end command-line behaviour: output, formats, exit codes."""

import json

import pytest

from fluxlattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "classify", "--flux", "golden")
        assert code == 0
        assert "almost_heisenberg" in out
        assert "0.6180339887" in out

    def test_reduction(self, capsys):
        code, out, _ = run(capsys, "classify", "--flux", "3/6")
        assert code == 0
        assert "rational_with_kernel(2)" in out
        assert "1/2" in out

    def test_mod_one(self, capsys):
        code, out, _ = run(capsys, "classify", "--flux", "7/3")
        assert code == 0
        assert "1/3" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--flux", "1/3", "--format", "json")
        doc = json.loads(out)
        assert doc["kind"] == "rational_with_kernel"
        assert doc["kernel"] == 3
        assert doc["phi"] == [1, 3]

    def test_bad_flux_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["classify", "--flux", "euler"])
        assert err.value.code == 2


class TestVerify:
    def test_passes_at_golden(self, capsys):
        code, out, _ = run(capsys, "verify", "--flux", "golden")
        assert code == 0
        assert "FAIL" not in out

    def test_passes_at_rational_and_gauge(self, capsys):
        code, out, _ = run(capsys, "verify", "--flux", "1/5", "--gauge", "3")
        assert code == 0

    def test_corrupt_negative_control(self, capsys):
        code, out, _ = run(capsys, "verify", "--flux", "golden", "--corrupt")
        assert code == 1
        assert "FAIL" in out

    def test_json_mirror(self, capsys):
        code, out, _ = run(capsys, "verify", "--flux", "golden", "--format", "json")
        doc = json.loads(out)
        assert doc["all_pass"] is True
        assert {"relation", "holds", "witness_site"} == set(doc["relations"][0])


class TestInvariant:
    def test_harper_printed(self, capsys):
        code, out, _ = run(capsys, "invariant", "--flux", "golden", "--max-j", "1")
        assert code == 0
        assert "q1^1" in out and "q1^-1" in out and "q2^1" in out

    def test_scalar_only(self, capsys):
        code, out, _ = run(capsys, "invariant", "--flux", "golden", "--max-j", "0")
        assert code == 0
        assert out.strip() == "(1+0i)·p1^0 p2^0 q1^0 q2^0"

    def test_rational_rejected(self, capsys):
        code, out, err = run(capsys, "invariant", "--flux", "1/3", "--max-j", "1")
        assert code == 2
        assert "irrational" in err


class TestSpectrumCommand:
    def test_rational(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--flux", "1/2", "--k-grid", "40")
        assert code == 0
        assert "band" in out

    def test_irrational_approximants(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--flux", "golden",
                           "--k-grid", "8", "--depth", "3")
        assert code == 0
        assert "convergent" in out and "hausdorff" in out


class TestButterfly:
    def test_writes_deterministic_csv(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        code1, _, _ = run(capsys, "butterfly", "--q-max", "5", "--k-grid", "6",
                          "--out", str(a))
        code2, _, _ = run(capsys, "butterfly", "--q-max", "5", "--k-grid", "6",
                          "--out", str(b))
        assert code1 == code2 == 0
        assert a.read_bytes() == b.read_bytes()

    def test_check_passes(self, capsys):
        code, out, _ = run(capsys, "butterfly", "--q-max", "6", "--k-grid", "8",
                           "--check")
        assert code == 0
        assert "symmetry check" in out

    def test_json_output(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        code, _, _ = run(capsys, "butterfly", "--q-max", "4", "--k-grid", "6",
                         "--format", "json", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["q_max"] == 4
        assert doc["points"][0].keys() == {"phi", "E"}


class TestLandau:
    def test_defaults_pass(self, capsys):
        code, out, _ = run(capsys, "landau", "--n-max", "16")
        assert code == 0
        assert "FAIL" not in out
        assert "lowest levels" in out

    def test_tiny_truncation_warns(self, capsys):
        code, _, err = run(capsys, "landau", "--n-max", "4")
        assert "warning" in err and "truncation" in err

    def test_zero_field_rejected(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["landau", "--r", "0"])
        assert err.value.code == 2


class TestGaugeCheck:
    def test_zero_units(self, capsys):
        code, out, _ = run(capsys, "gauge-check", "--flux", "golden",
                           "--phi-units", "0")
        assert code == 0

    def test_three_units(self, capsys):
        code, out, _ = run(capsys, "gauge-check", "--flux", "golden",
                           "--phi-units", "3")
        assert code == 0
        assert "FAIL" not in out
        # report names the intertwiner phase form
        assert "m1" in out and "m2" in out and "φ" in out

    def test_json_names_phase(self, capsys):
        code, out, _ = run(capsys, "gauge-check", "--flux", "1/5",
                           "--phi-units", "2", "--format", "json")
        doc = json.loads(out)
        assert doc["intertwiner_phase"] == "-2*phi*m1*m2"
        assert doc["all_pass"] is True
