"""End-to-end CLI behavior: subcommands, formats, diagnostics, exit codes."""

import json

import pytest

from imbindex import validate
from imbindex.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from imbindex.io import read_matrix_csv, write_matrix_csv
from imbindex.registry import DEFAULT_SEED, default_seed

from conftest import SPEC_DIR


@pytest.fixture()
def base_matrix_csv(tmp_path):
    path = tmp_path / "base.csv"
    write_matrix_csv(path, validate([[8, 2], [10, 90]]))
    return path


class TestEval:
    def test_binary_table(self, base_matrix_csv, capsys):
        code = main(["eval", "--matrix", str(base_matrix_csv), "--indices", "binary"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "index,value,reason"
        assert len(lines) == 9
        assert "gmean2,0.848528," in out
        assert "precision,0.444444," in out

    def test_default_selection_covers_all_for_two_classes(self, base_matrix_csv, capsys):
        code = main(["eval", "--matrix", str(base_matrix_csv)])
        assert code == EXIT_OK
        assert len(capsys.readouterr().out.strip().splitlines()) == 16

    def test_multiclass_diagonal_all_ones(self, tmp_path, capsys):
        path = tmp_path / "diag.csv"
        write_matrix_csv(path, validate([[3, 0, 0], [0, 3, 0], [0, 0, 3]]))
        code = main(["eval", "--matrix", str(path)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        for line in out.strip().splitlines()[1:]:
            assert ",1.000000," in line

    def test_undefined_prints_literal_token(self, tmp_path, capsys):
        path = tmp_path / "undef.csv"
        write_matrix_csv(path, validate([[0, 10], [0, 100]]))
        code = main(["eval", "--matrix", str(path), "--indices", "precision"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "precision,UNDEFINED,no positive predictions" in out

    def test_empty_row_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("0,0\n3,4\n")
        code = main(["eval", "--matrix", str(path)])
        err = capsys.readouterr().err
        assert code == EXIT_INPUT
        assert "row 1" in err

    def test_json_format_full_precision(self, base_matrix_csv, capsys):
        code = main(["eval", "--matrix", str(base_matrix_csv), "--indices", "gmean2",
                     "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["value"] == pytest.approx(0.8485281374238571, abs=1e-15)

    def test_full_precision_flag(self, base_matrix_csv, capsys):
        code = main(["eval", "--matrix", str(base_matrix_csv), "--indices", "gmean2",
                     "--full-precision"])
        assert code == EXIT_OK
        assert "0.8485281374238571" in capsys.readouterr().out

    def test_labels_ingestion_with_save_roundtrip(self, tmp_path, capsys):
        pairs = tmp_path / "pairs.csv"
        pairs.write_text("true,predicted\nA,A\nA,B\nB,B\nB,B\n")
        saved = tmp_path / "tallied.csv"
        code = main(["eval", "--labels", str(pairs), "--classes", "A,B",
                     "--save-matrix", str(saved)])
        assert code == EXIT_OK
        matrix, labels = read_matrix_csv(saved)
        assert matrix == validate([[1, 1], [0, 2]])
        assert labels == ("A", "B")

    def test_output_file(self, base_matrix_csv, tmp_path):
        out = tmp_path / "table.csv"
        code = main(["eval", "--matrix", str(base_matrix_csv), "--indices", "auroc",
                     "--output", str(out)])
        assert code == EXIT_OK
        assert "auroc,0.850000," in out.read_text()

    def test_unknown_index_is_input_error(self, base_matrix_csv, capsys):
        code = main(["eval", "--matrix", str(base_matrix_csv), "--indices", "f1"])
        assert code == EXIT_INPUT
        assert "unknown index" in capsys.readouterr().err

    def test_missing_file_is_input_error(self, capsys):
        assert main(["eval", "--matrix", "does_not_exist.csv"]) == EXIT_INPUT


class TestAudit:
    def test_single_index_violation_with_witness(self, capsys):
        code = main(["audit", "--index", "precision", "--cond", "1", "--trials", "60"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["condition1"]["verdict"] == "Violated"
        assert payload[0]["condition1"]["witness"]["factors"]

    def test_check_paper_all_green(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        code = main(["audit", "--all", "--check-paper", "--trials", "80",
                     "--output", str(report)])
        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert "match the expected table" in captured.err
        payload = json.loads(report.read_text())
        assert len(payload) == 13

    def test_check_paper_mismatch_exits_three(self, monkeypatch, capsys):
        from imbindex import audit as audit_mod

        patched = dict(audit_mod.EXPECTED_VERDICTS)
        patched["gmean2"] = ("Violated", "NotApplicable", "NotApplicable")
        monkeypatch.setattr(audit_mod, "EXPECTED_VERDICTS", patched)
        code = main(["audit", "--index", "gmean2", "--cond", "1", "--trials", "30",
                     "--check-paper"])
        captured = capsys.readouterr()
        assert code == EXIT_MISMATCH
        assert "MISMATCH" in captured.err

    def test_condition2_range_table(self, capsys):
        code = main(["audit", "--index", "auroc_ovo", "--cond", "2", "--c", "2..5"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        table = payload[0]["condition2"]["table"]
        assert payload[0]["condition2"]["verdict"] == "CDependentBounds"
        assert [row["class_count"] for row in table] == [2, 3, 4, 5]
        assert table[1]["theoretical_min"] == pytest.approx(0.25)

    def test_usage_error_without_selection(self):
        assert main(["audit"]) == EXIT_USAGE


class TestBounds:
    def test_ovo_three_classes(self, capsys):
        assert main(["bounds", "auroc_ovo", "3"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "0.25 1"

    def test_acsa_seven_classes(self, capsys):
        assert main(["bounds", "acsa", "7"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "0 1"

    def test_ova_with_profile(self, capsys):
        assert main(["bounds", "auroc_ova", "3", "--profile", "2,3,4"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "0.222222 1"

    def test_ova_without_profile_is_input_error(self, capsys):
        assert main(["bounds", "auroc_ova", "3"]) == EXIT_INPUT
        assert "profile" in capsys.readouterr().err


class TestSimulate:
    def test_small_spec_writes_outputs(self, tmp_path, capsys):
        spec = {
            "experiment": "tiny",
            "kind": "rrt_stability",
            "seed": 3,
            "datasets": [{
                "id": "d", "mode": "matrix", "matrix": [[8, 2], [10, 90]],
                "schedule": ["1", "2", "10"],
                "indices": ["gmean2", "precision"],
            }],
        }
        spec_path = tmp_path / "tiny.json"
        spec_path.write_text(json.dumps(spec))
        code = main(["simulate", str(spec_path), "--output-dir", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert (tmp_path / "tiny_long.csv").exists()
        assert (tmp_path / "tiny_summary.csv").exists()
        assert "gmean2: mean schedule std = 0.000000" in out

    def test_bundled_growth_spec(self, tmp_path, capsys):
        code = main(["simulate", str(SPEC_DIR / "example1_type2.json"),
                     "--output-dir", str(tmp_path)])
        assert code == EXIT_OK
        long_csv = (tmp_path / "example1_type2_long.csv").read_text()
        assert "auroc_ova" in long_csv

    def test_malformed_spec_names_field(self, tmp_path, capsys):
        spec_path = tmp_path / "bad.json"
        spec_path.write_text(json.dumps({"kind": "type2_growth", "experiment": "x"}))
        code = main(["simulate", str(spec_path), "--output-dir", str(tmp_path)])
        assert code == EXIT_INPUT
        assert "spec.steps" in capsys.readouterr().err

    def test_invalid_json_is_input_error(self, tmp_path, capsys):
        spec_path = tmp_path / "bad.json"
        spec_path.write_text("{not json")
        assert main(["simulate", str(spec_path)]) == EXIT_INPUT


class TestUsageAndSeed:
    def test_no_arguments_is_usage_error(self):
        assert main([]) == EXIT_USAGE

    def test_unknown_subcommand_is_usage_error(self):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_help_exits_clean(self):
        assert main(["--help"]) == EXIT_OK

    def test_seed_env_override(self, monkeypatch):
        monkeypatch.setenv("IMBINDEX_SEED", "42")
        assert default_seed() == 42
        monkeypatch.delenv("IMBINDEX_SEED")
        assert default_seed() == DEFAULT_SEED

    def test_bad_seed_env_rejected(self, monkeypatch):
        monkeypatch.setenv("IMBINDEX_SEED", "not_a_number")
        with pytest.raises(ValueError):
            default_seed()
