import json

import pytest

from slnav.cli import main


@pytest.fixture
def cycle4_file(tmp_path):
    p = tmp_path / "cycle4.txt"
    p.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    return p


def test_solve_fixed_k(cycle4_file, capsys):
    rc = main(["solve", str(cycle4_file), "--src", "0", "--tgt", "2", "--k", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "path 0-1-2" in out
    assert "status optimal" in out


def test_solve_adaptive(cycle4_file, capsys):
    rc = main(["solve", str(cycle4_file), "--src", "0", "--tgt", "2", "--adaptive"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "k_used 1" in out


def test_solve_bad_query_exit_code(cycle4_file, capsys):
    rc = main(["solve", str(cycle4_file), "--src", "0", "--tgt", "9"])
    assert rc == 2


def test_solve_show_distances(cycle4_file, capsys):
    rc = main(
        [
            "solve", str(cycle4_file),
            "--src", "0", "--tgt", "2", "--k", "1", "--show-distances",
        ]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "step from 0" in out


def test_spectra_output(cycle4_file, capsys):
    rc = main(["spectra", str(cycle4_file), "--k", "1"])
    out = capsys.readouterr().out.splitlines()
    assert rc == 0
    assert out[0].startswith("edge_index ")
    assert out[1].startswith("eigenvalues ")
    assert len(out) == 2 + 4  # one line per edge


def test_gen_writes_files_and_is_deterministic(tmp_path, capsys):
    for sub in ("a", "b"):
        rc = main(
            [
                "gen", "--max-nodes", "5", "--samples", "100",
                "--seed", "3", "--out", str(tmp_path / sub),
            ]
        )
        assert rc == 0
    for name in ("train.txt", "test.txt", "train.manifest.json",
                 "graphs_train.txt", "graphs_test.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (
            tmp_path / "b" / name
        ).read_bytes()


def test_eval_writes_report_and_is_deterministic(tmp_path, capsys):
    for sub in ("a", "b"):
        rc = main(
            [
                "eval", "--max-nodes", "5", "--queries", "sample:50",
                "--seed", "3", "--out", str(tmp_path / sub),
            ]
        )
        assert rc == 0
    ra = json.loads((tmp_path / "a" / "report.json").read_text())
    assert 0.0 <= ra["overall_accuracy"] <= 1.0
    for name in ("report.json", "accuracy_by_length.csv", "k_histogram.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (
            tmp_path / "b" / name
        ).read_bytes()


def test_eval_json_lines_format(tmp_path):
    rc = main(
        [
            "eval", "--max-nodes", "4", "--queries", "all", "--seed", "0",
            "--out", str(tmp_path), "--format", "json-lines",
        ]
    )
    assert rc == 0
    assert (tmp_path / "k_histogram.jsonl").exists()
