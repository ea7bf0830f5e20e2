import json

import pytest

from kmp_spectra.cli import main
from kmp_spectra.verify import PATH_GRAPH


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "path3.json"
    path.write_text(json.dumps(PATH_GRAPH))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_exact(capsys, graph_file):
    code, out, _ = _run(capsys, ["spectrum", "--graph", graph_file, "--rep", "pure:2", "--exact"])
    assert code == 0
    vals = [e["value"] for e in json.loads(out)["eigenvalues"]]
    assert vals == ["2/3", "4/3", "2"]


@pytest.mark.parametrize("rep", ["kmp:1", "codim1-M:1", "sym-z:2", "unitary-R:1,1", "torinv-S:2"])
def test_spectrum_reps(capsys, graph_file, rep):
    code, out, _ = _run(capsys, ["spectrum", "--graph", graph_file, "--rep", rep, "--format", "csv"])
    assert code == 0
    assert out.startswith("value,multiplicity")


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "path-example", "--exact"],
        ["verify", "mean-field", "--n", "3", "--coeffs", "0,0,1,1", "--exact"],
        ["verify", "codim1", "--n", "4", "--weights", "1,1,1,1", "--exact"],
        ["verify", "kmp-equiv", "--n", "3", "--k", "2", "--exact"],
        ["verify", "weingarten", "--k", "3", "--d", "4"],
    ],
)
def test_verify_suites_pass(capsys, argv):
    code, out, _ = _run(capsys, argv)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_with_graph(capsys, graph_file):
    assert _run(capsys, ["verify", "sn-containment", "--graph", graph_file, "--k", "2", "--exact"])[0] == 0
    assert _run(capsys, ["verify", "conjectures", "--graph", graph_file, "--k-max", "3"])[0] == 0


def test_sweep_writes_file(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, _, err = _run(capsys, ["sweep", "--n", "3", "--k-max", "2", "--trials", "5", "--format", "csv", "--out", str(out)])
    assert code == 0
    assert "violations=0" in err
    assert out.read_text().count("\n") == 6


def test_wg_table(capsys):
    code, out, _ = _run(capsys, ["wg", "--k", "2", "--d", "3"])
    assert code == 0
    assert json.loads(out) == {"(1,1)": "1/8", "(2)": "-1/24"}


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["spectrum", "--graph", "x.json", "--rep", "nope:1"],
        ["verify", "mean-field", "--n", "3"],
        ["verify", "mean-field", "--n", "3", "--coeffs", "1,2"],
        ["sweep", "--n", "3", "--k-max", "2", "--trials", "0"],
        ["spectrum", "--graph", "/nonexistent.json", "--rep", "kmp:1"],
    ],
)
def test_usage_errors(capsys, argv):
    assert _run(capsys, argv)[0] == 1


def test_resource_error(capsys):
    assert _run(capsys, ["wg", "--k", "7", "--d", "3"])[0] == 2


def test_parse_error_is_usage(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert _run(capsys, ["spectrum", "--graph", str(bad), "--rep", "kmp:1"])[0] == 1


def test_failed_verify_exits_3(capsys, monkeypatch):
    from kmp_spectra import cli

    monkeypatch.setattr(cli.suites, "verify_path_example", lambda exact, tol: {"pass": False})
    assert _run(capsys, ["verify", "path-example"])[0] == 3


def test_breach_exits_3(capsys, monkeypatch, graph_file):
    from kmp_spectra import cli
    from kmp_spectra.base import InvariantBreach

    def boom(*args):
        raise InvariantBreach("routes disagree")

    monkeypatch.setattr(cli, "build_operator", boom)
    assert _run(capsys, ["spectrum", "--graph", graph_file, "--rep", "kmp:1"])[0] == 3


def test_unitary_r11_contains_kmp1(capsys, graph_file):
    code, out, _ = _run(capsys, ["spectrum", "--graph", graph_file, "--rep", "unitary-R:1,1", "--exact"])
    assert code == 0
    vals = {e["value"] for e in json.loads(out)["eigenvalues"]}
    assert {"0", "1/2", "3/2"} <= vals


def test_sweep_output_identical_across_workers(capsys):
    base = ["sweep", "--n", "3", "--k-max", "3", "--trials", "8", "--seed", "5"]
    one = _run(capsys, base)[1]
    two = _run(capsys, base + ["--workers", "2"])[1]
    assert one == two
