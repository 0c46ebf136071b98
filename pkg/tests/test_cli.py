import io
import json

import pytest

from dimerlab.cli import CommandConfig, main, run
from dimerlab.laurent import lp_normalize, parse_poly


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_charpoly_weave(capsys):
    code, out, _ = cli(capsys, "charpoly", "builtin:weave")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("p = "))
    assert lp_normalize(parse_poly(line[4:])) == lp_normalize(parse_poly("-(4 + z + z^-1 + w + w^-1)"))


def test_charpoly_json(capsys):
    code, out, _ = cli(capsys, "charpoly", "--graph", "builtin:triaxial", "--format", "json")
    data = json.loads(out)
    assert code == 0 and set(data) == {"poly", "terms", "normalized", "normalized_terms"}


def test_mahler_triaxial(capsys):
    code, out, _ = cli(capsys, "mahler", "--graph", "builtin:triaxial", "--tol", "1e-6")
    fields = dict(l.split(" = ") for l in out.splitlines())
    assert code == 0
    assert abs(float(fields["m"]) - 1.615329) < 2e-6
    assert abs(float(fields["2pi_m"]) - 10.14942) < 1e-5


def test_mahler_poly_json(capsys):
    code, out, _ = cli(capsys, "mahler", "--poly", "1 + z + w", "--format", "json")
    assert code == 0 and abs(float(json.loads(out)["m"]) - 0.3230659) < 1e-5


def test_dimers(capsys):
    _, fast, _ = cli(capsys, "dimers", "builtin:weave", "--n", "1")
    _, brute, _ = cli(capsys, "dimers", "builtin:weave", "--n", "1", "--brute")
    assert "Z=8" in fast and "Z=8" in brute


def test_density_csv(capsys):
    code, out, _ = cli(capsys, "density", "builtin:weave", "--n", "4,8")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,vertices,edges,log_tau,density,two_pi_density" and len(lines) == 3


def test_treecount_patch_file(capsys, tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(json.dumps({"n_vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}))
    code, out, _ = cli(capsys, "treecount", "--patch-file", str(path), "--format", "json")
    assert code == 0 and json.loads(out)[0]["tau"] == "16"


def test_treecount_graph(capsys):
    code, out, _ = cli(capsys, "treecount", "builtin:weave", "--n", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("3,9,12,192,")


def test_check_single_graph(capsys):
    code, out, _ = cli(capsys, "check", "builtin:weave")
    assert code == 0 and out.strip().endswith("11/11 checks passed")


def test_check_default_corpus(capsys):
    code, out, _ = cli(capsys, "check")
    assert code == 0 and out.strip().endswith("77/77 checks passed")


@pytest.mark.parametrize("argv,code,name", [
    (["mahler"], 2, "ConfigError"),
    (["mahler", "--poly", "z", "--graph", "builtin:weave"], 2, "ConfigError"),
    (["charpoly", "builtin:weave", "--graph", "builtin:weave"], 2, "ConfigError"),
    (["density", "builtin:weave", "--n", "8,4"], 2, "ConfigError"),
    (["density", "builtin:weave", "--n", "a"], 2, "ConfigError"),
    (["mahler", "--poly", "z", "--tol", "0"], 2, "ConfigError"),
    (["charpoly", "builtin:nope"], 3, "GraphFormatError"),
    (["charpoly", '{"vertices": [{"id": "a", "pos": [0.5, 0.5]}], "edges": [{"u": "a", "v": "b", "shift": [1, 0]}]}'],
     4, "GraphValidationError"),
    (["mahler", "--poly", "x + 1"], 5, "PolynomialError"),
    (["dimers", "builtin:triaxial", "--n", "4", "--brute"], 6, "SizeCapError"),
])
def test_error_records(capsys, argv, code, name):
    got, out, err = cli(capsys, *argv)
    record = json.loads(err.strip().splitlines()[-1])
    assert got == code == record["exit_code"]
    assert record["error"] == name and out == ""


def test_convergence_error_reports_best(capsys, monkeypatch):
    import dimerlab.mahler as mahler

    monkeypatch.setattr(mahler, "MAX_POINTS", 128)
    real = mahler.mahler_2d
    monkeypatch.setattr(mahler, "mahler_2d", lambda p, tol: real(p, tol, max_points=128))
    code, _, err = cli(capsys, "mahler", "--poly", "-(4 + z + z^-1 + w + w^-1)", "--tol", "1e-14")
    lines = err.strip().splitlines()
    assert code == 8
    assert "best" in json.loads(lines[0])


def test_deterministic_output():
    cfg = CommandConfig("density", graph="builtin:triaxial", ns=(3, 6), fmt="json")
    a, b = io.StringIO(), io.StringIO()
    run(cfg, a)
    run(cfg, b)
    assert a.getvalue() == b.getvalue()


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2
