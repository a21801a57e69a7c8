import json

import pytest

from isomeric.cli import OUTPUT_DIR_ENV, RunConfig, UsageError, main, run


def _run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_cauchy_json(capsys):
    status, out, _ = _run(capsys, "cauchy", "--n", "2", "--max-degree", "6", "--format", "json")
    assert status == 0
    data = json.loads(out)
    assert data["seed"] == 0
    assert [r["degree"] for r in data["records"]] == list(range(7))
    assert all(r["lhs"] == r["rhs"] and isinstance(r["lhs"], str) for r in data["records"])
    assert {e["lambda"]: e["term"] for e in data["records"][3]["per_lambda"]} == {"3": "72", "2,1": "16"}


def test_cauchy_csv_is_a_table(capsys):
    status, out, _ = _run(capsys, "cauchy", "--n", "1", "--max-degree", "2", "--format", "csv")
    assert status == 0
    assert out.splitlines() == ["degree,lhs,rhs,equal", "0,1,1,True", "1,2,2,True", "2,2,2,True", "# seed=0"]


def test_symfunc_q_text(capsys):
    status, out, _ = _run(capsys, "symfunc", "q", "--lambda", "3,1", "--vars", "2")
    assert status == 0
    first = out.splitlines()[0]
    assert first.startswith("Q_3,1(2 vars) = ")
    assert "x1^3*x2" in first


def test_isotypic_json(capsys, tmp_path):
    dump = tmp_path / "basis.txt"
    status, out, _ = _run(capsys, "isotypic", "--n", "2", "--degree", "3", "--format", "json", "--dump-basis", str(dump))
    assert status == 0
    comps = json.loads(out)["components"]
    assert [(c["lambda"], c["dimension"], c["degree"]) for c in comps] == [("3", "72", 3), ("2,1", "16", 3)]
    text = dump.read_text().splitlines()
    assert sum(not line.startswith("#") for line in text) == 88


def test_qdet_verify_json(capsys):
    status, out, _ = _run(capsys, "qdet", "verify", "--n", "2", "--r", "1", "--max-degree", "6", "--format", "json")
    assert status == 0
    data = json.loads(out)
    assert data["kernel_dims"] == ["0", "0", "16", "64", "160", "320"]
    assert data["inclusion_ok"] and data["equivariance_ok"]
    assert data["minor_powers"][0]["minor"] == "x11*x22 - x12*x21"
    assert int(data["minor_powers"][0]["k"]) >= 2


def test_lattice_queries(capsys):
    assert _run(capsys, "lattice", "prime", "--gens", "3,1")[1].splitlines()[0] == "false"
    assert _run(capsys, "lattice", "prime", "--gens", "2,1")[1].splitlines()[0] == "true"
    assert _run(capsys, "lattice", "radical", "--gens", "3,1;4,2")[1].splitlines()[0] == "2,1"
    assert _run(capsys, "lattice", "leq", "--gens", "3,1", "--other", "2,1")[1].splitlines()[0] == "true"
    status, out, _ = _run(capsys, "lattice", "spec", "--rmax", "5", "--format", "json")
    assert status == 0
    chain = json.loads(out)["chain"]
    assert [e["generators"] for e in chain] == ["1", "2,1", "3,2,1", "4,3,2,1", "5,4,3,2,1", "6,5,4,3,2,1", "0"]


@pytest.mark.parametrize(
    "argv",
    [
        ["lattice", "prime", "--gens", "3,3"],
        ["symfunc", "q", "--lambda", "1,x", "--vars", "2"],
        ["cauchy", "--n", "0"],
        ["qdet", "verify", "--n", "2", "--r", "2"],
        ["isotypic", "--n", "3", "--degree", "5"],
        ["lattice", "leq", "--gens", "1", "--other", "2", "--format", "csv"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    status, out, err = _run(capsys, *argv)
    assert status == 2 and not out
    assert err.startswith("isomeric: error:")


def test_dimension_cap_message(capsys):
    status, _, err = _run(capsys, "isotypic", "--n", "2", "--degree", "4", "--dim-cap", "100")
    assert status == 2 and "above the cap 100" in err


def test_parser_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cauchy"])
    assert exc.value.code == 2


def test_failed_check_exits_1(monkeypatch):
    import isomeric.cli as cli

    class Bad:
        equal = False
        degree = 0
        lhs = rhs = 1
        per_lambda = []

        def as_dict(self):
            return {}

    monkeypatch.setattr(cli, "cauchy_check", lambda n, d: Bad())
    status, _ = run(RunConfig(command=("cauchy",), n=1, max_degree=0))
    assert status == 1


def test_output_is_deterministic_and_records_seed(capsys):
    argv = ["isotypic", "--n", "2", "--degree", "4", "--format", "json", "--seed", "5"]
    first = _run(capsys, *argv)[1]
    second = _run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["seed"] == 5


def test_output_directory_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    status, out, _ = _run(capsys, "lattice", "spec", "--rmax", "1", "--output", "chain.txt")
    assert status == 0 and not out
    assert (tmp_path / "chain.txt").read_text() == "I_0 = <1>\nI_1 = <2,1>\nI_inf = <0>\nseed: 0\n"


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig(command=("cauchy",), n=2, max_degree=-1).validate()
    with pytest.raises(UsageError):
        run(RunConfig(command=("nope",)))
