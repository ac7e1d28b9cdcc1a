import csv
import io
import json

import pytest

from drinfeld.cli import RunConfig, build_parser, config_from_args, main, run

GOLDEN_B32 = (
    '{"summands":[{"a":0,"b":1,"mult":1},{"a":1,"b":2,"mult":1},'
    '{"a":0,"b":3,"mult":1}]}\n'
)


def _capture(argv):
    buf = io.StringIO()
    cfg = config_from_args(build_parser().parse_args(argv))
    status = run(cfg, stream=buf)
    return status, buf.getvalue()


# -- golden outputs ------------------------------------------------------------


def test_decompose_json_golden_bytes():
    status, out = _capture(["decompose", "--p", "3", "--m", "2", "--format", "json"])
    assert status == 0
    assert out == GOLDEN_B32


def test_factors_text_golden():
    status, out = _capture(["factors", "--p", "5", "--m", "2"])
    assert status == 0
    assert out == "d = [1,2,3,2,1]\n"


def test_basis_text_header_and_rows():
    status, out = _capture(["basis", "--p", "3", "--m", "2"])
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "q=3 m=2 dim=6"
    assert lines[1] == "w(0,0)  degree 0"
    assert len(lines) == 7


# -- JSON structure -------------------------------------------------------------


def test_basis_json_round_trip():
    status, out = _capture(["basis", "--p", "5", "--m", "2", "--format", "json"])
    doc = json.loads(out)
    assert status == 0
    assert doc["q"] == 5 and doc["m"] == 2 and doc["dim"] == 27
    assert len(doc["basis"]) == 27
    assert set(doc["basis"][0]) == {"i", "j", "degree"}
    assert json.loads(json.dumps(doc)) == doc


def test_action_json_identity():
    status, out = _capture(
        ["action", "--p", "3", "--m", "2", "--element", "1", "0", "0", "1",
         "--format", "json"]
    )
    doc = json.loads(out)
    assert status == 0
    n = len(doc["matrix"])
    assert n == 6
    assert doc["element"] == [[1, 0], [0, 1]]
    for i, row in enumerate(doc["matrix"]):
        assert row == [1 if j == i else 0 for j in range(n)]


def test_action_r2_coefficient_vectors():
    # diag(x, 2x) over GF(9) has determinant 2x^2 = 1 since x^2 = -1
    status, out = _capture(
        ["action", "--p", "3", "--r", "2", "--m", "1",
         "--element", "0,1", "0", "0", "0,2", "--format", "json"]
    )
    doc = json.loads(out)
    assert status == 0
    assert doc["q"] == 9
    assert doc["element"][0][0] == [0, 1]
    assert len(doc["matrix"]) == 36
    assert all(isinstance(cell, list) for row in doc["matrix"] for cell in row)


def test_decompose_g_json_keys():
    status, out = _capture(
        ["decompose", "--p", "5", "--m", "2", "--group", "G", "--format", "json"]
    )
    doc = json.loads(out)
    assert status == 0
    assert set(doc) == {"summands", "projectives", "factors"}
    assert {(r["a"], r["b"]) for r in doc["summands"]} == {
        (1, 1),
        (0, 2),
        (3, 2),
        (2, 3),
        (1, 4),
    }
    assert doc["projectives"] == [{"t": 5, "n": 1}]
    assert [r["d"] for r in doc["factors"]] == [1, 2, 3, 2, 1]


def test_decompose_g_text_factor_line():
    status, out = _capture(["decompose", "--p", "5", "--m", "2", "--group", "G"])
    assert status == 0
    assert "factors: d = [1,2,3,2,1]" in out
    assert "P(V_5) x 1" in out


def test_verify_json_and_exit_status():
    status, out = _capture(["verify", "--p", "3", "--m", "2", "--format", "json"])
    doc = json.loads(out)
    assert status == 0
    assert doc["all_passed"] is True
    assert [c["name"] for c in doc["checks"]] == [
        "B-decomposition",
        "composition factors",
        "G-decomposition dimension",
        "implied factors",
    ]
    assert all(c["passed"] for c in doc["checks"])


def test_verify_text():
    status, out = _capture(["verify", "--p", "3", "--m", "2"])
    assert status == 0
    assert out.startswith("verify p=3 m=2\n")
    assert "result: all checks passed" in out


def test_decompose_oracle_agrees():
    status, out = _capture(
        ["decompose", "--p", "5", "--m", "2", "--oracle", "--format", "json"]
    )
    doc = json.loads(out)
    assert status == 0
    assert doc["diff"] == []
    assert doc["oracle"] == doc["summands"]
    status, out = _capture(["decompose", "--p", "3", "--m", "2", "--oracle"])
    assert status == 0
    assert "diff: none (oracle agrees)" in out


def test_sweep_default_grid():
    status, out = _capture(["sweep", "--format", "json"])
    doc = json.loads(out)
    assert status == 0
    assert doc["all_passed"] is True
    assert [(rec["p"], rec["m"]) for rec in doc["grid"]] == [
        (3, 2),
        (3, 3),
        (5, 2),
        (5, 3),
        (7, 2),
        (7, 3),
    ]


def test_sweep_custom_grid_text():
    status, out = _capture(["sweep", "--p-values", "3", "--m-values", "2"])
    assert status == 0
    assert out.rstrip().endswith("sweep: all passed")


# -- CSV projections --------------------------------------------------------------


def _parse_csv(out):
    return list(csv.reader(io.StringIO(out)))


def test_csv_headers():
    cases = {
        ("basis", "--p", "3", "--m", "2"): ["i", "j", "degree"],
        ("decompose", "--p", "3", "--m", "2"): ["a", "b", "mult"],
        ("factors", "--p", "3", "--m", "2"): ["t", "d"],
        ("verify", "--p", "3", "--m", "2"): ["p", "m", "check", "passed", "detail"],
    }
    for argv, header in cases.items():
        status, out = _capture(list(argv) + ["--format", "csv"])
        rows = _parse_csv(out)
        assert status == 0
        assert rows[0] == header


def test_csv_decompose_values():
    _, out = _capture(["decompose", "--p", "3", "--m", "2", "--format", "csv"])
    rows = _parse_csv(out)
    assert rows[1:] == [["0", "1", "1"], ["1", "2", "1"], ["0", "3", "1"]]


def test_csv_decompose_oracle_columns():
    _, out = _capture(
        ["decompose", "--p", "3", "--m", "2", "--oracle", "--format", "csv"]
    )
    rows = _parse_csv(out)
    assert rows[0] == ["a", "b", "closed", "oracle"]
    assert all(r[2] == r[3] for r in rows[1:])


def test_csv_action_flat_cells():
    _, out = _capture(
        ["action", "--p", "3", "--r", "2", "--m", "1",
         "--element", "0,1", "0", "0", "0,2", "--format", "csv"]
    )
    rows = _parse_csv(out)
    assert rows[0] == ["row", "col", "value"]
    assert len(rows) == 1 + 36 * 36
    assert all(";" in r[2] or r[2].isdigit() for r in rows[1:])


# -- error handling ----------------------------------------------------------------


def test_exit_2_on_invalid_inputs(capsys):
    cases = [
        ["basis", "--p", "4", "--m", "1"],
        ["decompose", "--p", "3", "--r", "2", "--m", "2"],
        ["decompose", "--p", "3", "--m", "1"],
        ["decompose", "--p", "3", "--m", "2", "--group", "G", "--oracle"],
        ["factors", "--p", "9", "--m", "2"],
        ["action", "--p", "3", "--m", "1", "--element", "1", "0", "0", "2"],
    ]
    for argv in cases:
        assert main(argv) == 2, argv
        err = capsys.readouterr().err
        assert err.startswith("error: ")


def test_argparse_rejects_missing_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_out_writes_file(tmp_path, capsys):
    path = tmp_path / "table.json"
    status = main(
        ["decompose", "--p", "3", "--m", "2", "--format", "json", "--out", str(path)]
    )
    assert status == 0
    assert path.read_text() == GOLDEN_B32
    assert capsys.readouterr().out == ""


def test_run_config_defaults():
    cfg = RunConfig(command="sweep")
    assert cfg.p_values == (3, 5, 7) and cfg.m_values == (2, 3)
    buf = io.StringIO()
    assert run(RunConfig(command="factors", p=3, m=2), stream=buf) == 0
    assert buf.getvalue() == "d = [1,1,1]\n"
