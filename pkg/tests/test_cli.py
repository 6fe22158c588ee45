from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from tscalc import cli
from tscalc.cli import main, parse_request, UsageError

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"
COMMANDS = json.loads((GOLDEN / "commands.json").read_text())
JSON_GOLDEN = sorted(n for n in COMMANDS if n.endswith(".json"))


@pytest.fixture(autouse=True)
def in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)
    monkeypatch.delenv("TSCALC_SEED", raising=False)


def schema(name):
    return json.loads(resources.files("tscalc").joinpath(f"schemas/{name}.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# -- golden files ----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_golden_output(name, tmp_path, capsys):
    target = tmp_path / name
    assert main(COMMANDS[name] + ["-o", str(target)]) == 0
    assert target.read_bytes() == (GOLDEN / name).read_bytes()
    code, out, _ = run(COMMANDS[name], capsys)
    assert code == 0 and out.encode() == (GOLDEN / name).read_bytes()


@pytest.mark.parametrize("name", JSON_GOLDEN)
def test_golden_validates_against_schema(name):
    doc = json.loads((GOLDEN / name).read_text())
    jsonschema.validate(doc, schema(f"{doc['command']}-report"))
    if "scale" in doc["inputs"]:
        jsonschema.validate(doc["inputs"]["scale"], schema("scale-spec"))
    if "fn" in doc["inputs"]:
        jsonschema.validate(doc["inputs"]["fn"], schema("function-spec"))


@pytest.mark.parametrize("fixture", ["z4", "unit", "q2", "hybrid_float", "overlapping"])
def test_scale_fixtures_match_schema(fixture):
    jsonschema.validate(json.loads((HERE / "fixtures" / f"{fixture}.json").read_text()), schema("scale-spec"))


def test_worked_case_values():
    doc = json.loads((GOLDEN / "bound_z4.json").read_text())
    assert (doc["lhs"], doc["rhs"], doc["margin"], doc["M"]) == ("7/2", "7", "7/2", "7")
    assert json.loads((GOLDEN / "sharpness_unit.json").read_text())["result"] is False
    suite = json.loads((GOLDEN / "suite_identity.json").read_text())
    assert suite["suites"][0]["max_residual"] == "0" and suite["verdict"] == "pass"


def _floats(doc):
    if isinstance(doc, float):
        yield doc
    elif isinstance(doc, dict):
        for v in doc.values():
            yield from _floats(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from _floats(v)


@pytest.mark.parametrize("name", JSON_GOLDEN)
def test_backend_number_discipline(name):
    doc = json.loads((GOLDEN / name).read_text())
    if doc["backend"] == "rational":
        # suite configs carry float tolerances by design; nothing else may
        body = {k: v for k, v in doc.items() if doc["command"] != "suite" or k not in ("inputs", "config")}
        assert not list(_floats(body))
        assert "tolerance" not in doc
    else:
        assert doc["tolerance"] > 0


# -- round trips -----------------------------------------------------------------


@pytest.mark.parametrize("name", JSON_GOLDEN)
def test_verify_reproduces_byte_for_byte(name, tmp_path):
    out = tmp_path / "again.json"
    assert main(["verify", str(GOLDEN / name), "-o", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_corrupted_bound_is_rejected(tmp_path, capsys):
    doc = json.loads((GOLDEN / "bound_z4.json").read_text())
    doc["rhs"] = "3"
    doc["margin"] = "-1/2"
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(doc, indent=2) + "\n")
    code, _, err = run(["verify", str(bad)], capsys)
    assert code == 1 and "does not reproduce" in err


def test_corrupted_equality_flag_is_rejected(tmp_path, capsys):
    doc = json.loads((GOLDEN / "bound_identity_sharp.json").read_text())
    doc["equality_holds"] = False
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(doc))
    assert run(["verify", str(bad)], capsys)[0] == 1


def test_falsified_closed_form_exits_one(capsys):
    argv = ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/off_lattice.json",
            "--lambda", "1/4", "--t", "2", "--mode", "four-h2-closed-form"]
    code, out, _ = run(argv, capsys)
    doc = json.loads(out)
    assert code == 1 and (doc["lhs"], doc["rhs"]) == ("3/4", "5/8")
    code, out, _ = run(argv[:-2], capsys)
    assert code == 0 and json.loads(out)["rhs"] == "3/4"


# -- input errors ----------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--scale", "fixtures/overlapping.json", "--fn", "fixtures/square.json", "--t", "1"],
        ["bound", "--scale", "fixtures/truncated.json", "--fn", "fixtures/square.json", "--t", "1"],
        ["bound", "--scale", "fixtures/missing.json", "--fn", "fixtures/square.json", "--t", "1"],
        ["bound", "--scale", '{"components": [{"point": 0.5}, {"point": "1"}]}', "--fn", "fixtures/square.json", "--t", "1"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", '{"poly": "t^2"}', "--t", "1"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--lambda", "2", "--t", "1"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--t", "1/2"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--lambda", "1", "--t", "0"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--kind", "simpson", "--t", "1"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json"],
        ["bound", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--t", "1", "--frobnicate"],
        ["bound", "--scale", "fixtures/q2.json", "--fn", "fixtures/square.json", "--kind", "midpoint"],
        ["gruss", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--t", "2", "--gamma", "2", "--Gamma", "7"],
        ["gruss", "--scale", "fixtures/z4.json", "--fn", "fixtures/square.json", "--t", "2", "--gamma", "7", "--Gamma", "1"],
        ["sharpness", "--scale", "fixtures/z4.json", "--lambda", "1/4", "--b", "3"],
        ["h2", "--scale", "fixtures/hybrid_float.json", "--t", "5", "--s", "1"],
        ["suite", "--name", "identity", "--cases", "0"],
        ["suite", "--name", "nonsense"],
        ["suite", "--name", "identity", "--families", "cantor"],
        ["verify", "fixtures/square.json"],
        [],
    ],
)
def test_input_errors_exit_two(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err


def test_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("TSCALC_SEED", "abc")
    assert run(["suite", "--name", "identity", "--cases", "2"], capsys)[0] == 2


def test_unwritable_output(tmp_path, capsys):
    argv = COMMANDS["bound_z4.json"] + ["-o", str(tmp_path / "no" / "such" / "dir.json")]
    assert run(argv, capsys)[0] == 2


# -- parsing -----------------------------------------------------------------------


def test_parse_request_rational_params():
    req = parse_request(["bound", "--scale", "fixtures/unit.json", "--fn", "fixtures/square.json",
                         "--lambda", "1/3", "--t", "1/2", "--mode", "direct"])
    assert req.command == "bound" and req.inputs["lambda"] == "1/3" and req.inputs["t"] == "1/2"
    assert req.inputs["scale"]["components"] == [{"interval": ["0", "1"]}]


def test_parse_request_suite_and_seed_env(monkeypatch):
    req = parse_request(["suite", "--name", "inequality", "--seed", "42", "--cases", "1000", "-o", "report.json"])
    assert req.inputs["config"]["seed"] == 42 and req.inputs["config"]["cases"] == 1000 and req.output == "report.json"
    monkeypatch.setenv("TSCALC_SEED", "17")
    assert parse_request(["suite", "--name", "gruss"]).inputs["config"]["seed"] == 17


def test_parse_request_lambda_out_of_range():
    with pytest.raises(UsageError):
        parse_request(["bound", "--lambda", "2"])


def test_backend_override_converts(capsys):
    code, out, _ = run(COMMANDS["bound_z4.json"] + ["--backend", "float"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["backend"] == "float" and doc["lhs"] == 3.5 and doc["tolerance"] == 1e-12


def test_h2_closed_form_off_scale(capsys):
    code, out, _ = run(["h2", "--scale", "fixtures/z4.json", "--t", "5/2", "--s", "0"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["recursive"] is None and doc["closed_form"] == "15/8" and doc["agree"] is None


def test_csv_header_is_fixed(capsys):
    for name in ("bound_z4_four_h2.csv", "identity_z4.csv", "suite_all.csv"):
        first = (GOLDEN / name).read_text().splitlines()[0].split(",")
        kind = COMMANDS[name][0]
        assert first == cli.CSV_HEADERS[kind]


def test_atomic_write_leaves_no_temp_files(tmp_path):
    assert main(COMMANDS["h2_q2.json"] + ["-o", str(tmp_path / "h2.json")]) == 0
    assert [p.name for p in tmp_path.iterdir()] == ["h2.json"]
