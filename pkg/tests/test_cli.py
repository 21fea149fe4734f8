import io
import json

import pytest

from torex.cli import COMMANDS, run
from torex.fixtures import fixture_fans, pentagon, projective_plane
from torex.serialize import TOREX_VERSION, fan_to_dict


def _write(tmp_path, fan, name=None):
    path = tmp_path / f"{name or fan.name or 'fan'}.json"
    path.write_text(json.dumps(fan_to_dict(fan)))
    return str(path)


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pent(tmp_path):
    return _write(tmp_path, pentagon())


@pytest.mark.parametrize("command", [c for c in COMMANDS if c not in ("cohom", "acyclic")])
def test_every_command_succeeds_on_pentagon(command, pent, tmp_path):
    argv = [command, "--fan", pent, "--json"]
    if command == "figure":
        argv += ["--out", str(tmp_path / "f.svg")]
    code, out, err = _run(argv)
    assert code == 0, err + out
    rep = json.loads(out)
    assert rep["torex_version"] == TOREX_VERSION and rep["command"] == command


@pytest.mark.parametrize("command", ["cohom", "acyclic"])
def test_class_commands(command, pent):
    code, out, _ = _run([command, "--fan", pent, "--class", '{"free": [0, 0, 0]}', "--json"])
    assert code == 0
    assert json.loads(out)["result"]["class"] == {"free": [0, 0, 0], "torsion": []}


def test_collection_projective_plane(tmp_path):
    code, out, _ = _run(["collection", "--fan", _write(tmp_path, projective_plane()), "--json"])
    res = json.loads(out)["result"]
    assert code == 0 and res["count_check"] is True and len(res["classes"]) == 3


def test_cohom_weighted_line(tmp_path):
    path = _write(tmp_path, fixture_fans()["F_B"], "wl")
    code, out, _ = _run(["cohom", "--fan", path, "--class", '{"free": [-6]}', "--json"])
    assert code == 0
    assert json.loads(out)["result"]["dims"] == [0, 0]
    code, out, _ = _run(["cohom", "--fan", path, "--class", '{"free": [6]}', "--json"])
    assert json.loads(out)["result"]["dims"] == [2, 0]


def test_text_output(pent):
    code, out, _ = _run(["classify", "--fan", pent])
    assert code == 0 and out.startswith("classify pentagon") and "fano" in out.lower()


def test_unknown_field_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "rays": [[1], [-1]],\n  "colour": 1\n}')
    code, out, err = _run(["validate", "--fan", str(path)])
    assert code == 2 and out == ""
    assert err.startswith(f"torex: error: {path}:3:3: unknown field 'colour'")


def test_malformed_json_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "rays": [[1], [-1]\n}')
    code, _, err = _run(["validate", "--fan", str(path)])
    assert code == 2 and f"{path}:3:1:" in err


def test_missing_file_and_bad_args(tmp_path, pent):
    assert _run(["validate", "--fan", str(tmp_path / "nope.json")])[0] == 2
    assert _run(["nonsense"])[0] == 2
    assert _run(["cohom", "--fan", pent])[0] == 2
    assert _run(["cohom", "--fan", pent, "--class", '{"free": [1]}'])[0] == 2


def test_invalid_fan_exit_1(tmp_path):
    # two overlapping cones: not a fan
    path = tmp_path / "overlap.json"
    path.write_text(json.dumps({"rays": [[1, 0], [0, 1], [-1, -1], [1, 1]],
                                "max_cones": [[0, 1], [1, 2], [2, 0], [0, 3]]}))
    code, out, _ = _run(["validate", "--fan", str(path), "--json"])
    rep = json.loads(out)
    assert code == 1 and rep["result"]["ok"] is False and rep["witnesses"]


def test_verify_failure_exit_1(tmp_path):
    path = _write(tmp_path, projective_plane())
    # O, O(1), O(3) is not exceptional: Ext^2(O(3), O) = H^2(O(-3)) != 0
    classes = '[{"free": [0]}, {"free": [1]}, {"free": [3]}]'
    code, out, _ = _run(["verify", "--fan", path, "--class", classes, "--json"])
    rep = json.loads(out)
    assert code == 1 and rep["result"]["passed"] is False and rep["witnesses"]
    good = '[{"free": [0]}, {"free": [1]}, {"free": [2]}]'
    assert _run(["verify", "--fan", path, "--class", good])[0] == 0


def test_closure_incomplete_exit_1(tmp_path):
    path = _write(tmp_path, projective_plane())
    code, out, _ = _run(["closure", "--fan", path, "--class", '{"free": [0]}', "--json"])
    assert code == 1 and json.loads(out)["result"]["complete"] is False


def test_figure_unsupported_dimension(tmp_path):
    code, out, _ = _run(["figure", "--fan", _write(tmp_path, projective_plane())])
    assert code == 1 and out.startswith("no figure:")


def test_figure_viewport_errors(pent):
    assert _run(["figure", "--fan", pent, "--width", "0"])[0] == 2
    assert _run(["figure", "--fan", pent, "--height", "-5"])[0] == 2


def test_figure_byte_identical(pent, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert _run(["figure", "--fan", pent, "--out", str(a)])[0] == 0
    assert _run(["figure", "--fan", pent, "--out", str(b)])[0] == 0
    assert a.read_bytes() == b.read_bytes()
