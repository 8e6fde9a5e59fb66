import json
import subprocess
import sys

import pytest

from bridgerect.catalog import load_system
from bridgerect.cli import main
from bridgerect.sphere import EPSILON, canonical_key


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def record(out):
    head, *fields = out.splitlines()[0].split()
    return head, dict(f.split("=", 1) for f in fields)


def test_rc_on_delta(capsys):
    code, out, _ = run(capsys, "rc", "@delta85", "@epsilon")
    cmd, rec = record(out)
    assert (cmd, code) == ("rc", 0)
    assert rec["verdict"] == "false"
    assert "23/13" in rec["missing"].split(",")


def test_expect_controls_exit_code(capsys):
    assert run(capsys, "--expect", "false", "rc", "@delta85", "@epsilon")[0] == 0
    assert run(capsys, "--expect", "true", "rc", "@delta85", "@epsilon")[0] == 1
    assert run(capsys, "--expect", "true", "rc", "@rc-positive-A", "@rc-positive-B")[0] == 0


def test_rc_witnesses(capsys):
    _, out, _ = run(capsys, "rc", "--witnesses", "@rc-positive-A", "@rc-positive-B")
    assert sum(line.strip().startswith("tuple") for line in out.splitlines()) == 9


def test_intersections_and_isotopic(capsys):
    _, out, _ = run(capsys, "intersections", "@delta85", "@epsilon")
    assert record(out)[1] == {"total": "43", "matrix": "1,2,1;2,11,9;1,9,7"}
    _, out, _ = run(capsys, "isotopic", "@epsilon", "@rc-positive-A")
    assert record(out)[1]["verdict"] == "true"


def test_certify_and_scan(capsys):
    _, out, _ = run(capsys, "certify", "@delta85", "@epsilon")
    assert record(out)[1]["verdict"] == "certificate"
    assert record(out)[1]["missing"] == "13"
    _, out, _ = run(capsys, "scan-rc", "@rc-positive-A", "@rc-positive-B")
    assert record(out)[1]["verdict"] == "true"


def test_twist_prints_a_loadable_system(capsys):
    from bridgerect.catalog import loads

    _, out, _ = run(capsys, "twist", "@epsilon", "pair2:2", "pair4:2")
    B = loads(out.split("\n", 1)[1])
    assert B.equator_crossings() == 5
    code, out, _ = run(capsys, "normal-form", "@epsilon", "@epsilon")
    assert code == 0 and record(out)[1]["verdict"] == "true"


def test_twist_to_file(capsys, tmp_path):
    f = tmp_path / "b.arcs"
    code, out, _ = run(capsys, "twist", "@epsilon", "pair2:2", "pair4:2", "--out", str(f))
    assert code == 0 and record(out)[1]["equator_crossings"] == "5"
    # a full twist on pair circles leaves the tangle of epsilon: no waves to find
    _, out, _ = run(capsys, "waves", "@epsilon", str(f))
    assert record(out)[1]["count"] == "0"


def test_waves_and_classify_on_a_rewired_system(capsys, tmp_path):
    run(capsys, "enumerate", "--out", str(tmp_path))
    f = tmp_path / "beta01.arcs"
    _, out, _ = run(capsys, "waves", "@epsilon", str(f))
    assert record(out)[1]["count"] == "1"
    assert "based at A1" in out
    code, out, _ = run(capsys, "classify", "@epsilon", str(f))
    assert code == 0 and record(out)[1]["unclassified"] == "0"


def test_enumerate_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--rewires", "1", "--max-crossings", "4", "--out", str(tmp_path))
    assert code == 0 and record(out)[1]["classes"] == "19"
    files = sorted(tmp_path.glob("*.arcs"))
    assert len(files) == 19
    assert canonical_key(load_system(str(files[0]))) == canonical_key(EPSILON)


def test_verify_small_bound(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-85", "--rewires", "1", "--max-crossings", "4", "--out", str(report))
    rec = record(out)[1]
    assert code == 0 and rec["verdict"] == "ok"
    assert rec["classes"] == rec["rc_failures"] == "19"
    data = json.loads(report.read_text())
    assert data["ok"] and data["classes_enumerated"] == 19


def test_render(capsys, tmp_path):
    f = tmp_path / "x.svg"
    code, out, _ = run(capsys, "render", "@delta85", "@epsilon", "--out", str(f))
    assert code == 0 and record(out)[1]["crossings"] == "43"
    assert f.read_text().startswith("<svg")


def test_invalid_file_exits_one(capsys, tmp_path):
    f = tmp_path / "bad.arcs"
    f.write_text("bridge-arc-system v1\nsystem bad\narc 1 1 2 U\nevents 1 :\narc 2 3 4 U\n"
                 "events 2 :\narc 3 4 6 U\nevents 3 :\nend\n")
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 1 and record(out)[1]["verdict"] == "invalid"
    assert "NonPerfectMatching" in out


@pytest.mark.parametrize("argv", [
    ["validate", "/no/such/file"],
    ["rc", "@nope", "@epsilon"],
    ["twist", "@epsilon", "pair9:1"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_exits_two(capsys, tmp_path):
    f = tmp_path / "x.arcs"
    f.write_text("bridge-arc-system v1\nsystem x\narc 1 1 2 U\nevents 1 : 3@x\n")
    code, _, err = run(capsys, "rc", str(f), "@epsilon")
    assert code == 2 and "line 4" in err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["rc"])
    assert exc.value.code == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "bridgerect.cli", "validate", "@delta85"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("validate verdict=valid")
