import json
import xml.etree.ElementTree as ET

import pytest

from scoredomain import __version__
from scoredomain.cli import main

TRAIN = "id,score,label\na,0.1,live\nb,0.2,live\nc,0.25,live\nd,0.7,fake\ne,0.8,fake\nf,0.9,fake\n"
DEV = "id,score,label\na,0.15,live\nb,0.45,live\nc,0.5,fake\nd,0.6,fake\n"


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "train.csv").write_text(TRAIN)
    (tmp_path / "dev.csv").write_text(DEV)
    (tmp_path / "live.csv").write_text("a,0.3,live\nb,0.5,live\n")
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json(files, capsys):
    code, out, _ = run(capsys, "analyze", "--in", "train.csv", "--format", "json", "--center", "mean")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "analyze" and doc["config"]["center"] == "mean"
    rows = {r["class"]: r for r in doc["rows"]}
    assert set(rows) == {"live", "fake"}
    assert rows["fake"]["center"] == pytest.approx(0.8)
    assert rows["fake"]["variant"] == "train"


def test_analyze_single_class_file(files, capsys):
    code, out, _ = run(capsys, "analyze", "--in", "live.csv", "--format", "csv")
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert len(body) == 2 and body[1].startswith("live,")


def test_text_report_has_header(files, capsys):
    code, out, _ = run(capsys, "thresholds", "--in", "train.csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == f"# scoredomain {__version__} thresholds"
    assert lines[1].startswith("# config: {")
    assert len(lines) == 3 + 6


def test_thresholds_dev_and_group(files, capsys):
    code, out, _ = run(capsys, "thresholds", "--in", "train.csv", "--dev", "dev.csv", "--strategy", "acer", "--format", "json")
    doc = json.loads(out)
    assert [r["strategy"] for r in doc["rows"]] == ["acer-left", "acer-mid", "acer-right"]
    assert "dev_acer" in doc["columns"]


def test_roc_csv(files, capsys):
    code, out, _ = run(capsys, "roc", "--in", "train.csv", "--format", "csv")
    assert code == 0
    assert "# auc: 1.0" in out.splitlines()
    assert "threshold,fpr,tpr" in out.splitlines()


def test_compare_flags(files, capsys):
    (files / "wide.csv").write_text("a,0.0,live\nb,0.2,live\nc,0.3,live\nd,0.9,live\n")
    code, out, _ = run(capsys, "compare", "--before", "live.csv", "--after", "wide.csv", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["variant"] for r in rows] == ["before", "after", "delta"]
    assert "domain expanded" in rows[-1]["flags"]


def test_viz_and_comparison(files, capsys):
    assert run(capsys, "viz", "--in", "train.csv", "--out", "one.svg")[0] == 0
    assert run(capsys, "viz", "--in", "train.csv", "--after", "dev.csv", "--out", "two.svg")[0] == 0
    ET.parse(files / "one.svg")
    root = ET.parse(files / "two.svg").getroot()
    assert len(root.findall("{http://www.w3.org/2000/svg}g[@class='panel']")) == 2


def test_synth_round_trips_into_analyze(files, capsys):
    assert run(capsys, "synth", "--n", "50", "--clamp", "0,1", "--out", "s.csv")[0] == 0
    code, out, _ = run(capsys, "analyze", "--in", "s.csv", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["n"] == 50


def test_data_error_is_exit_one_with_json_line(files, capsys):
    (files / "bad.csv").write_text("id,score,label\na,0.1,live\nb,oops,fake\n")
    code, out, err = run(capsys, "analyze", "--in", "bad.csv")
    assert code == 1 and out == ""
    payload = json.loads(err.strip())
    assert payload == {"error": "data", "file": "bad.csv", "line": 3, "message": payload["message"]}


def test_missing_class_for_thresholds(files, capsys):
    code, _, err = run(capsys, "thresholds", "--in", "live.csv")
    assert code == 1 and json.loads(err)["error"] == "data"


def test_missing_file(files, capsys):
    code, _, err = run(capsys, "roc", "--in", "nope.csv")
    assert code == 1 and json.loads(err)["file"] == "nope.csv"


def test_usage_errors_exit_two(files, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert json.loads(err) == {"error": "usage", "file": None, "line": None, "message": "scoredomain analyze: the following arguments are required: --in"}
    code, _, err = run(capsys, "viz", "--in", "train.csv", "--viewport", "1,1")
    assert code == 2 and json.loads(err)["error"] == "usage"
    code, _, _ = run(capsys, "synth", "--n", "0")
    assert code == 2


def test_same_labels_rejected(files, capsys):
    code, _, err = run(capsys, "analyze", "--in", "train.csv", "--fake-label", "live")
    assert code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == f"scoredomain {__version__}"


@pytest.mark.parametrize("command", ["analyze", "thresholds", "roc", "viz", "synth", "compare"])
def test_help_has_example(command, capsys):
    with pytest.raises(SystemExit):
        main([command, "--help"])
    out = capsys.readouterr().out
    assert f"scoredomain {command} " in out.split("example:")[1]
