import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from oddcover.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = ROOT / "docs" / "golden"
SCHEMAS = {name: json.loads((ROOT / "docs" / "schema" / name).read_text()) for name in ("cover.schema.json", "report.schema.json")}
REGISTRY = Registry().with_resources([(s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values()])


def validate(data):
    schema = SCHEMAS["cover.schema.json" if data["format"] == "oddcover-cover" else "report.schema.json"]
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(data)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["normalize", "--input", DATA / "l-hexagon.txt", "--format", "structured"], "l-hexagon.normalize.json"),
        (["analyze", "--input", DATA / "unit-square.txt", "--format", "structured"], "unit-square.analyze.json"),
        (
            ["odd-area", "--input", DATA / "unit-triangle.txt", "--offsets", DATA / "K-three.txt", "--format", "structured"],
            "unit-triangle.odd-area.json",
        ),
        (
            ["verify", "--input", GOLDEN / "unit-triangle.cover.json", "--samples", 2000, "--seed", 7, "--window", 16,
             "--format", "structured"],
            "unit-triangle.verify.json",
        ),
        (["verify", "--input", DATA / "unit-square.txt", "--samples", 2000, "--window", 16], "unit-square.verify.txt"),
        (["render", "--input", DATA / "unit-triangle.txt", "--figure", "sss", "--window", 4], "unit-triangle.sss.svg"),
    ],
    ids=lambda v: v if isinstance(v, str) else None,
)
def test_output_matches_golden(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text()
    if golden.endswith(".json"):
        validate(json.loads(out))


def test_cover_output_file_matches_golden(capsys, tmp_path):
    path = tmp_path / "tri.json"
    code, out, _ = run(capsys, "cover", "--input", DATA / "unit-triangle.txt", "--output", path, "--format", "structured")
    assert code == EXIT_OK
    assert path.read_text() == (GOLDEN / "unit-triangle.cover.json").read_text()
    assert out == (GOLDEN / "unit-triangle.cover-summary.json").read_text()
    validate(json.loads(path.read_text()))


@pytest.mark.parametrize("name", ["unit-triangle", "unit-square", "symmetric-hexagon", "pentagon", "l-hexagon"])
def test_structured_reports_validate_and_repeat(capsys, name):
    argv = ["verify", "--input", DATA / f"{name}.txt", "--samples", 500, "--window", 8, "--format", "structured"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == EXIT_OK
    validate(json.loads(first[1]))
    code, out, _ = run(capsys, "cover", "--input", DATA / f"{name}.txt", "--format", "structured")
    report = json.loads(out)
    validate(report)
    validate(report["cover"])


def test_tampered_cover_exits_one_with_counterexample(capsys, tmp_path):
    data = json.loads((GOLDEN / "unit-triangle.cover.json").read_text())
    data["U"][1][0] = "1/100"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify", "--input", path, "--samples", 1000, "--format", "structured")
    assert code == EXIT_FAILED
    report = json.loads(out)
    assert not report["ok"]
    bad = [layer for layer in report["layers"] if not layer["ok"]]
    assert bad and any(layer["counterexample"] is not None for layer in bad)
    assert json.loads(err)["error"] == "verification-failed"


def test_even_offsets_rejected(capsys):
    code, out, err = run(capsys, "odd-area", "--input", DATA / "unit-triangle.txt", "--offsets", DATA / "K-even.txt")
    assert code == EXIT_USAGE and out == ""
    diag = json.loads(err)
    assert diag["command"] == "odd-area" and "odd cardinality" in diag["message"]


@pytest.mark.parametrize(
    "argv, kind",
    [
        (["frobnicate", "--input", "x"], "usage"),
        (["verify"], "usage"),
        (["verify", "--input", "x", "--samples", "0"], "usage"),
        (["verify", "--input", "x", "--seed", "-1"], "usage"),
        (["analyze", "--input", "/nonexistent/poly.txt"], "file-not-found"),
        (["analyze", "--input", "data/unit-square.txt", "--format", "svg"], "usage"),
        (["odd-area", "--input", "data/unit-square.txt"], "usage"),
    ],
)
def test_usage_errors(capsys, monkeypatch, argv, kind):
    monkeypatch.chdir(ROOT)
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE and out == ""
    assert json.loads(err)["error"] == kind


def test_bad_polygon_is_a_parse_error(capsys, tmp_path):
    p = tmp_path / "bowtie.txt"
    p.write_text("0 0\n1 1\n1 0\n0 1\n")
    code, _, err = run(capsys, "analyze", "--input", p)
    assert code == EXIT_USAGE
    assert "message" in json.loads(err)
    p.write_text("0 0\n1 0\n0.5 1\n")
    code, _, err = run(capsys, "analyze", "--input", p)
    assert code == EXIT_USAGE and json.loads(err)["error"] == "ParseError"


@pytest.mark.parametrize("figure", ["stripes", "sss", "markers", "cover"])
def test_render_is_deterministic_svg(capsys, figure):
    argv = ["render", "--input", DATA / "pentagon.txt", "--figure", figure, "--window", 6]
    first, second = run(capsys, *argv), run(capsys, *argv)
    assert first == second and first[0] == EXIT_OK
    assert first[1].startswith("<svg") or first[1].startswith("<?xml")
    assert first[1].rstrip().endswith("</svg>")


def test_output_flag_writes_report(capsys, tmp_path):
    path = tmp_path / "r.txt"
    code, out, _ = run(capsys, "normalize", "--input", DATA / "unit-triangle.txt", "--output", path)
    assert code == EXIT_OK and out == ""
    assert path.read_text().startswith("command: normalize")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "oddcover", "normalize", "--input", str(DATA / "unit-square.txt"), "--format", "structured"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["polygon"] == [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]
