from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from henonbraids import cli, svg
from henonbraids.henon import IsotracalPath, IsotracalSample, ScatterGrid

from conftest import load_table2


def run(*argv) -> int:
    return cli.main([str(a) for a in argv])


@pytest.fixture(scope="module")
def chain_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("chains")
    assert run("chain", "--out", out) == 0
    return out


def test_chain_files(chain_dir):
    files = sorted(p.name for p in chain_dir.glob("chain_*.json"))
    assert len(files) == 5
    lines = [line for line in (chain_dir / "table.txt").read_text().splitlines() if "&" in line]
    assert len(lines) == 40


def test_chain_depth_zero(tmp_path):
    assert run("chain", "--head", "1001C", "--depth", 0, "--out", tmp_path) == 0
    data = json.loads((tmp_path / "chain_1001C.json").read_text())
    assert [lv["period"] for lv in data["levels"]] == [8]


def test_chain_bad_head(tmp_path, capsys):
    assert run("chain", "--head", "11C", "--out", tmp_path) == cli.EXIT_INPUT
    assert "11C" in capsys.readouterr().err


def test_chain_deterministic(tmp_path, chain_dir):
    assert run("chain", "--out", tmp_path) == 0
    for path in chain_dir.glob("*"):
        assert (tmp_path / path.name).read_bytes() == path.read_bytes()


def test_verify(chain_dir, capsys):
    assert run("verify", chain_dir) == 0
    out = capsys.readouterr().out
    assert "20 verified, 0 failed" in out
    assert "1001C level 0 period 8: Conjugate" in out


def test_verify_empty(capsys):
    assert run("verify") == 0
    assert "0 verified, 0 failed" in capsys.readouterr().out


def test_verify_mutated(chain_dir, tmp_path, capsys):
    data = json.loads((chain_dir / "chain_1001C.json").read_text())
    data["levels"][1]["plus"] = data["levels"][1]["minus"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert run("verify", bad) == cli.EXIT_VERIFY
    out = capsys.readouterr().out
    assert "FAIL bad.json" in out and "level 1 period 11" in out


def test_verify_missing_file(tmp_path):
    assert run("verify", tmp_path / "nope.json") == cli.EXIT_INPUT


def test_params_match_table2(tmp_path, chain_dir):
    assert run("params", "--chain", chain_dir / "chain_1001C.json", "--out", tmp_path) == 0
    rows = (tmp_path / "params.csv").read_text().splitlines()
    assert rows[0] == "head,period,itinerary,a"
    table = {r.itinerary: r.a for r in load_table2()}
    for line in rows[1:]:
        head, period, word, a = line.split(",")
        assert abs(float(a) - table[word]) < 1e-9


def test_isotracal_subset(tmp_path, chain_dir, capsys):
    code = run("isotracal", "--chain", chain_dir / "chain_1001C.json", "--period", "11", "--out", tmp_path)
    assert code == 0
    assert "p=11: met" in capsys.readouterr().out
    csv_lines = (tmp_path / "isotracal.csv").read_text().splitlines()
    assert csv_lines[0] == "b,a,x,y,res_fp,res_tr,branch,period"
    ET.fromstring((tmp_path / "isotracal.svg").read_text())


def test_isotracal_unmet_is_numeric_failure(tmp_path, capsys):
    code = run("isotracal", "--head", "1001C", "--depth", 0, "--out", tmp_path)
    assert code == cli.EXIT_NUMERIC
    assert "p=8: not met" in capsys.readouterr().out
    assert (tmp_path / "isotracal.csv").exists()


def test_scatter(tmp_path, capsys):
    args = ("scatter", "--period", "8", "--a-range", "1.8,1.9", "--b-range", "0,0.02",
            "--res", "50x10", "--out")
    assert run(*args, tmp_path / "one", "--jobs", 1) == 0
    assert run(*args, tmp_path / "two", "--jobs", 2) == 0
    for name in ("scatter_p8.csv", "scatter_p8.svg"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


@pytest.mark.parametrize("argv", [
    ("scatter", "--res", "1x5"),
    ("scatter", "--a-range", "2,1"),
    ("chain", "--depth", "-1"),
    ("isotracal", "--tol-meet", "-1"),
])
def test_bad_flags(argv, tmp_path):
    assert run(*argv, "--out", tmp_path) == cli.EXIT_INPUT


def test_unknown_command():
    assert run("frobnicate") == cli.EXIT_INPUT


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"heads": ["1001C"], "depth": 1}))
    assert run("chain", "--config", cfg, "--out", tmp_path) == 0
    data = json.loads((tmp_path / "chain_1001C.json").read_text())
    assert len(data["levels"]) == 2
    # flags on the command line override the file
    assert run("chain", "--config", cfg, "--depth", 0, "--out", tmp_path) == 0
    data = json.loads((tmp_path / "chain_1001C.json").read_text())
    assert len(data["levels"]) == 1
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert run("chain", "--config", cfg, "--out", tmp_path) == cli.EXIT_INPUT


def test_svg_render():
    grid = ScatterGrid((0.0, 1.0), (0.0, 1.0), (3, 2), 8, 9,
                       np.array([[8, 0, 9], [0, 8, 0]]))
    path = IsotracalPath(8, "minus", [IsotracalSample(0.0, 0.2, 0, 0, 0, 0),
                                      IsotracalSample(0.5, 0.4, 0, 0, 0, 0)])
    text = svg.render([grid], [path], title="t")
    root = ET.fromstring(text)
    ns = "{http://www.w3.org/2000/svg}"
    groups = root.findall(f"{ns}g")
    assert [g.get("data-period") for g in groups] == ["8", "9"]
    assert len(groups[0].findall(f"{ns}rect")) == 2
    assert groups[0].get("fill") != groups[1].get("fill")
    assert root.find(f"{ns}polyline").get("data-branch") == "minus"
    assert svg.render([grid], [path], title="t") == text


def test_svg_paths_only():
    path = IsotracalPath(8, "plus", [IsotracalSample(0.0, 1.85, 0, 0, 0, 0),
                                     IsotracalSample(0.01, 1.84, 0, 0, 0, 0)])
    ET.fromstring(svg.render(paths=[path]))
