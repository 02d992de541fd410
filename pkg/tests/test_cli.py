import json
import subprocess
import sys

import pytest

from synthrisk.cli import main
from synthrisk.ingest import load_table

from conftest import TOY5_ORIG, TOY5_SYN


def _csv(path, rows, header="k,t"):
    path.write_text(header + "\n" + "".join(",".join(r) + "\n" for r in rows))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return _csv(tmp_path / "o.csv", TOY5_ORIG), _csv(tmp_path / "s.csv", TOY5_SYN), tmp_path


def test_disclosure_text(files, capsys):
    o, s, _ = files
    assert main(["disclosure", "--orig", o, "--syn", s, "--keys", "k", "--targets", "t"]) == 0
    assert "UiO" in capsys.readouterr().out


def test_multi_json_and_figure(files):
    o, s, tmp = files
    out, fig = tmp / "r.json", tmp / "r.svg"
    code = main(["multi", "--orig", o, "--syn", s, "--syn", s, "--keys", "k", "--format", "json",
                 "--to-print", "ident,attrib,allCAPs", "--out", str(out), "--figure", str(fig)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["m"] == 2
    assert fig.read_bytes().startswith(b"<?xml")


def test_config_file_overridden_by_flags(files, capsys):
    o, s, tmp = files
    cfg = tmp / "c.json"
    cfg.write_text(json.dumps({"orig": o, "syn": [s], "keys": ["k"], "targets": ["t"], "format": "csv"}))
    assert main(["disclosure", "--config", str(cfg), "--format", "json"]) == 0
    json.loads(capsys.readouterr().out)


def test_exclusion_flags(files, capsys):
    o, s, _ = files
    assert main(["disclosure", "--orig", o, "--syn", s, "--keys", "k", "--targets", "t",
                 "--format", "json", "--exclude-pair", "k=A:x", "--not-target", "z",
                 "--use-keys-na", "false"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["settings"]["exclusions"]["excluded_pairs"] == [["k", "A", "x"]]


def test_sweep(files, capsys):
    o, s, _ = files
    assert main(["sweep", "--orig", o, "--syn", s, "--keys", "k", "--fractions", "0.4,1",
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("target,fraction,n_syn,DiSCO")
    assert len(lines) == 3


def test_synth_and_strip(files):
    o, s, tmp = files
    assert main(["synth", "--orig", o, "--m", "2", "--seed", "4", "--out", str(tmp / "b{i}.csv")]) == 0
    assert load_table(tmp / "b2.csv").n_rows == 5
    out = tmp / "stripped.csv"
    assert main(["strip-uniques", "--orig", o, "--syn", s, "--keys", "k", "--out", str(out)]) == 0
    assert load_table(out).n_rows == 4


@pytest.mark.parametrize("argv", [
    ["disclosure", "--keys", "k", "--targets", "t"],                       # no files
    ["disclosure", "--orig", "{o}", "--syn", "{s}", "--keys", "zz", "--targets", "t"],
    ["disclosure", "--orig", "{o}", "--syn", "{s}", "--keys", "k"],        # no target
    ["multi", "--orig", "{o}", "--syn", "{s}", "--keys", "k", "--thresh-1way", "x"],
    ["multi", "--orig", "{o}", "--syn", "{s}", "--keys", "k", "--exclude-pair", "bad"],
    ["synth", "--orig", "{o}", "--m", "2", "--out", "x.csv"],
])
def test_config_errors_exit_2(files, argv):
    o, s, _ = files
    assert main([a.format(o=o, s=s) for a in argv]) == 2


def test_data_errors_exit_1(files):
    o, s, tmp = files
    bad = tmp / "bad.csv"
    bad.write_text("k,t\nA\n")
    assert main(["disclosure", "--orig", str(bad), "--syn", s, "--keys", "k", "--targets", "t"]) == 1
    assert main(["disclosure", "--orig", str(tmp / "none.csv"), "--syn", s, "--keys", "k",
                 "--targets", "t"]) == 1
    other = _csv(tmp / "x.csv", [("A", "x")], header="k,u")
    assert main(["disclosure", "--orig", o, "--syn", s, "--syn", other, "--keys", "k",
                 "--targets", "t"]) == 1


def test_module_entry_point(files):
    o, s, _ = files
    res = subprocess.run([sys.executable, "-m", "synthrisk", "disclosure", "--orig", o, "--syn", s,
                          "--keys", "k", "--targets", "t"], capture_output=True, text=True)
    assert res.returncode == 0 and "repU" in res.stdout
