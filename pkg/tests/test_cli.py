import json
import re

import pytest

from corpus import shipped_text
from legconc.cli import main
from legconc.render import count_text_nodes


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("unknot.front", "m946.front", "trefoil.grid"):
        p = tmp_path / name
        p.write_text(shipped_text(name))
        out[name.split(".")[0]] = str(p)
    return out


def test_invariants(capsys, files):
    assert run(capsys, "invariants", files["unknot"])[:2] == (0, "tb=-1 rot=0 chords: 1:1\n")
    assert run(capsys, "invariants", files["m946"])[:2] == (0, "tb=-1 rot=0 chords: -1:2 0:6 1:5\n")
    assert run(capsys, "invariants", files["trefoil"])[1] == "tb=1 rot=0 chords: 0:4 1:3\n"


def test_invariants_json(capsys, files):
    code, out, _ = run(capsys, "invariants", files["m946"], "--format", "json")
    assert code == 0
    assert json.loads(out) == {"tb": -1, "rotation": 0, "chords": {"-1": 2, "0": 6, "1": 5}}


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.front"
    bad.write_text("L 1\nQ 3\nR 1\n")
    code, _, err = run(capsys, "invariants", str(bad))
    assert code == 2
    assert re.search(r"line 2", err)
    assert run(capsys, "invariants", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "invariants", "@nope")[0] == 2


def test_obstruct_exit_codes(capsys, files):
    code, out, _ = run(capsys, "obstruct", files["m946"], files["unknot"], "--assert-fillable", "e0,e1")
    assert code == 3
    assert "OBSTRUCTED" in out and "RULE-BILCH-DIM" in out
    code, out, _ = run(capsys, "obstruct", files["unknot"], files["m946"])
    assert code == 0
    assert "NOT_OBSTRUCTED" in out
    code, _, err = run(capsys, "obstruct", files["m946"], files["unknot"])
    assert code == 4
    assert "--assert-fillable" in err


def test_obstruct_json_and_flag_position(capsys):
    code, out, _ = run(capsys, "--assert-fillable", "e0,e1", "--format", "json", "obstruct", "@m946", "@unknot")
    assert code == 3
    payload = json.loads(out)
    assert payload["verdict"] == "OBSTRUCTED"
    assert "created" not in out


def test_dga_and_augment(capsys):
    code, out, _ = run(capsys, "dga", "@unknot")
    assert (code, out) == (0, "gen q1 1\nd q1 = 0\n")
    code, out, _ = run(capsys, "augment", "@m946")
    assert out.startswith("8 augmentation(s)\n")
    assert "e0: b2=1 b4=1 b5=1" in out and "e1: b1=1 b3=1 b6=1" in out


def test_bilch(capsys):
    code, out, _ = run(capsys, "--format", "json", "bilch", "@m946")
    data = json.loads(out)
    assert data["pairs"]["e0,e1"] == "-1:1 0:1 1:1"
    assert len(data["multiset"]) == 64


def test_spin_and_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "spin", "@unknot", "-m", "2")
    assert code == 0 and "chords: 1:1 3:1" in out
    code, out, _ = run(capsys, "certify", "@m946", "@unknot", "-m", "1,1", "--assert-fillable", "e0,e1")
    assert code == 0
    assert "S^1 x S^1 x S^1 in R^7" in out
    code, _, err = run(capsys, "certify", "@unknot", "@unknot", "-m", "1")
    assert code == 4 and "precondition" in err


def test_render(capsys, tmp_path):
    out = tmp_path / "m946.svg"
    assert run(capsys, "render", "@m946", "-o", str(out))[0] == 0
    svg = out.read_text()
    labels = set(re.findall(r"<text [^>]*>([^<]*)</text>", svg))
    assert len(labels) == 13
    assert "a1 (1)" in labels and "c2 (-1)" in labels
    bare = tmp_path / "bare.svg"
    run(capsys, "render", "@m946", "--no-labels", "-o", str(bare))
    assert count_text_nodes(bare.read_text()) == 0
    strip = lambda s: re.sub(r'<g id="labels">.*?</g>\n', "", s, flags=re.S)
    assert strip(svg) == bare.read_text()
    # deterministic
    run(capsys, "render", "@m946", "-o", str(tmp_path / "again.svg"))
    assert (tmp_path / "again.svg").read_text() == svg


def test_render_unknot(capsys):
    _, svg, _ = run(capsys, "render", "@unknot")
    assert set(re.findall(r"<text [^>]*>([^<]*)</text>", svg)) == {"q1 (1)"}
    front = svg.split('<g id="front">')[1].split("</g>")[0]
    assert front.count("<path") == 2  # one left and one right cusp


def test_atlas_roundtrip(capsys, tmp_path):
    root = str(tmp_path / "atlas")
    assert run(capsys, "--atlas", root, "atlas", "add", "@m946", "--assert-fillable", "e0,e1")[0] == 0
    assert run(capsys, "--atlas", root, "atlas", "add", "@unknot")[0] == 0
    code, out, _ = run(capsys, "--atlas", root, "atlas", "list")
    assert [line.split("\t")[0] for line in out.splitlines()] == ["m946", "unknot"]
    code, out, _ = run(capsys, "--atlas", root, "atlas", "verify")
    assert code == 0 and out == "m946: ok\nunknot: ok\n"
    # stored records are usable by id; fillability comes from the atlas
    code, out, _ = run(capsys, "--atlas", root, "obstruct", "m946", "unknot")
    assert code == 3
    code, out, _ = run(capsys, "--atlas", root, "certify", "m946", "unknot", "-m", "2", "--save")
    assert code == 0
    assert (tmp_path / "atlas" / "m946" / "certificates" / "nonsym-2.json").exists()


def test_atlas_detects_drift(capsys, tmp_path):
    root = tmp_path / "atlas"
    run(capsys, "--atlas", str(root), "atlas", "add", "@trefoil")
    dga = root / "trefoil" / "dga.txt"
    dga.write_text(dga.read_text().replace("d q4 = 1 + ", "d q4 = "))
    code, out, _ = run(capsys, "--atlas", str(root), "atlas", "verify", "trefoil")
    assert code == 1
    assert "DRIFT" in out and "dga" in out


def test_atlas_needs_root(capsys):
    assert run(capsys, "atlas", "list")[0] == 2
